#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "modns/decomp.hpp"

using namespace modns;

namespace {

Field mode(GridPtr g, Index n, cplx c = cplx{1, 0}) {
    Field f(g, Rep::spectral);
    f[g->flat(n)] = c;
    return f;
}

double max_abs_diff(const Field& a, const Field& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs(const Field& a) {
    double m = 0;
    for (const auto& v : a.values()) m = std::max(m, std::abs(v));
    return m;
}

} // namespace

TEST_CASE("partition of unity within 1e-12 for every window family") {
    auto g = make_grid(2, 4, 2);
    CHECK(partition_defect(make_window(WindowKind::smooth_sigma, g)) <= 1e-12);
    CHECK(partition_defect(make_window(WindowKind::sharp_cube, g)) <= 1e-12);
    CHECK(partition_defect(make_window(WindowKind::dilated, g, 0.5)) <= 1e-12);
    CHECK(partition_defect(make_window(WindowKind::dilated, g, 2.0)) <= 1e-12);
    CHECK(partition_defect(make_window(WindowKind::dyadic_phi, g)) <= 1e-12);
}

TEST_CASE("block reconstruction within 1e-10 on random fields") {
    auto g = make_grid(2, 4, 2);
    std::mt19937_64 rng(17);
    for (WindowKind kind : {WindowKind::smooth_sigma, WindowKind::sharp_cube}) {
        Window w = make_window(kind, g);
        auto cubes = cube_indices(w);
        for (int t = 0; t < 20; ++t) {
            Field f = random_field(g, rng);
            Field sum(g, Rep::spectral);
            for (const Index& k : cubes) sum += block(f, w, k);
            CHECK(max_abs_diff(sum, f) <= 1e-10 * max_abs(f));
        }
    }
}

TEST_CASE("almost orthogonality: non-adjacent blocks do not interact") {
    auto g = make_grid(2, 4, 2);
    CHECK(almost_orthogonality_defect(make_window(WindowKind::smooth_sigma, g), 5) <= 1e-10);
    CHECK(almost_orthogonality_defect(make_window(WindowKind::sharp_cube, g), 5) <= 1e-10);
    CHECK(almost_orthogonality_defect(make_window(WindowKind::dilated, g, 2.0), 5) <= 1e-10);
}

TEST_CASE("sharp cube membership n in [k*m, (k+1)*m)") {
    auto g = make_grid(2, 4, 2);
    Window w = make_window(WindowKind::sharp_cube, g);
    Field f = mode(g, Index{4, 4, 0}); // frequency (1,1), cube (1,1)
    CHECK(max_abs(block(f, w, Index{1, 1, 0})) == doctest::Approx(1.0));
    CHECK(max_abs(block(f, w, Index{0, 0, 0})) == 0.0);
    // a negative frequency just below zero lies in cube -1
    Field neg = mode(g, Index{-1, 0, 0});
    CHECK(max_abs(block(neg, w, Index{-1, 0, 0})) == doctest::Approx(1.0));
    CHECK(max_abs(block(neg, w, Index{0, 0, 0})) == 0.0);
}

TEST_CASE("out-of-band cube indices are flagged and yield zero") {
    auto g = make_grid(2, 4, 2);
    Window w = make_window(WindowKind::sharp_cube, g);
    std::mt19937_64 rng(1);
    Field f = random_field(g, rng);
    bool oob = false;
    Field b = block(f, w, Index{w.cube_range() + 1, 0, 0}, &oob);
    CHECK(oob);
    CHECK(max_abs(b) == 0.0);
    block(f, w, Index{0, 0, 0}, &oob);
    CHECK(!oob);
}

TEST_CASE("dyadic annuli: mode at |xi| = 2^j lies in annulus j alone") {
    auto g = make_grid(2, 4, 2);
    Window w = make_window(WindowKind::dyadic_phi, g);
    Field f = mode(g, Index{8, 0, 0}); // |xi| = 2 = 2^1
    for (int j = w.jmin(); j <= w.jmax(); ++j) {
        double got = max_abs(dyadic_block(f, w, j));
        if (j == 1) CHECK(got == doctest::Approx(1.0));
        else CHECK(got <= 1e-14);
    }
    // dyadic reconstruction away from the zero mode
    std::mt19937_64 rng(23);
    Field r = random_field(g, rng);
    r[g->flat(Index{0, 0, 0})] = cplx{0, 0};
    Field sum(g, Rep::spectral);
    for (int j = w.jmin(); j <= w.jmax(); ++j) sum += dyadic_block(r, w, j);
    CHECK(max_abs_diff(sum, r) <= 1e-10 * max_abs(r));
}

TEST_CASE("dilated window support scales with alpha") {
    auto g = make_grid(2, 4, 2);
    Window w2 = make_window(WindowKind::dilated, g, 2.0);
    Window w1 = make_window(WindowKind::smooth_sigma, g);
    CHECK(w2.cube_range() < w1.cube_range());
    CHECK_THROWS_AS(make_window(WindowKind::dilated, g, -1.0), std::invalid_argument);
    // transition band must stay resolvable
    CHECK_THROWS_AS(make_window(WindowKind::dilated, g, 0.05), std::invalid_argument);
}

TEST_CASE("random field determinism") {
    auto g = make_grid(2, 4, 2);
    std::mt19937_64 a(42), b(42);
    Field fa = random_field(g, a), fb = random_field(g, b);
    CHECK(max_abs_diff(fa, fb) == 0.0);
}

TEST_CASE("profile export emits header and rows") {
    auto g = make_grid(2, 4, 2);
    Window w = make_window(WindowKind::smooth_sigma, g);
    std::ostringstream os;
    export_profile(w, Index{1, 0, 0}, os);
    std::string text = os.str();
    CHECK(text.rfind("n0,n1,symbol\n", 0) == 0);
    CHECK(text.size() > 20);
}
