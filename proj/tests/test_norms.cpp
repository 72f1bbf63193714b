#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "modns/norms.hpp"

using namespace modns;

namespace {

Field mode(GridPtr g, Index n, cplx c = cplx{1, 0}) {
    Field f(g, Rep::spectral);
    f[g->flat(n)] = c;
    return f;
}

NormSpec espec(double s, double p, double q, WindowKind v = WindowKind::sharp_cube) {
    NormSpec ns;
    ns.family = NormFamily::E;
    ns.s = s;
    ns.p = p;
    ns.q = q;
    ns.variant = v;
    return ns;
}

} // namespace

TEST_CASE("exponential-weight norm of a single mode is exactly 2^{s|k|_1}") {
    auto g = make_grid(2, 4, 4);
    Field f = mode(g, Index{8, 4, 0}); // frequency (2,1), sharp cube (2,1)
    CHECK(e_norm(f, espec(-1, 2, 1)) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(e_norm(f, espec(-1, 4, 1)) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(e_norm(f, espec(0.5, 2, 1)) == doctest::Approx(std::exp2(1.5)).epsilon(1e-12));

    // two modes in distinct cubes: q = 1 adds the weighted block norms
    Field two = f;
    two += mode(g, Index{4, 0, 0}); // frequency (1,0), cube (1,0)
    CHECK(e_norm(two, espec(-1, 2, 1)) == doctest::Approx(0.125 + 0.5).epsilon(1e-12));
    double q2 = std::sqrt(0.125 * 0.125 + 0.5 * 0.5);
    CHECK(e_norm(two, espec(-1, 2, 2)) == doctest::Approx(q2).epsilon(1e-12));
    CHECK(e_norm(two, espec(-1, 2, std::numeric_limits<double>::infinity())) ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("polynomial-weight norm uses <k> = (1+|k|_2^2)^{1/2}") {
    auto g = make_grid(2, 4, 4);
    Field f = mode(g, Index{8, 4, 0}); // cube (2,1)
    NormSpec ns = espec(-1, 2, 1);
    ns.family = NormFamily::M;
    CHECK(m_norm(f, ns) == doctest::Approx(std::pow(6.0, -0.5)).epsilon(1e-12));
}

TEST_CASE("hybrid norm: dyadic low part plus weighted cubes") {
    auto g = make_grid(2, 4, 4);
    NormSpec ns = espec(-1, 2, 1);
    ns.family = NormFamily::Mdot;

    // low mode at |xi| = 1/4 = 2^{-2}: only the j = -2 annulus sees it and the
    // cube part skips cube 0, so the norm is exactly 2^{-2s} = 4
    Field low = mode(g, Index{1, 0, 0});
    CHECK(mdot_norm(low, ns) == doctest::Approx(4.0).epsilon(1e-10));

    // mode at |xi| = 4 = 2^2: annulus j = 2 (inside the low part, weight 2^{2s})
    // plus cube (4,0) with weight <k>^s = 17^{-1/2}
    Field high = mode(g, Index{16, 0, 0});
    double expect = std::exp2(-2.0) + std::pow(17.0, -0.5);
    CHECK(mdot_norm(high, ns) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("Besov norm of a dyadic-shell mode is exactly 2^{sj}") {
    auto g = make_grid(2, 4, 4);
    Field f = mode(g, Index{8, 0, 0}); // |xi| = 2, annulus j = 1
    CHECK(besov_norm(f, 0.5, 2, 1, true) == doctest::Approx(std::exp2(0.5)).epsilon(1e-12));
    CHECK(besov_norm(f, 0.5, 2, 1, false) == doctest::Approx(std::exp2(0.5)).epsilon(1e-12));
    // a deep low-frequency mode lands in the inhomogeneous low-pass block only
    Field low = mode(g, Index{1, 0, 0});
    CHECK(besov_norm(low, 0.5, 2, 1, false) == doctest::Approx(1.0).epsilon(1e-10));
    // and in the homogeneous annulus j = -2 with weight 2^{-2s}
    CHECK(besov_norm(low, 0.5, 2, 1, true) ==
          doctest::Approx(std::exp2(-1.0)).epsilon(1e-10));
}

TEST_CASE("q-monotonicity is exact") {
    auto g = make_grid(2, 4, 4);
    std::mt19937_64 rng(31);
    const double inf = std::numeric_limits<double>::infinity();
    for (int t = 0; t < 10; ++t) {
        Field f = random_field(g, rng);
        double n1 = e_norm(f, espec(-1, 2, 1));
        double n2 = e_norm(f, espec(-1, 2, 2));
        double n4 = e_norm(f, espec(-1, 2, 4));
        double ni = e_norm(f, espec(-1, 2, inf));
        CHECK(n1 >= n2 * (1 - 1e-12));
        CHECK(n2 >= n4 * (1 - 1e-12));
        CHECK(n4 >= ni * (1 - 1e-12));
    }
}

TEST_CASE("norms are absolutely homogeneous") {
    auto g = make_grid(2, 4, 4);
    std::mt19937_64 rng(37);
    Field f = random_field(g, rng);
    Field f3 = cplx{3, 0} * f;
    for (NormFamily fam : {NormFamily::E, NormFamily::M, NormFamily::Mdot,
                           NormFamily::Besov, NormFamily::BesovHom}) {
        NormSpec ns = espec(-1, 2, 1);
        ns.family = fam;
        CHECK(norm(f3, ns) == doctest::Approx(3.0 * norm(f, ns)).epsilon(1e-10));
    }
}

TEST_CASE("time-space norm: constant-in-time single mode") {
    auto g = make_grid(2, 4, 4);
    Trajectory traj(1.0, 8, g, Rep::spectral);
    for (std::size_t i = 0; i < traj.size(); ++i)
        traj[i][0] = mode(g, Index{8, 4, 0}); // cube (2,1), |k|_1 = 3

    TimeNormSpec ts;
    ts.gamma = 2.0;
    ts.space = espec(-1, 2, 1);
    // L^2 in time of the constant 2^{-3} over [0,1] is 2^{-3}
    CHECK(timespace_norm(traj, ts) == doctest::Approx(0.125).epsilon(1e-12));

    ts.gamma = std::numeric_limits<double>::infinity();
    CHECK(timespace_norm(traj, ts) == doctest::Approx(0.125).epsilon(1e-12));

    // sup-in-time with the sqrt-growth weight saturates at the cap 2^{|s||k|}
    ts.weight_mode = WeightMode::sqrt_growth;
    ts.growth_c = 2.0;
    CHECK(timespace_norm(traj, ts) == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("time-space norm aggregates vector components in l^2") {
    auto g = make_grid(2, 4, 4);
    Trajectory traj(1.0, 4, g, Rep::spectral);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        traj[i][0] = mode(g, Index{4, 0, 0}, cplx{3, 0});
        traj[i][1] = mode(g, Index{4, 0, 0}, cplx{4, 0});
    }
    TimeNormSpec ts;
    ts.gamma = 2.0;
    ts.space = espec(0, 2, 1);
    CHECK(timespace_norm(traj, ts) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("pruning keeps the dominant cubes") {
    auto g = make_grid(2, 4, 4);
    std::mt19937_64 rng(41);
    Trajectory traj(1.0, 4, g, Rep::spectral);
    for (std::size_t i = 0; i < traj.size(); ++i)
        for (int c = 0; c < 2; ++c) traj[i][c] = random_field(g, rng);
    TimeNormSpec ts;
    ts.gamma = 2.0;
    ts.space = espec(-1, 2, 1);
    double exact = timespace_norm(traj, ts, 0.0);
    double pruned = timespace_norm(traj, ts, 1e-10);
    CHECK(pruned == doctest::Approx(exact).epsilon(1e-6));
}

TEST_CASE("spectral derivative and Gevrey ratio on a single mode") {
    auto g = make_grid(2, 4, 4);
    Field f = mode(g, Index{8, 0, 0}); // xi = (2, 0)
    Field dx = derivative(f, Index{1, 0, 0});
    CHECK(std::abs(dx[g->flat(Index{8, 0, 0})] - cplx{0, 2}) <= 1e-12);

    // || d^(n,0) f ||_p = 2^n, so the ratio is (2 rho)^n / n!
    for (int n : {1, 2, 3}) {
        double expect = std::pow(2.0 * 0.5, n) / std::tgamma(double(n) + 1.0);
        CHECK(gevrey_ratio(f, Index{n, 0, 0}, 0.5, 2.0) ==
              doctest::Approx(expect).epsilon(1e-10));
    }
    CHECK_THROWS_AS(gevrey_ratio(f, Index{1, 0, 0}, -1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(derivative(f, Index{-1, 0, 0}), std::invalid_argument);
}

TEST_CASE("norm spec validation") {
    auto g = make_grid(2, 4, 4);
    Field f = mode(g, Index{1, 0, 0});
    NormSpec bad = espec(0, 0.5, 1);
    CHECK_THROWS_AS(e_norm(f, bad), std::invalid_argument);
    NormSpec badq = espec(0, 2, 0.5);
    CHECK_THROWS_AS(e_norm(f, badq), std::invalid_argument);
    NormSpec mdot_inf = espec(0, std::numeric_limits<double>::infinity(), 1);
    mdot_inf.family = NormFamily::Mdot;
    CHECK_THROWS_AS(mdot_norm(f, mdot_inf), std::invalid_argument);
    TimeNormSpec ts;
    ts.gamma = 0.5;
    ts.space = espec(0, 2, 1);
    Trajectory traj(1.0, 2, g, Rep::spectral);
    CHECK_THROWS_AS(timespace_norm(traj, ts), std::invalid_argument);
}
