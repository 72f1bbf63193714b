#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "modns/decomp.hpp"
#include "modns/norms.hpp"
#include "modns/stft.hpp"

using namespace modns;

namespace {

/// Spatial field sampling the (wrapped) Gaussian analysis window itself.
Field window_field(GridPtr g) {
    Field f(g, Rep::spatial);
    const double h = g->spacing();
    const int n = g->modes_per_axis();
    for (std::size_t t = 0; t < g->points(); ++t) {
        Index a = g->decode(t, n);
        std::array<double, 3> pos{0, 0, 0};
        for (int i = 0; i < g->d(); ++i) pos[i] = h * a[i];
        f[t] = cplx{detail::gauss_window(*g, pos), 0};
    }
    return f;
}

/// Random field band-limited to |n|_inf <= cut.
Field band_limited(GridPtr g, std::mt19937_64& rng, int cut) {
    std::normal_distribution<double> nd;
    Field f(g, Rep::spectral);
    for (std::size_t i = 0; i < g->points(); ++i)
        if (linf(g->lattice(i), g->d()) <= cut) f[i] = cplx{nd(rng), nd(rng)};
    return f;
}

Field mode(GridPtr g, Index n, cplx c = cplx{1, 0}) {
    Field f(g, Rep::spectral);
    f[g->flat(n)] = c;
    return f;
}

} // namespace

TEST_CASE("self-analysis of the Gaussian window matches the closed form") {
    // |V_g g(x, xi)| = pi^{-d/2} exp(-(|x|^2 + |xi|^2)/4); the band K = 10 keeps
    // aliasing of the windowed products below the 1e-8 target.
    auto g = make_grid(2, 4, 10);
    Field f = window_field(g);
    const double a = 5.0 * g->spacing(), b = 1.0;
    StftCoefficients c = stft(f, a, b);
    const double P = g->period();
    double worst = 0;
    for (int jx0 = 0; jx0 < c.nx; ++jx0)
        for (int jx1 = 0; jx1 < c.nx; ++jx1)
            for (int l0 = -c.lmax; l0 <= c.lmax; ++l0)
                for (int l1 = -c.lmax; l1 <= c.lmax; ++l1) {
                    double x0 = std::remainder(c.x_pos(jx0), P);
                    double x1 = std::remainder(c.x_pos(jx1), P);
                    double xi0 = c.xi_pos(l0), xi1 = c.xi_pos(l1);
                    double expect = std::pow(std::numbers::pi, -1.0) *
                                    std::exp(-(x0 * x0 + x1 * x1 + xi0 * xi0 +
                                               xi1 * xi1) / 4.0);
                    double got = std::abs(c.at(Index{jx0, jx1, 0}, Index{l0, l1, 0}));
                    worst = std::max(worst, std::abs(got - expect));
                }
    CHECK(worst <= 1e-8);
}

TEST_CASE("energy identity: squared (2,2)-norm is proportional to the L^2 mass") {
    auto g = make_grid(2, 4, 8);
    std::mt19937_64 rng(3);
    const double a = g->spacing(), b = 1.0;
    const double vol = std::pow(g->period(), 2);
    // expected constant (2 pi)^d ||g||_2^2 with the unit-normalized window
    const double expect = std::pow(2.0 * std::numbers::pi, 2) *
                          std::pow(std::numbers::pi, -1.0);
    for (int t = 0; t < 2; ++t) {
        Field f = band_limited(g, rng, g->m()); // spectrum within |xi| <= 1
        StftCoefficients c = stft(f, a, b);
        double lhs = std::pow(stft_mod_norm(c, 0, 2, 2, StftWeight::polynomial), 2);
        double rhs = expect * vol * std::pow(lp_norm(f, 2.0), 2);
        CHECK(lhs == doctest::Approx(rhs).epsilon(2e-2));
    }
}

TEST_CASE("spatial and Fourier-side evaluations agree") {
    auto g = make_grid(2, 4, 8);
    std::mt19937_64 rng(7);
    const double a = 8.0 * g->spacing(), b = 1.0;
    // deeply band-limited data: agreement to near roundoff
    Field smooth = band_limited(g, rng, 2 * g->m());
    CHECK(fourier_symmetry_defect(smooth, a, b) <= 1e-8);
    // rougher data still agrees well below the coarse tolerance
    Field rough = band_limited(g, rng, 6 * g->m());
    CHECK(fourier_symmetry_defect(rough, a, b) <= 1e-6);
}

TEST_CASE("exponential-weight coefficient norm tracks 2^{s|xi_0|} per mode") {
    auto g = make_grid(2, 4, 8);
    const double a = 4.0 * g->spacing(), b = 1.0, s = -1.0;
    Field f1 = mode(g, Index{4, 0, 0});  // xi = (1,0)
    Field f2 = mode(g, Index{8, 0, 0});  // xi = (2,0)
    double n1 = stft_mod_norm(stft(f1, a, b), s, 2, 1, StftWeight::exponential);
    double n2 = stft_mod_norm(stft(f2, a, b), s, 2, 1, StftWeight::exponential);
    CHECK(n2 / n1 == doctest::Approx(std::exp2(s)).epsilon(0.05));
}

TEST_CASE("lattice admissibility errors") {
    auto g = make_grid(2, 4, 2);
    std::mt19937_64 rng(9);
    Field f = band_limited(g, rng, 4);
    CHECK_THROWS_AS(stft(f, 1.1 * g->spacing(), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(stft(f, g->spacing(), 0.3), std::invalid_argument);
    CHECK_THROWS_AS(stft(f, 8.0, 1.0), std::invalid_argument); // a*b > 2*pi
    CHECK_THROWS_AS(stft(f, -1.0, 1.0), std::invalid_argument);
    StftCoefficients c = stft(f, g->spacing(), 1.0);
    CHECK_THROWS_AS(stft_mod_norm(c, 0, 0.5, 1, StftWeight::polynomial),
                    std::invalid_argument);
}

TEST_CASE("integer-lattice analysis coefficients: determinism and homogeneity") {
    auto g = make_grid(2, 4, 2);
    std::mt19937_64 rng(11);
    Field f = band_limited(g, rng, 4);
    double n1 = gabor_coeff_norm(f, 1.0, 2, 1);
    double n2 = gabor_coeff_norm(f, 1.0, 2, 1);
    CHECK(n1 == n2);
    CHECK(n1 > 0);
    Field f2 = cplx{2, 0} * f;
    CHECK(gabor_coeff_norm(f2, 1.0, 2, 1) == doctest::Approx(2.0 * n1).epsilon(1e-10));
    CHECK_THROWS_AS(gabor_coeff_norm(f, 0.0, 0.5, 1), std::invalid_argument);
}
