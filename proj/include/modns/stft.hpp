#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "grid.hpp"

namespace modns {

namespace detail {

/// Normalized Gaussian window pi^{-d/2} exp(-|x|^2/2), wrapped to the torus.
/// The period is always >= 8 pi, so only the nearest image contributes above
/// double roundoff.
inline double gauss_window(const SpectralGrid& g, const std::array<double, 3>& x) {
    const double P = g.period();
    double e = 0;
    for (int i = 0; i < g.d(); ++i) {
        double t = std::remainder(x[i], P);
        e += t * t;
    }
    return std::pow(std::numbers::pi, -0.5 * g.d()) * std::exp(-0.5 * e);
}

/// Continuous Fourier transform of the window: 2^{d/2} exp(-|w|^2/2).
inline double gauss_window_hat(int d, double w2) {
    return std::exp2(0.5 * d) * std::exp(-0.5 * w2);
}

} // namespace detail

/// Windowed Fourier samples V_g f(x, xi) on the product lattice
/// x = j*a (j = 0..nx-1 per axis), xi = l*b (|l| <= lmax per axis), with the
/// fixed Gaussian window.  Row-major: x multi-index outer, xi inner.
struct StftCoefficients {
    GridPtr grid;
    double a = 0, b = 0;
    int nx = 0;   // x samples per axis
    int lmax = 0; // xi indices -lmax..lmax per axis
    std::vector<cplx> values;

    int nxi() const { return 2 * lmax + 1; }
    std::size_t x_points() const {
        std::size_t t = 1;
        for (int i = 0; i < grid->d(); ++i) t *= std::size_t(nx);
        return t;
    }
    std::size_t xi_points() const {
        std::size_t t = 1;
        for (int i = 0; i < grid->d(); ++i) t *= std::size_t(nxi());
        return t;
    }
    double x_pos(int j) const { return a * j; }
    double xi_pos(int l) const { return b * l; }

    /// jx: per-axis x indices; lx: per-axis xi indices in [-lmax, lmax].
    const cplx& at(const Index& jx, const Index& lx) const {
        const int d = grid->d(), w = nxi();
        std::size_t ix = 0, il = 0;
        for (int i = 0; i < d; ++i) {
            ix = ix * std::size_t(nx) + std::size_t(jx[i]);
            il = il * std::size_t(w) + std::size_t(lx[i] + lmax);
        }
        return values[ix * xi_points() + il];
    }
};

namespace detail {

inline void check_stft_lattice(const SpectralGrid& g, double a, double b,
                               int& na, int& nb) {
    if (a <= 0 || b <= 0) throw std::invalid_argument("stft: steps must be > 0");
    if (a * b > 2.0 * std::numbers::pi + 1e-12)
        throw std::invalid_argument("stft: lattice too sparse, need a*b <= 2*pi");
    const double h = g.spacing();
    na = int(std::lround(a / h));
    if (na < 1 || std::abs(na * h - a) > 1e-9 * h)
        throw std::invalid_argument("stft: x-step must be a multiple of the grid spacing");
    nb = int(std::lround(b * g.m()));
    if (nb < 1 || std::abs(double(nb) / g.m() - b) > 1e-12)
        throw std::invalid_argument("stft: xi-step must be a multiple of 1/m");
    if (g.period() < 12.0)
        throw std::invalid_argument("stft: torus too small for the window decay");
}

} // namespace detail

/// V_g f(x, xi) = integral of e^{-it.xi} g(t - x) f(t) dt over the torus,
/// evaluated per x-shift with one transform; xi samples are a sublattice of
/// the grid frequencies so the phases are torus-periodic.
inline StftCoefficients stft(const Field& f, double a, double b) {
    const SpectralGrid& g = f.grid();
    const int d = g.d(), n = g.modes_per_axis();
    int na = 0, nb = 0;
    detail::check_stft_lattice(g, a, b, na, nb);

    StftCoefficients out;
    out.grid = f.grid_ptr();
    out.a = a;
    out.b = b;
    out.nx = (n + na - 1) / na; // x shifts j*a inside one period
    // Frequency lattice spans half the resolved band: windowed products then
    // stay band-limited to within double roundoff and the quadrature is exact.
    out.lmax = (g.K() * g.m() / 2) / nb;

    const Field sp = as_spatial(f);
    const double h = g.spacing();
    const double vol = std::pow(g.period(), d);
    const std::size_t npts = g.points();
    const int w = out.nxi();

    out.values.assign(out.x_points() * out.xi_points(), cplx{0, 0});
    std::vector<cplx> buf(npts);
    std::vector<cplx> spec(npts);

    Index jx{0, 0, 0};
    for (std::size_t xi = 0; xi < out.x_points(); ++xi) {
        // windowed copy, then a forward transform; the transform's bin at
        // lattice point n is (1/N^d) sum f g e^{-i t n/m}, so the Lebesgue
        // integral is vol * bin.
        for (std::size_t t = 0; t < npts; ++t) {
            Index a3 = g.decode(t, n);
            std::array<double, 3> pos{0, 0, 0};
            for (int i = 0; i < d; ++i) pos[i] = h * a3[i] - out.x_pos(jx[i]);
            buf[t] = sp[t] * detail::gauss_window(g, pos);
        }
        g.plans().forward(buf.data());
        const double scale = vol / double(npts);
        for (auto& v : buf) v *= scale;
        detail::bins_to_centered(g, buf, spec);

        cplx* row = &out.values[xi * out.xi_points()];
        Index lx{0, 0, 0};
        for (int i = 0; i < d; ++i) lx[i] = -out.lmax;
        for (std::size_t li = 0; li < out.xi_points(); ++li) {
            Index lat{0, 0, 0};
            std::size_t il = 0;
            for (int i = 0; i < d; ++i) {
                lat[i] = lx[i] * nb;
                il = il * std::size_t(w) + std::size_t(lx[i] + out.lmax);
            }
            row[il] = spec[g.flat(lat)];
            int axis = d - 1;
            while (axis >= 0 && ++lx[axis] > out.lmax) lx[axis] = -out.lmax, --axis;
            (void)li;
            if (axis < 0) break;
        }

        int axis = d - 1;
        while (axis >= 0 && ++jx[axis] >= out.nx) jx[axis] = 0, --axis;
        if (axis < 0) break;
    }
    return out;
}

enum class StftWeight { polynomial, exponential };

/// Mixed norm || w_s(xi) ||V(., xi)||_{L^p_x} ||_{L^q_xi} by lattice quadrature
/// with Lebesgue cell weights a^d and b^d.
inline double stft_mod_norm(const StftCoefficients& c, double s, double p,
                            double q, StftWeight wf) {
    if (p < 1 || q < 1) throw std::invalid_argument("stft: p,q must be >= 1");
    const int d = c.grid->d();
    const std::size_t nxp = c.x_points(), nxip = c.xi_points();
    const double xcell = std::pow(c.a, d), xicell = std::pow(c.b, d);
    const int w = c.nxi();

    double qacc = 0, qmax = 0;
    for (std::size_t il = 0; il < nxip; ++il) {
        double pacc = 0, pmax = 0;
        for (std::size_t ix = 0; ix < nxp; ++ix) {
            double v = std::abs(c.values[ix * nxip + il]);
            if (std::isinf(p)) pmax = std::max(pmax, v);
            else pacc += std::pow(v, p);
        }
        double inner = std::isinf(p) ? pmax : std::pow(pacc * xcell, 1.0 / p);

        std::size_t rem = il;
        double l1 = 0, l2sq = 0;
        for (int i = d - 1; i >= 0; --i) {
            double xi = c.b * (int(rem % std::size_t(w)) - c.lmax);
            rem /= std::size_t(w);
            l1 += std::abs(xi);
            l2sq += xi * xi;
        }
        double weight = wf == StftWeight::polynomial ? std::pow(1.0 + l2sq, s / 2.0)
                                                     : std::exp2(s * l1);
        double term = weight * inner;
        if (std::isinf(q)) qmax = std::max(qmax, term);
        else qacc += std::pow(term, q);
    }
    return std::isinf(q) ? qmax : std::pow(qacc * xicell, 1.0 / q);
}

namespace detail {

/// Exact frequency-side evaluation: for f = sum_n c_n e^{i t xi_n},
/// V_g f(x, xi) = sum_n c_n e^{i x (xi_n - xi)} g_hat(xi - xi_n).
inline cplx stft_point_spectral(const Field& spec, const std::array<double, 3>& x,
                                const std::array<double, 3>& xi) {
    const SpectralGrid& g = spec.grid();
    const int d = g.d(), half = g.half(), m = g.m();
    // Gaussian radius 9 in frequency: tails below 2e-18.
    Index lo{0, 0, 0}, hi{0, 0, 0};
    for (int i = 0; i < d; ++i) {
        lo[i] = std::max(-half, int(std::ceil((xi[i] - 9.0) * m)));
        hi[i] = std::min(half, int(std::floor((xi[i] + 9.0) * m)));
        if (lo[i] > hi[i]) return {0, 0};
    }
    cplx acc{0, 0};
    Index lat = lo;
    for (;;) {
        cplx cn = spec[g.flat(lat)];
        if (cn != cplx{0, 0}) {
            double w2 = 0, phase = 0;
            for (int i = 0; i < d; ++i) {
                double dxi = double(lat[i]) / m - xi[i];
                w2 += dxi * dxi;
                phase += x[i] * dxi;
            }
            acc += cn * gauss_window_hat(d, w2) * std::polar(1.0, phase);
        }
        int axis = d - 1;
        while (axis >= 0 && ++lat[axis] > hi[axis]) { lat[axis] = lo[axis]; --axis; }
        if (axis < 0) break;
    }
    return acc;
}

} // namespace detail

/// Largest lattice deviation between |V_g f(x, xi)| computed by spatial
/// quadrature and the same modulus computed from the Fourier side, where the
/// roles of x and xi swap (the window transforms onto itself).
inline double fourier_symmetry_defect(const Field& f, double a, double b) {
    StftCoefficients c = stft(f, a, b);
    const SpectralGrid& g = f.grid();
    const int d = g.d(), w = c.nxi();
    const Field spec = as_spectral(f);
    double worst = 0;
    for (std::size_t ix = 0; ix < c.x_points(); ++ix) {
        std::array<double, 3> x{0, 0, 0};
        std::size_t rem = ix;
        for (int i = d - 1; i >= 0; --i) {
            x[i] = c.x_pos(int(rem % std::size_t(c.nx)));
            rem /= std::size_t(c.nx);
        }
        for (std::size_t il = 0; il < c.xi_points(); ++il) {
            std::array<double, 3> xi{0, 0, 0};
            rem = il;
            for (int i = d - 1; i >= 0; --i) {
                xi[i] = c.b * (int(rem % std::size_t(w)) - c.lmax);
                rem /= std::size_t(w);
            }
            // The Fourier-side lattice sum is exact for band-limited data, so
            // the moduli must agree to quadrature accuracy.
            double lhs = std::abs(c.values[ix * c.xi_points() + il]);
            double rhs = std::abs(detail::stft_point_spectral(spec, x, xi));
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

/// Analysis coefficients <f, M_m T_l g> on the integer time-frequency lattice,
/// aggregated as || <m>^s || c_{m,.} ||_{l^p_l} ||_{l^q_m}.
inline double gabor_coeff_norm(const Field& f, double s, double p, double q) {
    if (p < 1 || q < 1) throw std::invalid_argument("gabor: p,q must be >= 1");
    const SpectralGrid& g = f.grid();
    const int d = g.d(), K = g.K();
    if (g.period() < 12.0)
        throw std::invalid_argument("gabor: torus too small for the window decay");
    const int nl = int(std::floor(g.period())); // integer shifts per axis
    const Field spec = as_spectral(f);

    double qacc = 0, qmax = 0;
    Index mm{0, 0, 0};
    for (int i = 0; i < d; ++i) mm[i] = -K;
    for (;;) {
        double m2 = 0;
        std::array<double, 3> xi{0, 0, 0};
        for (int i = 0; i < d; ++i) {
            xi[i] = double(mm[i]);
            m2 += xi[i] * xi[i];
        }
        double pacc = 0, pmax = 0;
        Index ll{0, 0, 0};
        for (;;) {
            std::array<double, 3> x{0, 0, 0};
            for (int i = 0; i < d; ++i) x[i] = double(ll[i]);
            double v = std::abs(detail::stft_point_spectral(spec, x, xi));
            if (std::isinf(p)) pmax = std::max(pmax, v);
            else pacc += std::pow(v, p);
            int axis = d - 1;
            while (axis >= 0 && ++ll[axis] >= nl) ll[axis] = 0, --axis;
            if (axis < 0) break;
        }
        double inner = std::isinf(p) ? pmax : std::pow(pacc, 1.0 / p);
        double term = std::pow(1.0 + m2, s / 2.0) * inner;
        if (std::isinf(q)) qmax = std::max(qmax, term);
        else qacc += std::pow(term, q);

        int axis = d - 1;
        while (axis >= 0 && ++mm[axis] > K) mm[axis] = -K, --axis;
        if (axis < 0) break;
    }
    return std::isinf(q) ? qmax : std::pow(qacc, 1.0 / q);
}

} // namespace modns
