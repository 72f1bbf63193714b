#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "decomp.hpp"
#include "trajectory.hpp"

namespace modns {

enum class NormFamily { E, M, Mdot, Besov, BesovHom };

struct NormSpec {
    NormFamily family = NormFamily::E;
    double s = 0.0;
    double p = 2.0;
    double q = 1.0;
    WindowKind variant = WindowKind::smooth_sigma;
    double alpha = 1.0; // dilation factor, only meaningful for dilated windows
    int low_jmax = 2;   // hybrid norm: dyadic indices j <= low_jmax form the low part

    void validate() const {
        if (p < 1.0 || q < 1.0)
            throw std::invalid_argument("norm: p and q must lie in [1, inf]");
        if (family == NormFamily::Mdot && (p <= 1.0 || std::isinf(p)))
            throw std::invalid_argument("norm: hybrid norm requires 1 < p < inf");
    }
};

enum class WeightMode { fixed, sqrt_growth };

struct TimeNormSpec {
    double gamma = 2.0; // time exponent, inf = sup over the grid
    NormSpec space;
    WeightMode weight_mode = WeightMode::fixed;
    double growth_c = 0.0; // s(t) = min(s + c*sqrt(t), |s|)

    void validate() const {
        if (gamma < 1.0) throw std::invalid_argument("norm: gamma must be >= 1");
        space.validate();
    }
};

namespace detail {

/// l^q aggregation with the q = infinity supremum convention.
class LqAccumulator {
public:
    explicit LqAccumulator(double q) : q_(q), sup_(std::isinf(q)) {}
    void add(double v) {
        if (sup_) mx_ = std::max(mx_, v);
        else acc_ += std::pow(v, q_);
    }
    double value() const { return sup_ ? mx_ : std::pow(acc_, 1.0 / q_); }

private:
    double q_;
    bool sup_;
    double acc_{0}, mx_{0};
};

/// Evaluates L^p norms of spectrally masked copies of one field without
/// re-deriving its spectrum per block.  One backward transform per block;
/// blocks with no coefficient mass are skipped outright.
class BlockScan {
public:
    explicit BlockScan(const Field& f)
        : spec_(as_spectral(f)), bins_(spec_.size()) {}

    const Field& spectrum() const { return spec_; }

    /// l^1 coefficient mass of the masked block: an upper bound for its
    /// L^infinity (hence L^p) norm, cheap enough to use as a pruning probe.
    double cube_mass(const Window& w, const Index& k) const {
        const SpectralGrid& g = spec_.grid();
        const int d = g.d(), half = g.half();
        Index lo{0, 0, 0}, hi{0, 0, 0};
        for (int i = 0; i < d; ++i) {
            auto [a, b] = w.support1(k[i]);
            lo[i] = std::max(a, -half);
            hi[i] = std::min(b, half);
            if (lo[i] > hi[i]) return 0.0;
        }
        double mass = 0;
        Index lat = lo;
        for (;;) {
            const cplx& v = spec_[g.flat(lat)];
            if (v != cplx{0, 0}) mass += std::abs(v) * w.symbol(lat, k);
            int axis = d - 1;
            while (axis >= 0 && ++lat[axis] > hi[axis]) { lat[axis] = lo[axis]; --axis; }
            if (axis < 0) break;
        }
        return mass;
    }

    /// L^p norm of the cube block at index k.
    double cube_lp(const Window& w, const Index& k, double p) const {
        const SpectralGrid& g = spec_.grid();
        const int d = g.d(), half = g.half(), n = g.modes_per_axis();
        Index lo{0, 0, 0}, hi{0, 0, 0};
        for (int i = 0; i < d; ++i) {
            auto [a, b] = w.support1(k[i]);
            lo[i] = std::max(a, -half);
            hi[i] = std::min(b, half);
            if (lo[i] > hi[i]) return 0.0;
        }
        std::fill(bins_.begin(), bins_.end(), cplx{0, 0});
        double mass = 0;
        Index lat = lo;
        for (;;) {
            cplx v = spec_[g.flat(lat)];
            if (v != cplx{0, 0}) {
                v *= w.symbol(lat, k);
                mass += std::abs(v);
                std::size_t b = 0;
                for (int i = 0; i < d; ++i)
                    b = b * n + std::size_t(lat[i] >= 0 ? lat[i] : lat[i] + n);
                bins_[b] = v;
            }
            int axis = d - 1;
            while (axis >= 0 && ++lat[axis] > hi[axis]) { lat[axis] = lo[axis]; --axis; }
            if (axis < 0) break;
        }
        if (mass == 0) return 0.0;
        return lp_of_bins(p);
    }

    /// L^p norm of the dyadic block Delta_j (or the low-pass block).
    double dyadic_lp(const Window& w, int j, bool lowpass, double p) const {
        if (!fill_dyadic(w, j, lowpass)) return 0.0;
        return lp_of_bins(p);
    }

    /// Spatial samples of Delta_j f, accumulated as weight*|.|^2 into acc.
    void dyadic_sq_accum(const Window& w, int j, double weight,
                         std::vector<double>& acc) const {
        const SpectralGrid& g = spec_.grid();
        if (acc.size() != spec_.size()) acc.assign(spec_.size(), 0.0);
        if (!fill_dyadic(w, j, false)) return;
        g.plans().backward(bins_.data());
        for (std::size_t i = 0; i < bins_.size(); ++i)
            acc[i] += weight * std::norm(bins_[i]);
    }

private:
    bool fill_dyadic(const Window& w, int j, bool lowpass) const {
        const SpectralGrid& g = spec_.grid();
        const int d = g.d(), n = g.modes_per_axis();
        std::fill(bins_.begin(), bins_.end(), cplx{0, 0});
        double mass = 0;
        for (std::size_t f = 0; f < spec_.size(); ++f) {
            cplx v = spec_[f];
            if (v == cplx{0, 0}) continue;
            Index lat = g.lattice(f);
            v *= lowpass ? w.symbol_lowpass(lat) : w.symbol_dyadic(lat, j);
            if (v == cplx{0, 0}) continue;
            mass += std::abs(v);
            std::size_t b = 0;
            for (int i = 0; i < d; ++i)
                b = b * n + std::size_t(lat[i] >= 0 ? lat[i] : lat[i] + n);
            bins_[b] = v;
        }
        return mass != 0;
    }

    double lp_of_bins(double p) const {
        const SpectralGrid& g = spec_.grid();
        g.plans().backward(bins_.data());
        if (std::isinf(p)) {
            double mx = 0;
            for (const auto& v : bins_) mx = std::max(mx, std::abs(v));
            return mx;
        }
        double acc = 0;
        for (const auto& v : bins_) acc += std::pow(std::abs(v), p);
        return std::pow(acc / double(bins_.size()), 1.0 / p);
    }

    Field spec_;
    mutable std::vector<cplx> bins_;
};

inline double cube_weight(const NormSpec& ns, const Index& k, int d) {
    switch (ns.family) {
    case NormFamily::E:
        return std::exp2(ns.s * ns.alpha * double(l1(k, d)));
    case NormFamily::M:
    case NormFamily::Mdot: {
        double r2 = 0;
        for (int i = 0; i < d; ++i) r2 += double(k[i]) * double(k[i]);
        return std::pow(1.0 + r2, ns.s / 2.0);
    }
    default:
        throw std::logic_error("norm: cube weight on dyadic family");
    }
}

} // namespace detail

/// Exponential-weight block norm ( sum_k 2^{s|k|_1 q} ||block_k f||_p^q )^{1/q}.
inline double e_norm(const Field& f, const NormSpec& spec) {
    NormSpec ns = spec;
    ns.family = NormFamily::E;
    ns.validate();
    Window w = make_window(ns.variant, f.grid_ptr(), ns.alpha);
    detail::BlockScan scan(f);
    detail::LqAccumulator acc(ns.q);
    for (const Index& k : cube_indices(w)) {
        double b = scan.cube_lp(w, k, ns.p);
        if (b > 0) acc.add(detail::cube_weight(ns, k, f.grid().d()) * b);
    }
    return acc.value();
}

/// Polynomial-weight block norm with <k> = (1 + |k|_2^2)^{1/2}.
inline double m_norm(const Field& f, const NormSpec& spec) {
    NormSpec ns = spec;
    ns.family = NormFamily::M;
    ns.validate();
    Window w = make_window(ns.variant, f.grid_ptr(), ns.alpha);
    detail::BlockScan scan(f);
    detail::LqAccumulator acc(ns.q);
    for (const Index& k : cube_indices(w)) {
        double b = scan.cube_lp(w, k, ns.p);
        if (b > 0) acc.add(detail::cube_weight(ns, k, f.grid().d()) * b);
    }
    return acc.value();
}

/// Hybrid norm: Riesz-potential square function over dyadic blocks j <= low_jmax
/// for the low frequencies, plus polynomially weighted cube blocks elsewhere.
inline double mdot_norm(const Field& f, const NormSpec& spec) {
    NormSpec ns = spec;
    ns.family = NormFamily::Mdot;
    ns.validate();
    const SpectralGrid& g = f.grid();
    Window cubes = make_window(ns.variant == WindowKind::dyadic_phi
                                   ? WindowKind::smooth_sigma
                                   : ns.variant,
                               f.grid_ptr(), ns.alpha);
    Window dyad = make_window(WindowKind::dyadic_phi, f.grid_ptr());
    detail::BlockScan scan(f);

    std::vector<double> sq(f.size(), 0.0);
    for (int j = dyad.jmin(); j <= ns.low_jmax; ++j)
        scan.dyadic_sq_accum(dyad, j, std::exp2(2.0 * ns.s * j), sq);
    double low = 0;
    for (double v : sq) low += std::pow(v, ns.p / 2.0);
    low = std::pow(low / double(sq.size()), 1.0 / ns.p);

    detail::LqAccumulator acc(ns.q);
    for (const Index& k : cube_indices(cubes)) {
        if (l1(k, g.d()) == 0) continue;
        double b = scan.cube_lp(cubes, k, ns.p);
        if (b > 0) acc.add(detail::cube_weight(ns, k, g.d()) * b);
    }
    return low + acc.value();
}

/// Dyadic Besov norm; homogeneous sums all resolved annuli, inhomogeneous
/// replaces j <= 0 by the unweighted low-pass block.
inline double besov_norm(const Field& f, double s, double p, double q,
                         bool homogeneous) {
    if (p < 1.0 || q < 1.0)
        throw std::invalid_argument("norm: p and q must lie in [1, inf]");
    Window dyad = make_window(WindowKind::dyadic_phi, f.grid_ptr());
    detail::BlockScan scan(f);
    detail::LqAccumulator acc(q);
    if (!homogeneous) {
        double b = scan.dyadic_lp(dyad, 0, /*lowpass=*/true, p);
        if (b > 0) acc.add(b);
    }
    const int j0 = homogeneous ? dyad.jmin() : 1;
    for (int j = j0; j <= dyad.jmax(); ++j) {
        double b = scan.dyadic_lp(dyad, j, false, p);
        if (b > 0) acc.add(std::exp2(s * j) * b);
    }
    return acc.value();
}

inline double norm(const Field& f, const NormSpec& spec) {
    switch (spec.family) {
    case NormFamily::E: return e_norm(f, spec);
    case NormFamily::M: return m_norm(f, spec);
    case NormFamily::Mdot: return mdot_norm(f, spec);
    case NormFamily::Besov: return besov_norm(f, spec.s, spec.p, spec.q, false);
    case NormFamily::BesovHom: return besov_norm(f, spec.s, spec.p, spec.q, true);
    }
    throw std::logic_error("norm: unknown family");
}

namespace detail {

inline double time_weight(const TimeNormSpec& ts, double t, const Index& k, int d) {
    if (ts.weight_mode == WeightMode::fixed)
        return cube_weight(ts.space, k, d);
    double st = std::min(ts.space.s + ts.growth_c * std::sqrt(t),
                         std::abs(ts.space.s));
    NormSpec w = ts.space;
    w.s = st;
    return cube_weight(w, k, d);
}

} // namespace detail

/// Mixed norm: per cube, L^gamma in time of the block L^p norm (composite
/// trapezoid on the trajectory grid; gamma = inf takes the grid supremum),
/// then the weighted l^q sum over cubes.  Vector fields aggregate components
/// in l^2 before the time integral.
/// prune_rel > 0 skips cubes whose weighted coefficient-mass bound falls below
/// prune_rel times the largest cube bound; with the default 0 every cube with
/// any mass is evaluated exactly.
inline double timespace_norm(const Trajectory& traj, const TimeNormSpec& tspec,
                             double prune_rel = 0.0) {
    TimeNormSpec ts = tspec;
    ts.validate();
    if (ts.space.family == NormFamily::Besov || ts.space.family == NormFamily::BesovHom)
        throw std::invalid_argument("norm: time-space norm needs a cube family");
    const SpectralGrid& g = traj.grid();
    const int d = g.d();
    const std::size_t nt = traj.size();
    Window w = make_window(ts.space.variant, traj.grid_ptr(), ts.space.alpha);

    std::vector<detail::BlockScan> scans;
    scans.reserve(nt * std::size_t(d));
    for (std::size_t i = 0; i < nt; ++i)
        for (int c = 0; c < d; ++c) scans.emplace_back(traj[i][c]);

    const std::vector<Index> cubes = cube_indices(w);
    std::vector<double> bound(cubes.size(), 0.0);
    double bound_max = 0;
    if (prune_rel > 0) {
        for (std::size_t ci = 0; ci < cubes.size(); ++ci) {
            double mx = 0;
            for (std::size_t i = 0; i < nt; ++i)
                for (int c = 0; c < d; ++c)
                    mx = std::max(mx, scans[i * d + c].cube_mass(w, cubes[ci]));
            // the weight cap |s| bounds the sqrt-growth mode too
            bound[ci] = mx * std::exp2(std::abs(ts.space.s) *
                                       std::abs(double(l1(cubes[ci], d))));
            bound_max = std::max(bound_max, bound[ci]);
        }
    }

    const bool sup_t = std::isinf(ts.gamma);
    const std::vector<double> tw = trapezoid_weights(nt, traj.dt());
    detail::LqAccumulator acc(ts.space.q);
    std::vector<double> series(nt);
    for (std::size_t ci = 0; ci < cubes.size(); ++ci) {
        const Index& k = cubes[ci];
        if (prune_rel > 0 && bound[ci] < prune_rel * bound_max) continue;
        bool any = false;
        for (std::size_t i = 0; i < nt; ++i) {
            double s2 = 0;
            for (int c = 0; c < d; ++c) {
                double b = scans[i * d + c].cube_lp(w, k, ts.space.p);
                s2 += b * b;
            }
            series[i] = detail::time_weight(ts, traj.time(i), k, d) * std::sqrt(s2);
            any = any || series[i] > 0;
        }
        if (!any) continue;
        double tn;
        if (sup_t) {
            tn = *std::max_element(series.begin(), series.end());
        } else {
            double integral = 0;
            for (std::size_t i = 0; i < nt; ++i)
                integral += tw[i] * std::pow(series[i], ts.gamma);
            tn = std::pow(integral, 1.0 / ts.gamma);
        }
        acc.add(tn);
    }
    return acc.value();
}

/// Exact spectral derivative: multiplier prod_i (i xi_i)^{alpha_i}.
inline Field derivative(const Field& f, const Index& alpha) {
    const SpectralGrid& g = f.grid();
    for (int i = 0; i < g.d(); ++i)
        if (alpha[i] < 0) throw std::invalid_argument("derivative: negative order");
    Field c = as_spectral(f);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == cplx{0, 0}) continue;
        auto xi = g.frequency(g.lattice(i));
        cplx mult{1, 0};
        for (int a = 0; a < g.d(); ++a)
            for (int r = 0; r < alpha[a]; ++r) mult *= cplx{0, xi[a]};
        c[i] *= mult;
    }
    return c;
}

/// ||d^alpha f||_p * rho^|alpha| / alpha!, evaluated so that the scaling
/// factors never overflow on their own.
inline double gevrey_ratio(const Field& f, const Index& alpha, double rho, double p) {
    if (rho <= 0) throw std::invalid_argument("gevrey: rho must be > 0");
    const int d = f.grid().d();
    double dn = lp_norm(derivative(f, alpha), p);
    if (dn == 0) return 0.0;
    double lg = std::log(dn) + double(l1(alpha, d)) * std::log(rho);
    for (int i = 0; i < d; ++i) lg -= std::lgamma(double(alpha[i]) + 1.0);
    return std::exp(lg);
}

} // namespace modns
