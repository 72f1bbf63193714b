#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "norms.hpp"
#include "trajectory.hpp"

namespace modns {

/// Heat semigroup: exact spectral multiplier e^{-t |xi|_2^2}.
inline Field heat_apply(const Field& f, double t) {
    if (t < 0) throw std::invalid_argument("heat: t must be >= 0");
    const SpectralGrid& g = f.grid();
    Field c = as_spectral(f);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == cplx{0, 0}) continue;
        c[i] *= std::exp(-t * g.freq_l2sq(g.lattice(i)));
    }
    return c;
}

inline VectorField heat_apply(const VectorField& u, double t) {
    std::vector<Field> comps;
    comps.reserve(std::size_t(u.d()));
    for (int i = 0; i < u.d(); ++i) comps.push_back(heat_apply(u[i], t));
    return VectorField(std::move(comps));
}

/// Fractional Laplacian (-Delta)^{alpha/2}: multiplier |xi|_2^alpha with the
/// zero mode annihilated (homogeneous convention).
inline Field riesz(const Field& f, double alpha) {
    const SpectralGrid& g = f.grid();
    Field c = as_spectral(f);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == cplx{0, 0}) continue;
        double r2 = g.freq_l2sq(g.lattice(i));
        c[i] = r2 == 0 ? cplx{0, 0} : c[i] * std::pow(r2, alpha / 2.0);
    }
    return c;
}

inline Field partial_derivative(const Field& f, int axis) {
    Index a{0, 0, 0};
    a[axis] = 1;
    return derivative(f, a);
}

/// Duhamel integral at one grid time: composite trapezoid over grid points
/// tau_j <= t_i, each term using the exact semigroup multiplier.
inline VectorField duhamel(const Trajectory& forcing, std::size_t t_index) {
    if (t_index >= forcing.size())
        throw std::out_of_range("duhamel: time index outside trajectory");
    const double dt = forcing.dt();
    VectorField acc(forcing.grid_ptr(), Rep::spectral);
    if (t_index == 0) return acc;
    for (std::size_t j = 0; j <= t_index; ++j) {
        double w = (j == 0 || j == t_index) ? dt / 2 : dt;
        acc += cplx{w, 0} * heat_apply(forcing[j], forcing.time(t_index) - forcing.time(j));
    }
    return acc;
}

namespace detail {

/// One-step recurrence equivalent to the composite-trapezoid Duhamel sums:
/// I_i = D I_{i-1} + (dt/2)(D f_{i-1} + f_i), with D the one-step decay.
/// O(N) total instead of O(N^2) over the whole trajectory.
template <class GetSpec, class PutSpec>
inline void duhamel_recurrence(const SpectralGrid& g, double dt, std::size_t n,
                               GetSpec&& forcing_at, PutSpec&& store_at) {
    std::vector<double> decay(g.points());
    for (std::size_t i = 0; i < decay.size(); ++i)
        decay[i] = std::exp(-dt * g.freq_l2sq(g.lattice(i)));
    std::vector<cplx> acc(g.points(), cplx{0, 0});
    store_at(0, acc);
    for (std::size_t i = 1; i < n; ++i) {
        const std::vector<cplx>& fprev = forcing_at(i - 1);
        const std::vector<cplx>& fcur = forcing_at(i);
        for (std::size_t j = 0; j < acc.size(); ++j)
            acc[j] = decay[j] * (acc[j] + 0.5 * dt * fprev[j]) + 0.5 * dt * fcur[j];
        store_at(i, acc);
    }
}

} // namespace detail

/// Duhamel integral at every grid time, by the one-step recurrence.
inline Trajectory duhamel_all(const Trajectory& forcing) {
    const SpectralGrid& g = forcing.grid();
    Trajectory out(forcing.horizon(), forcing.steps(), forcing.grid_ptr(), Rep::spectral);
    std::vector<Field> spec(forcing.size());
    for (int c = 0; c < g.d(); ++c) {
        for (std::size_t i = 0; i < forcing.size(); ++i)
            spec[i] = as_spectral(forcing[i][c]);
        detail::duhamel_recurrence(
            g, forcing.dt(), forcing.size(),
            [&](std::size_t i) -> const std::vector<cplx>& { return spec[i].values(); },
            [&](std::size_t i, const std::vector<cplx>& acc) {
                out[i][c] = Field(forcing.grid_ptr(), Rep::spectral, acc);
            });
    }
    return out;
}

/// Scalar time series variant used by the ratio estimators.
inline std::vector<Field> duhamel_series(const std::vector<Field>& forcing, double T) {
    if (forcing.size() < 2) throw std::invalid_argument("duhamel: need >= 2 samples");
    const SpectralGrid& g = forcing[0].grid();
    const double dt = T / double(forcing.size() - 1);
    std::vector<Field> spec(forcing.size());
    for (std::size_t i = 0; i < forcing.size(); ++i) spec[i] = as_spectral(forcing[i]);
    std::vector<Field> out(forcing.size());
    detail::duhamel_recurrence(
        g, dt, forcing.size(),
        [&](std::size_t i) -> const std::vector<cplx>& { return spec[i].values(); },
        [&](std::size_t i, const std::vector<cplx>& acc) {
            out[i] = Field(forcing[0].grid_ptr(), Rep::spectral, acc);
        });
    return out;
}

namespace detail {

inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() < 2) throw std::invalid_argument("fit: need >= 2 samples");
    double xm = 0, ym = 0;
    for (std::size_t i = 0; i < x.size(); ++i) xm += x[i], ym += y[i];
    xm /= double(x.size());
    ym /= double(x.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - xm) * (y[i] - ym);
        den += (x[i] - xm) * (x[i] - xm);
    }
    if (den == 0) throw std::invalid_argument("fit: degenerate abscissae");
    return num / den;
}

/// L^gamma norm in time of sampled values on [0, T]; gamma = inf is the max.
inline double lgamma_time(const std::vector<double>& v, double T, double gamma) {
    if (std::isinf(gamma)) {
        double mx = 0;
        for (double x : v) mx = std::max(mx, x);
        return mx;
    }
    const double dt = T / double(v.size() - 1);
    double acc = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        double w = (i == 0 || i + 1 == v.size()) ? dt / 2 : dt;
        acc += w * std::pow(v[i], gamma);
    }
    return std::pow(acc, 1.0 / gamma);
}

/// ||H(t_i) b||_p sampled on the uniform grid, for a spectral input b.
inline std::vector<double> heat_lp_series(const Field& b, double p, double T, int nt) {
    std::vector<double> out(std::size_t(nt) + 1);
    for (int i = 0; i <= nt; ++i)
        out[std::size_t(i)] = lp_norm(heat_apply(b, T * double(i) / nt), p);
    return out;
}

} // namespace detail

/// Fitted decay rate: least-squares slope of log ||block_k H(t) u0||_p against
/// t |k|_2^2, restricted to samples above 1e-12.  Single-mode data recovers
/// (|xi0|/|k|)^2 exactly.
inline double block_decay_fit(const Field& u0, const Window& w, const Index& k,
                              double p, const std::vector<double>& times) {
    const int d = u0.grid().d();
    if (linf(k, d) < 1)
        throw std::invalid_argument("decay fit: cube index must satisfy |k|_inf >= 1");
    Field b = block(u0, w, k);
    double k2 = 0;
    for (int i = 0; i < d; ++i) k2 += double(k[i]) * double(k[i]);
    std::vector<double> xs, ys;
    for (double t : times) {
        if (t < 0) throw std::invalid_argument("decay fit: negative time");
        double v = lp_norm(heat_apply(b, t), p);
        if (v > 1e-12) {
            xs.push_back(t * k2);
            ys.push_back(std::log(v));
        }
    }
    if (xs.size() < 2)
        throw std::invalid_argument("decay fit: block has no usable mass");
    return -detail::ls_slope(xs, ys);
}

/// Dyadic analogue: slope of log ||Delta_j H(t) u0||_p against t 4^j.
inline double dyadic_decay_fit(const Field& u0, const Window& w, int j, double p,
                               const std::vector<double>& times) {
    Field b = dyadic_block(u0, w, j);
    const double s2 = std::exp2(2.0 * j);
    std::vector<double> xs, ys;
    for (double t : times) {
        double v = lp_norm(heat_apply(b, t), p);
        if (v > 1e-12) {
            xs.push_back(t * s2);
            ys.push_back(std::log(v));
        }
    }
    if (xs.size() < 2)
        throw std::invalid_argument("decay fit: block has no usable mass");
    return -detail::ls_slope(xs, ys);
}

/// Exponent tuple for the smoothing-estimate ratios.
struct HeatExponents {
    double gamma = 2, gamma1 = 1;
    double p = 2, p1 = 2, r = 2;
    double alpha = 0;
};

/// Input bundle: initial-data checks read u0; Duhamel checks read forcing, a
/// uniform sampling of [0, T].
struct SmoothingInput {
    const Field* u0 = nullptr;
    const std::vector<Field>* forcing = nullptr;
    double T = 1.0;
    int nt = 32;
    Index k{0, 0, 0};
};

namespace detail {

inline const Field& need_u0(const SmoothingInput& in) {
    if (!in.u0) throw std::invalid_argument("ratio: check needs initial data");
    return *in.u0;
}
inline const std::vector<Field>& need_forcing(const SmoothingInput& in) {
    if (!in.forcing || in.forcing->size() < 2)
        throw std::invalid_argument("ratio: check needs a forcing series");
    return *in.forcing;
}
inline void need_high(const Index& k, int d) {
    if (linf(k, d) < 1)
        throw std::invalid_argument("ratio: estimate requires |k|_inf >= 1");
}

inline double neighbor_lp_sum(const Field& f, const Window& w, const Index& k,
                              double p) {
    const int d = f.grid().d();
    detail::BlockScan scan(f);
    double s = 0;
    Index l{0, 0, 0};
    int range = w.cube_range();
    for (;;) {
        Index kk = k;
        bool ok = true;
        for (int i = 0; i < d; ++i) {
            kk[i] += l[i];
            ok = ok && std::abs(kk[i]) <= range;
        }
        if (ok) s += scan.cube_lp(w, kk, p);
        int axis = d - 1;
        while (axis >= 0 && ++l[axis] > 1) { l[axis] = -1; --axis; }
        if (axis < 0) break;
    }
    return s;
}

/// Sum over |l|_inf <= 1 of the L^{gamma1}_t L^{p1} norms of block_{k+l} f.
inline double neighbor_lgamma_sum(const std::vector<Field>& f, double T,
                                  const Window& w, const Index& k, double p1,
                                  double gamma1) {
    const int d = f[0].grid().d();
    double s = 0;
    Index l{0, 0, 0};
    int range = w.cube_range();
    for (;;) {
        Index kk = k;
        bool ok = true;
        for (int i = 0; i < d; ++i) {
            kk[i] += l[i];
            ok = ok && std::abs(kk[i]) <= range;
        }
        if (ok) {
            std::vector<double> v(f.size());
            for (std::size_t i = 0; i < f.size(); ++i) {
                detail::BlockScan scan(f[i]);
                v[i] = scan.cube_lp(w, kk, p1);
            }
            s += lgamma_time(v, T, gamma1);
        }
        int axis = d - 1;
        while (axis >= 0 && ++l[axis] > 1) { l[axis] = -1; --axis; }
        if (axis < 0) break;
    }
    return s;
}

inline double gradient_block_lp(const Field& f, const Window& w, const Index& k,
                                double p) {
    const int d = f.grid().d();
    Field b = block(f, w, k);
    double s2 = 0;
    for (int i = 0; i < d; ++i) {
        double v = lp_norm(partial_derivative(b, i), p);
        s2 += v * v;
    }
    return std::sqrt(s2);
}

} // namespace detail

/// LHS/RHS of a named smoothing estimate with constant 1.  Rejects exponent
/// tuples violating the hypotheses of the estimate.
inline double smoothing_ratio(const std::string& id, const SmoothingInput& in,
                              const HeatExponents& e, const Window& w) {
    const SpectralGrid& g = w.grid();
    const int d = g.d();
    auto k2 = [&](const Index& k) {
        double s = 0;
        for (int i = 0; i < d; ++i) s += double(k[i]) * double(k[i]);
        return s;
    };
    auto bracket2 = [&](const Index& k) { return 1.0 + k2(k); };

    if (id == "L6.2-heat-lgamma") {
        detail::need_high(in.k, d);
        const Field& u0 = detail::need_u0(in);
        Field b = block(u0, w, in.k);
        double lhs = detail::lgamma_time(detail::heat_lp_series(b, e.p, in.T, in.nt),
                                         in.T, e.gamma);
        double rhs = std::pow(k2(in.k), -1.0 / e.gamma) * lp_norm(b, e.p);
        return rhs > 0 ? lhs / rhs : 0.0;
    }
    if (id == "L6.3-duhamel-lgamma") {
        detail::need_high(in.k, d);
        if (e.gamma1 > e.gamma)
            throw std::invalid_argument("ratio: estimate requires gamma1 <= gamma");
        const auto& f = detail::need_forcing(in);
        std::vector<Field> bf(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) bf[i] = block(f[i], w, in.k);
        std::vector<Field> af = duhamel_series(bf, in.T);
        std::vector<double> lv(af.size()), fv(bf.size());
        for (std::size_t i = 0; i < af.size(); ++i) {
            lv[i] = lp_norm(af[i], e.p);
            fv[i] = lp_norm(bf[i], e.p);
        }
        double lhs = detail::lgamma_time(lv, in.T, e.gamma);
        double rhs = std::pow(k2(in.k), -(1.0 + 1.0 / e.gamma - 1.0 / e.gamma1)) *
                     detail::lgamma_time(fv, in.T, e.gamma1);
        return rhs > 0 ? lhs / rhs : 0.0;
    }
    if (id == "L6.5-lowfreq-heat") {
        if (!(e.r > 1 && e.r <= e.p && !std::isinf(e.p)))
            throw std::invalid_argument("ratio: estimate requires 1 < r <= p < inf");
        if (!(e.alpha + d * (1.0 / e.r - 1.0 / e.p) > 2.0 / e.gamma))
            throw std::invalid_argument(
                "ratio: estimate requires alpha + d(1/r - 1/p) > 2/gamma");
        const Field& u0 = detail::need_u0(in);
        Field b = block(riesz(u0, e.alpha), w, Index{0, 0, 0});
        double lhs = detail::lgamma_time(detail::heat_lp_series(b, e.p, in.T, in.nt),
                                         in.T, e.gamma);
        double rhs = detail::neighbor_lp_sum(u0, w, Index{0, 0, 0}, e.r);
        return rhs > 0 ? lhs / rhs : 0.0;
    }
    if (id == "L6.6-lowfreq-duhamel") {
        if (!(e.p1 > 1 && e.p1 <= e.p && !std::isinf(e.p)))
            throw std::invalid_argument("ratio: estimate requires 1 < p1 <= p < inf");
        if (!(e.gamma1 >= 1 && e.gamma1 <= e.gamma))
            throw std::invalid_argument("ratio: estimate requires 1 <= gamma1 <= gamma");
        if (!(d / e.p1 - d / e.p + 2.0 / e.gamma1 - 2.0 / e.gamma > 2.0 - e.alpha))
            throw std::invalid_argument(
                "ratio: estimate requires d/p1 - d/p + 2/gamma1 - 2/gamma > 2 - alpha");
        const auto& f = detail::need_forcing(in);
        std::vector<Field> af = duhamel_series(f, in.T);
        std::vector<double> lv(af.size());
        for (std::size_t i = 0; i < af.size(); ++i) {
            detail::BlockScan scan(riesz(af[i], e.alpha));
            lv[i] = scan.cube_lp(w, Index{0, 0, 0}, e.p);
        }
        double lhs = detail::lgamma_time(lv, in.T, e.gamma);
        double rhs = detail::neighbor_lgamma_sum(f, in.T, w, Index{0, 0, 0}, e.p1,
                                                 e.gamma1);
        return rhs > 0 ? lhs / rhs : 0.0;
    }
    if (id == "C6.8-lgamma2-heat") {
        if (!(e.r >= 2 && e.r < e.p && !std::isinf(e.p)))
            throw std::invalid_argument("ratio: estimate requires 2 <= r < p < inf");
        const Field& u0 = detail::need_u0(in);
        if (linf(in.k, d) >= 1) {
            Field b = block(u0, w, in.k);
            double lhs = detail::lgamma_time(
                detail::heat_lp_series(b, e.p, in.T, in.nt), in.T, 2.0);
            double rhs = std::pow(k2(in.k), -0.5) * lp_norm(b, e.r);
            return rhs > 0 ? lhs / rhs : 0.0;
        }
        Field b = block(u0, w, Index{0, 0, 0});
        double lhs = detail::lgamma_time(detail::heat_lp_series(b, e.p, in.T, in.nt),
                                         in.T, 2.0);
        double rhs = detail::neighbor_lp_sum(riesz(u0, -1.0), w, Index{0, 0, 0}, e.r);
        return rhs > 0 ? lhs / rhs : 0.0;
    }
    if (id == "C6.9-duhamel-gradient") {
        if (!(e.p >= 2 && !std::isinf(e.p)))
            throw std::invalid_argument("ratio: estimate requires 2 <= p < inf");
        const auto& f = detail::need_forcing(in);
        std::vector<Field> af = duhamel_series(f, in.T);
        std::vector<double> lv(af.size());
        for (std::size_t i = 0; i < af.size(); ++i)
            lv[i] = detail::gradient_block_lp(af[i], w, in.k, e.p);
        double lhs = detail::lgamma_time(lv, in.T, 2.0);
        double rhs = detail::neighbor_lgamma_sum(f, in.T, w, in.k, e.p / 2.0, 1.0);
        return rhs > 0 ? lhs / rhs : 0.0;
    }
    if (id == "C6.10-strichartz-like") {
        const Field& u0 = detail::need_u0(in);
        const double pg = double(d) + 2.0;
        Field b = block(u0, w, in.k);
        double lhs = detail::lgamma_time(detail::heat_lp_series(b, pg, in.T, in.nt),
                                         in.T, pg);
        double rhs = std::pow(bracket2(in.k), -1.0 / pg) * lp_norm(b, double(d));
        return rhs > 0 ? lhs / rhs : 0.0;
    }
    if (id == "C6.10-duhamel-gradient") {
        const auto& f = detail::need_forcing(in);
        const double pg = double(d) + 2.0;
        std::vector<Field> bf(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) bf[i] = block(f[i], w, in.k);
        std::vector<Field> af = duhamel_series(bf, in.T);
        std::vector<double> lv(af.size()), fv(bf.size());
        for (std::size_t i = 0; i < af.size(); ++i) {
            double s2 = 0;
            for (int c = 0; c < d; ++c) {
                double v = lp_norm(partial_derivative(af[i], c), pg);
                s2 += v * v;
            }
            lv[i] = std::sqrt(s2);
            fv[i] = lp_norm(bf[i], pg / 2.0);
        }
        double lhs = detail::lgamma_time(lv, in.T, pg);
        double rhs = detail::lgamma_time(fv, in.T, pg / 2.0);
        return rhs > 0 ? lhs / rhs : 0.0;
    }
    if (id == "C6.11-supercritical-heat") {
        if (!(e.r >= 2 && e.r < d))
            throw std::invalid_argument("ratio: estimate requires 2 <= r < d");
        if (!(e.p > e.r))
            throw std::invalid_argument("ratio: estimate requires p > r");
        const Field& u0 = detail::need_u0(in);
        Field b = block(u0, w, in.k);
        double lhs = detail::lgamma_time(detail::heat_lp_series(b, e.p, in.T, in.nt),
                                         in.T, 2.0);
        double rhs = std::pow(bracket2(in.k), -0.5) *
                     detail::neighbor_lp_sum(u0, w, in.k, e.r);
        return rhs > 0 ? lhs / rhs : 0.0;
    }
    throw std::invalid_argument("ratio: unknown estimate id '" + id + "'");
}

} // namespace modns
