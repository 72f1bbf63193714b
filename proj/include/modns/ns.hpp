#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "heat.hpp"
#include "norms.hpp"

namespace modns {

/// Per-frequency projection onto divergence-free fields: u_hat minus its
/// component along xi; the zero mode is left alone.
inline VectorField leray_project(const VectorField& u) {
    const SpectralGrid& g = u.grid();
    const int d = g.d();
    std::vector<Field> c;
    c.reserve(std::size_t(d));
    for (int i = 0; i < d; ++i) c.push_back(as_spectral(u[i]));
    for (std::size_t f = 0; f < c[0].size(); ++f) {
        Index lat = g.lattice(f);
        double r2 = g.freq_l2sq(lat);
        if (r2 == 0) continue;
        auto xi = g.frequency(lat);
        cplx dot{0, 0};
        for (int i = 0; i < d; ++i) dot += xi[i] * c[std::size_t(i)][f];
        dot /= r2;
        for (int i = 0; i < d; ++i) c[std::size_t(i)][f] -= xi[i] * dot;
    }
    return VectorField(std::move(c));
}

/// Zero every spectral coefficient outside the closed first octant xi_i >= 0.
inline Field octant_restrict(const Field& f) {
    const SpectralGrid& g = f.grid();
    Field c = as_spectral(f);
    for (std::size_t i = 0; i < c.size(); ++i) {
        Index lat = g.lattice(i);
        for (int a = 0; a < g.d(); ++a)
            if (lat[a] < 0) {
                c[i] = cplx{0, 0};
                break;
            }
    }
    return c;
}

inline VectorField octant_restrict(const VectorField& u) {
    std::vector<Field> c;
    for (int i = 0; i < u.d(); ++i) c.push_back(octant_restrict(u[i]));
    return VectorField(std::move(c));
}

/// Largest coefficient modulus outside the first octant, relative to the
/// largest overall (0 for exactly octant-supported data).
inline double octant_defect(const VectorField& u) {
    const SpectralGrid& g = u.grid();
    double outside = 0, peak = 0;
    for (int i = 0; i < u.d(); ++i) {
        Field c = as_spectral(u[i]);
        for (std::size_t f = 0; f < c.size(); ++f) {
            double a = std::abs(c[f]);
            peak = std::max(peak, a);
            Index lat = g.lattice(f);
            for (int ax = 0; ax < g.d(); ++ax)
                if (lat[ax] < 0) {
                    outside = std::max(outside, a);
                    break;
                }
        }
    }
    return peak > 0 ? outside / peak : 0.0;
}

/// P div(u (x) u): dealiased quadratic products, exact spectral divergence,
/// then the Leray projection.  Octant support is preserved by construction.
inline VectorField nonlinear_term(const VectorField& u, bool* dealias_overflow = nullptr) {
    const int d = u.d();
    if (dealias_overflow) *dealias_overflow = false;
    std::vector<Field> sp;
    sp.reserve(std::size_t(d));
    for (int i = 0; i < d; ++i) sp.push_back(as_spatial(u[i]));

    // symmetric product table u_i u_j, i <= j
    std::vector<std::vector<Field>> prod(std::size_t(d),
                                         std::vector<Field>{std::size_t(d), Field{}});
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            bool ovf = false;
            prod[std::size_t(i)][std::size_t(j)] =
                product_dealiased(sp[std::size_t(i)], sp[std::size_t(j)], &ovf);
            if (ovf && dealias_overflow) *dealias_overflow = true;
        }

    std::vector<Field> out;
    out.reserve(std::size_t(d));
    for (int i = 0; i < d; ++i) {
        Field acc(u.grid_ptr(), Rep::spectral);
        for (int j = 0; j < d; ++j) {
            const Field& w = j < i ? prod[std::size_t(j)][std::size_t(i)]
                                   : prod[std::size_t(i)][std::size_t(j)];
            acc += partial_derivative(w, j);
        }
        out.push_back(std::move(acc));
    }
    return leray_project(VectorField(std::move(out)));
}

enum class DataKind { polynomial_octant, exp_weight_octant, random_octant, L2_octant };

inline DataKind parse_data_kind(const std::string& s) {
    if (s == "polynomial_octant") return DataKind::polynomial_octant;
    if (s == "exp_weight_octant") return DataKind::exp_weight_octant;
    if (s == "random_octant") return DataKind::random_octant;
    if (s == "L2_octant") return DataKind::L2_octant;
    throw std::invalid_argument("data: unknown kind '" + s + "'");
}

/// Divergence-free, octant-supported initial data.  The polynomial kinds use
/// P(xi) = (xi_2, -xi_1, 0...), which is orthogonal to xi by construction; the
/// random kinds draw iid complex Gaussians and project.
inline VectorField make_initial_data(GridPtr grid, DataKind kind, double s,
                                     std::uint64_t seed) {
    const int d = grid->d();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int attempt = 0; attempt < 16; ++attempt) {
        VectorField u(grid, Rep::spectral);
        const std::size_t npts = grid->points();
        for (std::size_t f = 0; f < npts; ++f) {
            Index lat = grid->lattice(f);
            bool octant = true;
            for (int a = 0; a < d; ++a) octant = octant && lat[a] >= 0;
            if (!octant) continue;
            auto xi = grid->frequency(lat);
            double l1xi = 0;
            for (int a = 0; a < d; ++a) l1xi += std::abs(xi[a]);
            switch (kind) {
            case DataKind::polynomial_octant:
                u[0][f] = cplx{xi[1], 0};
                u[1][f] = cplx{-xi[0], 0};
                break;
            case DataKind::exp_weight_octant:
                u[0][f] = cplx{xi[1] * std::exp2(-0.5 * s * l1xi), 0};
                u[1][f] = cplx{-xi[0] * std::exp2(-0.5 * s * l1xi), 0};
                break;
            case DataKind::random_octant:
            case DataKind::L2_octant:
                for (int a = 0; a < d; ++a)
                    u[a][f] = cplx{gauss(rng), gauss(rng)};
                break;
            }
        }
        u = leray_project(u);
        double mass = 0;
        for (int a = 0; a < d; ++a) mass += spectral_l2(u[a]);
        if (mass == 0) continue; // degenerate draw, redraw
        if (kind == DataKind::L2_octant) {
            double l2 = 0;
            for (int a = 0; a < d; ++a) {
                double v = spectral_l2(u[a]);
                l2 += v * v;
            }
            u *= cplx{1.0 / std::sqrt(l2), 0};
        }
        return u;
    }
    throw std::runtime_error("data: repeated degenerate draws");
}

/// Working exponents (gamma, p): (d+2, d+2) at the endpoint r = d, else
/// (2, rho) with a configurable large rho (default 8d).
inline std::pair<double, double> select_exponents(double r, int d, double rho = 0.0) {
    if (!(r >= 2.0 && r <= double(d)))
        throw std::invalid_argument("exponents: octant regime requires 2 <= r <= d");
    if (r == double(d)) return {double(d) + 2.0, double(d) + 2.0};
    return {2.0, rho > 0 ? rho : 8.0 * d};
}

enum class Regime { octant_E, small_Mdot };

struct SolverConfig {
    Regime regime = Regime::octant_E;
    double r = 2.0;   // data exponent
    double s = -1.0;  // weight (< 0 in the octant regime)
    double T = 1.0;
    int nt = 32;
    double picard_tol = 1e-6;
    int max_iters = 15;
    double c_analytic = 1.0; // analyticity-weight constant for s(t)
    double rho = 0.0;        // 0 -> default 8d
    double p_work = 0.0;     // 0 -> derived from regime
    double gamma_work = 0.0; // 0 -> derived from regime
    double prune_rel = 1e-13;

    void validate(int d) const {
        if (T <= 0 || nt < 1) throw std::invalid_argument("solver: need T > 0 and nt >= 1");
        if (picard_tol <= 0 || max_iters < 1)
            throw std::invalid_argument("solver: need picard_tol > 0 and max_iters >= 1");
        if (regime == Regime::octant_E) {
            if (!(s < 0))
                throw std::invalid_argument("solver: octant regime requires s < 0");
            if (!(r >= 2.0 && r <= double(d)))
                throw std::invalid_argument("solver: octant regime requires 2 <= r <= d");
        } else {
            double p = working_p(d);
            if (!(double(d) <= r && r < p && p <= 2.0 * r))
                throw std::invalid_argument(
                    "solver: small-data regime requires d <= r < p <= 2r");
        }
    }

    double working_p(int d) const {
        if (p_work > 0) return p_work;
        if (regime == Regime::octant_E) return select_exponents(r, d, rho).second;
        return 2.0 * r; // valid choice in d <= r < p <= 2r
    }
    double working_gamma(int d) const {
        if (gamma_work > 0) return gamma_work;
        if (regime == Regime::octant_E) return select_exponents(r, d, rho).first;
        return 2.0;
    }
    TimeNormSpec working_norm(int d) const {
        TimeNormSpec ts;
        ts.gamma = working_gamma(d);
        ts.space.family = regime == Regime::octant_E ? NormFamily::E : NormFamily::M;
        ts.space.s = regime == Regime::octant_E ? s : 0.0;
        ts.space.p = working_p(d);
        ts.space.q = 1.0;
        ts.space.variant = WindowKind::sharp_cube;
        return ts;
    }
};

struct PicardDiagnostics {
    std::vector<double> norms;      // working norm of each iterate
    std::vector<double> diff_norms; // working norm of successive differences
    std::vector<double> ratios;     // diff_norms[n] / diff_norms[n-1]
    bool converged = false;
    bool aborted_nan = false;
    bool dealias_overflow = false;
    int iterations = 0;
};

struct PicardResult {
    Trajectory traj;
    PicardDiagnostics diag;
};

namespace detail {

inline bool finite_vf(const VectorField& u) {
    for (int i = 0; i < u.d(); ++i)
        for (const cplx& v : u[i].values())
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

} // namespace detail

/// Fixed-point iteration on the whole trajectory for the mild formulation
/// u = H(t) u0 + A P div(u (x) u): u^{(0)} = H(t) u0, then repeated
/// application of the map until the working-norm difference is small.
/// Non-convergence within max_iters is reported, not thrown.
inline PicardResult picard_solve(const VectorField& u0, const SolverConfig& cfg) {
    const SpectralGrid& g = u0.grid();
    const int d = g.d();
    cfg.validate(d);
    if (cfg.regime == Regime::octant_E && octant_defect(u0) > 1e-12)
        throw std::invalid_argument(
            "solver: octant regime requires data spectrum supported in xi_i >= 0");

    const TimeNormSpec wn = cfg.working_norm(d);
    PicardResult res{Trajectory(cfg.T, std::size_t(cfg.nt), u0.grid_ptr(), Rep::spectral), {}};
    Trajectory& u = res.traj;
    PicardDiagnostics& diag = res.diag;

    Trajectory linear(cfg.T, std::size_t(cfg.nt), u0.grid_ptr(), Rep::spectral);
    for (std::size_t i = 0; i < linear.size(); ++i)
        linear[i] = heat_apply(u0, linear.time(i));
    u = linear;
    diag.norms.push_back(timespace_norm(u, wn, cfg.prune_rel));

    Trajectory forcing(cfg.T, std::size_t(cfg.nt), u0.grid_ptr(), Rep::spectral);
    double prev_diff = 0;
    for (int it = 1; it <= cfg.max_iters; ++it) {
        diag.iterations = it;
        for (std::size_t i = 0; i < u.size(); ++i) {
            bool ovf = false;
            forcing[i] = nonlinear_term(u[i], &ovf);
            diag.dealias_overflow = diag.dealias_overflow || ovf;
        }
        Trajectory anext = duhamel_all(forcing);
        Trajectory diff(cfg.T, std::size_t(cfg.nt), u0.grid_ptr(), Rep::spectral);
        bool finite = true;
        for (std::size_t i = 0; i < u.size(); ++i) {
            VectorField unew = linear[i] + anext[i];
            finite = finite && detail::finite_vf(unew);
            diff[i] = unew - u[i];
            u[i] = std::move(unew);
        }
        if (!finite) {
            diag.aborted_nan = true;
            break;
        }
        double dn = timespace_norm(diff, wn, cfg.prune_rel);
        double un = timespace_norm(u, wn, cfg.prune_rel);
        diag.diff_norms.push_back(dn);
        diag.norms.push_back(un);
        if (prev_diff > 0) diag.ratios.push_back(dn / prev_diff);
        prev_diff = dn;
        if (dn <= cfg.picard_tol * std::max(un, 1e-300)) {
            diag.converged = true;
            break;
        }
    }
    return res;
}

/// f(lambda x) by exact spectral relabeling.  lambda must be a positive
/// integer (indices scale up; out-of-band content is dropped and flagged) or
/// the reciprocal of one (indices must divide; remainders are dropped and
/// flagged).
inline Field scale_field(const Field& f, double lambda, bool* band_overflow = nullptr) {
    const SpectralGrid& g = f.grid();
    const int d = g.d(), half = g.half();
    if (band_overflow) *band_overflow = false;
    int up = 0, down = 0;
    if (lambda >= 1.0 && std::abs(lambda - std::round(lambda)) < 1e-12)
        up = int(std::lround(lambda));
    else if (lambda > 0 && std::abs(1.0 / lambda - std::round(1.0 / lambda)) < 1e-12)
        down = int(std::lround(1.0 / lambda));
    else
        throw std::invalid_argument("scale: lambda must be an integer or reciprocal integer");

    Field c = as_spectral(f);
    Field out(f.grid_ptr(), Rep::spectral);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == cplx{0, 0}) continue;
        Index lat = g.lattice(i);
        Index target{0, 0, 0};
        bool ok = true;
        for (int a = 0; a < d; ++a) {
            if (up) {
                target[a] = lat[a] * up;
                ok = ok && std::abs(target[a]) <= half;
            } else {
                ok = ok && lat[a] % down == 0;
                if (ok) target[a] = lat[a] / down;
            }
        }
        if (!ok) {
            if (band_overflow) *band_overflow = true;
            continue;
        }
        out[g.flat(target)] = c[i];
    }
    return out;
}

inline VectorField scale_field(const VectorField& u, double lambda,
                               bool* band_overflow = nullptr) {
    std::vector<Field> c;
    for (int i = 0; i < u.d(); ++i) {
        bool ovf = false;
        c.push_back(scale_field(u[i], lambda, &ovf));
        if (ovf && band_overflow) *band_overflow = true;
    }
    return VectorField(std::move(c));
}

/// Fitted spectral-envelope decay rate: least-squares slope of log2 of the
/// per-shell maximum of |u_hat| against the l^1 frequency, over shells whose
/// envelope exceeds 1e-14.  Positive values estimate the analyticity radius
/// exponent; NaN when fewer than three shells survive.
inline double analyticity_radius(const Field& f) {
    const SpectralGrid& g = f.grid();
    Field c = as_spectral(f);
    // shell index: integer l^1 norm of the lattice point
    std::vector<double> env(std::size_t(g.d() * g.half()) + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        double a = std::abs(c[i]);
        if (a == 0) continue;
        std::size_t shell = std::size_t(l1(g.lattice(i), g.d()));
        env[shell] = std::max(env[shell], a);
    }
    std::vector<double> xs, ys;
    for (std::size_t sh = 0; sh < env.size(); ++sh) {
        if (env[sh] <= 1e-14) continue;
        xs.push_back(double(sh) / g.m());
        ys.push_back(std::log2(env[sh]));
    }
    if (xs.size() < 3) return std::numeric_limits<double>::quiet_NaN();
    return -detail::ls_slope(xs, ys);
}

inline double analyticity_radius(const VectorField& u) {
    // envelope over all components: fold them into one spectral modulus field
    Field c = as_spectral(u[0]);
    for (int i = 1; i < u.d(); ++i) {
        Field ci = as_spectral(u[i]);
        for (std::size_t f = 0; f < c.size(); ++f)
            c[f] = cplx{std::max(std::abs(c[f]), std::abs(ci[f])), 0};
    }
    return analyticity_radius(c);
}

/// Largest amplitude eps (by bisection) for which the Picard solve of
/// eps * u0 keeps all contraction ratios below `target`.
inline double amplitude_bisect(const VectorField& u0, const SolverConfig& cfg,
                               double target = 0.9, double eps_hi = 1.0,
                               int steps = 8) {
    auto contracts = [&](double eps) {
        PicardResult r = picard_solve(cplx{eps, 0} * u0, cfg);
        if (r.diag.aborted_nan || !r.diag.converged) return false;
        for (double q : r.diag.ratios)
            if (!(q < target)) return false;
        return true;
    };
    double lo = 0, hi = eps_hi;
    if (contracts(hi)) return hi;
    for (int i = 0; i < steps; ++i) {
        double mid = (lo + hi) / 2;
        (contracts(mid) ? lo : hi) = mid;
    }
    return lo;
}

} // namespace modns
