#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <vector>

#include "grid.hpp"

namespace modns {

namespace detail {

/// CDF of the normalized C^inf bump exp(-1/(1-t^2)) on [-1,1].  The integrand
/// is flat to all orders at the endpoints, so the trapezoid rule converges
/// faster than any power and the table is machine-accurate.
class BumpCdf {
public:
    static double eval(double t) {
        static const BumpCdf table;
        if (t <= -1.0) return 0.0;
        if (t >= 1.0) return 1.0;
        double x = (t + 1.0) / 2.0 * double(kN - 1);
        std::size_t i = std::min(std::size_t(x), std::size_t(kN - 2));
        double frac = x - double(i);
        return table.cum_[i] * (1.0 - frac) + table.cum_[i + 1] * frac;
    }

private:
    static constexpr int kN = 200001;
    BumpCdf() : cum_(kN) {
        auto bump = [](double t) {
            double u = 1.0 - t * t;
            return u > 0 ? std::exp(-1.0 / u) : 0.0;
        };
        const double h = 2.0 / double(kN - 1);
        cum_[0] = 0;
        double prev = bump(-1.0);
        for (int i = 1; i < kN; ++i) {
            double cur = bump(-1.0 + h * i);
            cum_[std::size_t(i)] = cum_[std::size_t(i - 1)] + 0.5 * h * (prev + cur);
            prev = cur;
        }
        const double total = cum_[kN - 1];
        for (auto& v : cum_) v /= total;
    }
    std::vector<double> cum_;
};

/// 1-D smooth cut-off: mollified indicator of [-1/2,1/2] with mollifier width
/// w, so supp sigma1 = [-1/2-w, 1/2+w] and sum_j sigma1(t-j) = 1 exactly (the
/// shifted CDF evaluations telescope).
inline double sigma1(double t, double w) {
    return BumpCdf::eval((t + 0.5) / w) - BumpCdf::eval((t - 0.5) / w);
}

/// Radial cut-off: 1 on |xi| <= 1, 0 on |xi| >= 2, smooth step between.
inline double psi_radial(double r) {
    return 1.0 - BumpCdf::eval(2.0 * (r - 1.5));
}

} // namespace detail

enum class WindowKind { smooth_sigma, sharp_cube, dyadic_phi, dilated };

/// Frequency decomposition symbol family on a grid's lattice.
class Window {
public:
    static constexpr double kDefaultMollWidth = 0.25;

    Window(WindowKind kind, GridPtr grid, double alpha = 1.0,
           double moll_width = kDefaultMollWidth)
        : kind_(kind), grid_(std::move(grid)), alpha_(alpha), w_(moll_width) {
        if (kind_ == WindowKind::dilated && alpha_ <= 0)
            throw std::invalid_argument("window: dilation alpha must be > 0");
        if (kind_ != WindowKind::dilated) alpha_ = 1.0;
        if (kind_ == WindowKind::smooth_sigma || kind_ == WindowKind::dilated) {
            // Transition regions of the 1-D profile must be resolvable: the
            // non-flat part spans one frequency unit (two bands of width 2w).
            double pts = 4.0 * w_ * grid_->m() * alpha_;
            if (pts < 2.0)
                throw std::invalid_argument("window: transition band unresolvable");
        }
        if (kind_ == WindowKind::dyadic_phi) {
            jmin_ = -int(std::ceil(std::log2(double(grid_->m()))));
            double ximax = grid_->K() * std::sqrt(double(grid_->d()));
            jmax_ = int(std::ceil(std::log2(ximax))) + 1;
        }
    }

    WindowKind kind() const { return kind_; }
    const SpectralGrid& grid() const { return *grid_; }
    GridPtr grid_ptr() const { return grid_; }
    double alpha() const { return alpha_; }
    int jmin() const { return jmin_; }
    int jmax() const { return jmax_; }

    /// Largest cube index magnitude (per axis) with support in the band.
    int cube_range() const {
        if (kind_ == WindowKind::sharp_cube) return grid_->K();
        return int(std::floor(grid_->K() / alpha_ + 0.5 + w_));
    }

    /// Per-axis lattice support [lo, hi] of the cube symbol component at k_i.
    std::pair<int, int> support1(int ki) const {
        const int m = grid_->m();
        if (kind_ == WindowKind::sharp_cube) return {ki * m, (ki + 1) * m - 1};
        double lo = (ki - 0.5 - w_) * m * alpha_;
        double hi = (ki + 0.5 + w_) * m * alpha_;
        return {int(std::ceil(lo)), int(std::floor(hi))};
    }

    /// Symbol value of the block at cube index k, evaluated at lattice point n.
    double symbol(const Index& n, const Index& k) const {
        const int d = grid_->d(), m = grid_->m();
        switch (kind_) {
        case WindowKind::sharp_cube: {
            for (int i = 0; i < d; ++i) {
                // xi_i in [k_i, k_i+1)  <=>  n_i in [k_i*m, k_i*m + m - 1]
                if (n[i] < k[i] * m || n[i] >= (k[i] + 1) * m) return 0.0;
            }
            return 1.0;
        }
        case WindowKind::smooth_sigma:
        case WindowKind::dilated: {
            double v = 1.0;
            for (int i = 0; i < d; ++i)
                v *= detail::sigma1(double(n[i]) / (m * alpha_) - k[i], w_);
            return v;
        }
        default:
            throw std::logic_error("window: cube symbol on dyadic window");
        }
    }

    /// Dyadic symbol phi_j = psi(2^-j xi) - psi(2^-j+1 xi) at lattice point n.
    double symbol_dyadic(const Index& n, int j) const {
        double r = std::sqrt(grid_->freq_l2sq(n));
        return detail::psi_radial(std::ldexp(r, -j)) -
               detail::psi_radial(std::ldexp(r, -j + 1));
    }

    /// Low-pass symbol psi(xi) (1 near 0), used for inhomogeneous Besov norms.
    double symbol_lowpass(const Index& n) const {
        return detail::psi_radial(std::sqrt(grid_->freq_l2sq(n)));
    }

private:
    WindowKind kind_;
    GridPtr grid_;
    double alpha_;
    double w_;
    int jmin_{0}, jmax_{0};
};

inline Window make_window(WindowKind kind, GridPtr grid, double alpha = 1.0,
                          double moll_width = Window::kDefaultMollWidth) {
    return Window(kind, std::move(grid), alpha, moll_width);
}

/// All cube indices with support intersecting the resolved band.
inline std::vector<Index> cube_indices(const Window& w) {
    const int r = w.cube_range(), d = w.grid().d();
    std::vector<Index> out;
    Index k{0, 0, 0};
    std::function<void(int)> rec = [&](int axis) {
        if (axis == d) {
            out.push_back(k);
            return;
        }
        for (int v = -r; v <= r; ++v) {
            k[axis] = v;
            rec(axis + 1);
        }
    };
    rec(0);
    return out;
}

/// Frequency-uniform block: spectral multiplication by the window symbol at
/// cube index k.  Indices entirely outside the band yield a zero field.
inline Field block(const Field& f, const Window& w, const Index& k,
                   bool* out_of_band = nullptr) {
    const SpectralGrid& g = f.grid();
    if (out_of_band) *out_of_band = linf(k, g.d()) > w.cube_range();
    Field c = as_spectral(f);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == cplx{0, 0}) continue;
        c[i] *= w.symbol(g.lattice(i), k);
    }
    return c;
}

/// Dyadic Littlewood--Paley block Delta_j.
inline Field dyadic_block(const Field& f, const Window& w, int j) {
    const SpectralGrid& g = f.grid();
    Field c = as_spectral(f);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == cplx{0, 0}) continue;
        c[i] *= w.symbol_dyadic(g.lattice(i), j);
    }
    return c;
}

/// Max pointwise deviation of sum_k symbol_k from 1 over the resolved lattice.
inline double partition_defect(const Window& w) {
    const SpectralGrid& g = w.grid();
    double worst = 0;
    if (w.kind() == WindowKind::dyadic_phi) {
        for (std::size_t i = 0; i < g.points(); ++i) {
            Index n = g.lattice(i);
            if (l1(n, g.d()) == 0) continue;  // dyadic partition excludes 0
            double s = 0;
            for (int j = w.jmin(); j <= w.jmax(); ++j) s += w.symbol_dyadic(n, j);
            worst = std::max(worst, std::abs(s - 1.0));
        }
        return worst;
    }
    auto cubes = cube_indices(w);
    for (std::size_t i = 0; i < g.points(); ++i) {
        Index n = g.lattice(i);
        double s = 0;
        for (const auto& k : cubes) s += w.symbol(n, k);
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

/// Random band-limited field with iid standard complex Gaussian coefficients.
inline Field random_field(GridPtr grid, std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Field f(grid, Rep::spectral);
    for (auto& v : f.values()) v = cplx{nd(rng), nd(rng)};
    return f;
}

/// Almost-orthogonality defect: max over trials and cube indices of
/// || box_k f - box_k sum_{|l|_inf<=1} box_{k+l} f ||_2 / ||f||_2.
inline double almost_orthogonality_defect(const Window& w, int trials = 10,
                                          std::uint64_t seed = 1) {
    const SpectralGrid& g = w.grid();
    std::mt19937_64 rng(seed);
    const int d = g.d();
    double worst = 0;
    for (int t = 0; t < trials; ++t) {
        Field f = random_field(w.grid_ptr(), rng);
        double fnorm = spectral_l2(f);
        // Work symbol-side: the defect per lattice point is
        // sigma_k(n) * (1 - sum_{|l|<=1} sigma_{k+l}(n)).
        auto cubes = cube_indices(w);
        for (const auto& k : cubes) {
            double acc = 0;
            for (std::size_t i = 0; i < f.size(); ++i) {
                Index n = g.lattice(i);
                double sk = w.symbol(n, k);
                if (sk == 0) continue;
                double s3 = 0;
                Index kk = k;
                Index l{0, 0, 0};
                std::function<void(int)> rec = [&](int axis) {
                    if (axis == d) {
                        for (int i2 = 0; i2 < d; ++i2) kk[i2] = k[i2] + l[i2];
                        s3 += w.symbol(n, kk);
                        return;
                    }
                    for (l[axis] = -1; l[axis] <= 1; ++l[axis]) rec(axis + 1);
                };
                rec(0);
                double mult = sk * (1.0 - s3);
                acc += mult * mult * std::norm(f[i]);
            }
            worst = std::max(worst, std::sqrt(acc) / fnorm);
        }
    }
    return worst;
}

/// Window profile as CSV rows: lattice point coordinates, symbol value.
inline void export_profile(const Window& w, const Index& k, std::ostream& os) {
    const SpectralGrid& g = w.grid();
    for (int i = 0; i < g.d(); ++i) os << "n" << i << ",";
    os << "symbol\n";
    for (std::size_t i = 0; i < g.points(); ++i) {
        Index n = g.lattice(i);
        double v = w.kind() == WindowKind::dyadic_phi ? w.symbol_dyadic(n, k[0])
                                                      : w.symbol(n, k);
        if (v == 0) continue;
        for (int a = 0; a < g.d(); ++a) os << n[a] << ",";
        os << v << "\n";
    }
}

} // namespace modns
