#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <fftw3.h>
#include <mutex>

namespace modns {

using cplx = std::complex<double>;

/// Integer lattice point in frequency space (units of 1/m) or a unit-cube index.
using Index = std::array<int, 3>;

inline int l1(const Index& k, int d) {
    int s = 0;
    for (int i = 0; i < d; ++i) s += std::abs(k[i]);
    return s;
}
inline int linf(const Index& k, int d) {
    int s = 0;
    for (int i = 0; i < d; ++i) s = std::max(s, std::abs(k[i]));
    return s;
}
inline double l2(const Index& k, int d) {
    double s = 0;
    for (int i = 0; i < d; ++i) s += double(k[i]) * k[i];
    return std::sqrt(s);
}

enum class Rep { spatial, spectral };

namespace detail {

/// FFTW's planner is not reentrant; plan creation/destruction must be
/// serialized even though execution on distinct arrays is thread-safe.
inline std::mutex& planner_mutex() {
    static std::mutex mtx;
    return mtx;
}

/// RAII wrapper for a d-dimensional c2c FFTW plan pair on an n^d array.
class FftPlans {
public:
    FftPlans(int d, int n) : d_(d), n_(n) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        std::size_t total = 1;
        for (int i = 0; i < d; ++i) total *= std::size_t(n);
        std::vector<cplx> buf(total);
        std::array<int, 3> dims{n, n, n};
        auto* p = reinterpret_cast<fftw_complex*>(buf.data());
        fwd_ = fftw_plan_dft(d, dims.data(), p, p, FFTW_FORWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
        bwd_ = fftw_plan_dft(d, dims.data(), p, p, FFTW_BACKWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!fwd_ || !bwd_) throw std::runtime_error("fftw plan creation failed");
    }
    ~FftPlans() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }
    FftPlans(const FftPlans&) = delete;
    FftPlans& operator=(const FftPlans&) = delete;

    void forward(cplx* data) const {
        auto* p = reinterpret_cast<fftw_complex*>(data);
        fftw_execute_dft(fwd_, p, p);
    }
    void backward(cplx* data) const {
        auto* p = reinterpret_cast<fftw_complex*>(data);
        fftw_execute_dft(bwd_, p, p);
    }

private:
    int d_, n_;
    fftw_plan fwd_{nullptr}, bwd_{nullptr};
};

} // namespace detail

/// Discrete periodic model of R^d: torus of period 2*pi*m, physical
/// frequencies xi = n/m for lattice points |n|_inf <= K*m.  Quadrature is
/// normalized so the constant function has unit L^p norm for every p.
class SpectralGrid {
public:
    static constexpr std::size_t kDefaultMemoryCap = std::size_t(256) << 20;

    SpectralGrid(int d, int m, int K, int oversample,
                 std::size_t memory_cap = kDefaultMemoryCap)
        : d_(d), m_(m), K_(K), oversample_(oversample) {
        if (d != 2 && d != 3) throw std::invalid_argument("grid: d must be 2 or 3");
        if (m < 4) throw std::invalid_argument("grid: m must be >= 4");
        if (K < 2) throw std::invalid_argument("grid: K must be >= 2");
        if (oversample < 2) throw std::invalid_argument("grid: oversample must be >= 2");
        half_ = K * m;
        n_ = 2 * half_ + 1;
        half_pad_ = oversample * half_;
        n_pad_ = 2 * half_pad_ + 1;
        std::size_t bytes = 16u * (points() + padded_points()) * 4u;
        if (bytes > memory_cap)
            throw std::length_error("grid: memory estimate " + std::to_string(bytes) +
                                    " bytes exceeds cap");
        plans_ = std::make_unique<detail::FftPlans>(d_, n_);
        plans_pad_ = std::make_unique<detail::FftPlans>(d_, n_pad_);
    }

    int d() const { return d_; }
    int m() const { return m_; }
    int K() const { return K_; }
    int oversample() const { return oversample_; }
    /// Lattice half-width: resolved indices n_i in [-half, half].
    int half() const { return half_; }
    /// Modes per axis (odd).
    int modes_per_axis() const { return n_; }
    int padded_modes_per_axis() const { return n_pad_; }
    int padded_half() const { return half_pad_; }
    /// Torus period 2*pi*m.
    double period() const { return 2.0 * std::numbers::pi * m_; }
    /// Spatial grid spacing.
    double spacing() const { return period() / n_; }

    std::size_t points() const {
        std::size_t t = 1;
        for (int i = 0; i < d_; ++i) t *= std::size_t(n_);
        return t;
    }
    std::size_t padded_points() const {
        std::size_t t = 1;
        for (int i = 0; i < d_; ++i) t *= std::size_t(n_pad_);
        return t;
    }

    /// Decode a flat row-major index into per-axis indices 0..n-1.
    Index decode(std::size_t flat, int n) const {
        Index a{0, 0, 0};
        for (int i = d_ - 1; i >= 0; --i) {
            a[i] = int(flat % n);
            flat /= n;
        }
        return a;
    }
    /// Lattice point for a flat spectral index (centered storage).
    Index lattice(std::size_t flat) const {
        Index a = decode(flat, n_);
        for (int i = 0; i < d_; ++i) a[i] -= half_;
        return a;
    }
    std::size_t flat(const Index& lat) const {
        std::size_t f = 0;
        for (int i = 0; i < d_; ++i) f = f * n_ + std::size_t(lat[i] + half_);
        return f;
    }
    bool resolved(const Index& lat) const { return linf(lat, d_) <= half_; }

    /// Physical frequency of a lattice point.
    std::array<double, 3> frequency(const Index& lat) const {
        std::array<double, 3> xi{0, 0, 0};
        for (int i = 0; i < d_; ++i) xi[i] = double(lat[i]) / m_;
        return xi;
    }
    double freq_l2sq(const Index& lat) const {
        double s = 0;
        for (int i = 0; i < d_; ++i) {
            double x = double(lat[i]) / m_;
            s += x * x;
        }
        return s;
    }
    double freq_l1(const Index& lat) const { return double(l1(lat, d_)) / m_; }

    const detail::FftPlans& plans() const { return *plans_; }
    const detail::FftPlans& padded_plans() const { return *plans_pad_; }

private:
    int d_, m_, K_, oversample_;
    int half_, n_, half_pad_, n_pad_;
    std::unique_ptr<detail::FftPlans> plans_, plans_pad_;
};

using GridPtr = std::shared_ptr<const SpectralGrid>;

inline GridPtr make_grid(int d, int m, int K, int oversample = 2,
                         std::size_t memory_cap = SpectralGrid::kDefaultMemoryCap) {
    return std::make_shared<const SpectralGrid>(d, m, K, oversample, memory_cap);
}

/// Complex scalar function on a grid, stored spatially (samples at x_j = j*h)
/// or spectrally (centered lattice coefficients, row-major).
class Field {
public:
    Field() = default;
    Field(GridPtr grid, Rep rep)
        : grid_(std::move(grid)), rep_(rep), values_(grid_->points(), cplx{0, 0}) {}
    Field(GridPtr grid, Rep rep, std::vector<cplx> values)
        : grid_(std::move(grid)), rep_(rep), values_(std::move(values)) {
        if (values_.size() != grid_->points())
            throw std::invalid_argument("field: value count does not match grid");
    }

    const SpectralGrid& grid() const { return *grid_; }
    GridPtr grid_ptr() const { return grid_; }
    Rep rep() const { return rep_; }
    const std::vector<cplx>& values() const { return values_; }
    std::vector<cplx>& values() { return values_; }
    cplx& operator[](std::size_t i) { return values_[i]; }
    const cplx& operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    Field& operator+=(const Field& o) {
        check_compatible(o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
        return *this;
    }
    Field& operator-=(const Field& o) {
        check_compatible(o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
        return *this;
    }
    Field& operator*=(cplx c) {
        for (auto& v : values_) v *= c;
        return *this;
    }
    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    friend Field operator*(cplx c, Field f) { return f *= c; }

private:
    void check_compatible(const Field& o) const {
        if (grid_ != o.grid_ || rep_ != o.rep_)
            throw std::invalid_argument("field: incompatible operands");
    }
    GridPtr grid_;
    Rep rep_{Rep::spatial};
    std::vector<cplx> values_;
};

namespace detail {

/// Reorder centered lattice storage to DFT bin order (or back).
inline void centered_to_bins(const SpectralGrid& g, const std::vector<cplx>& in,
                             std::vector<cplx>& out) {
    const int n = g.modes_per_axis(), half = g.half(), d = g.d();
    out.assign(in.size(), cplx{0, 0});
    for (std::size_t f = 0; f < in.size(); ++f) {
        Index a = g.decode(f, n);
        std::size_t b = 0;
        for (int i = 0; i < d; ++i) {
            int lat = a[i] - half;
            b = b * n + std::size_t(lat >= 0 ? lat : lat + n);
        }
        out[b] = in[f];
    }
}

inline void bins_to_centered(const SpectralGrid& g, const std::vector<cplx>& in,
                             std::vector<cplx>& out) {
    const int n = g.modes_per_axis(), half = g.half(), d = g.d();
    out.assign(in.size(), cplx{0, 0});
    for (std::size_t f = 0; f < in.size(); ++f) {
        Index a = g.decode(f, n);
        std::size_t b = 0;
        for (int i = 0; i < d; ++i) {
            int lat = a[i] - half;
            b = b * n + std::size_t(lat >= 0 ? lat : lat + n);
        }
        out[f] = in[b];
    }
}

} // namespace detail

/// Change representation.  Unitary in the Plancherel sense: the normalized
/// spatial L^2 norm equals the spectral l^2 norm.
inline Field transform(const Field& f, Rep target) {
    if (f.rep() == target) return f;
    const SpectralGrid& g = f.grid();
    std::vector<cplx> buf(f.size());
    if (target == Rep::spectral) {
        buf = f.values();
        g.plans().forward(buf.data());
        const double scale = 1.0 / double(g.points());
        for (auto& v : buf) v *= scale;
        std::vector<cplx> out;
        detail::bins_to_centered(g, buf, out);
        return Field(f.grid_ptr(), Rep::spectral, std::move(out));
    }
    detail::centered_to_bins(g, f.values(), buf);
    g.plans().backward(buf.data());
    return Field(f.grid_ptr(), Rep::spatial, std::move(buf));
}

inline Field as_spectral(const Field& f) { return transform(f, Rep::spectral); }
inline Field as_spatial(const Field& f) { return transform(f, Rep::spatial); }

/// L^p norm with normalized torus measure; p = infinity as max modulus.
inline double lp_norm(const Field& f, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    Field s = as_spatial(f);
    if (std::isinf(p)) {
        double mx = 0;
        for (const auto& v : s.values()) mx = std::max(mx, std::abs(v));
        return mx;
    }
    double acc = 0;
    for (const auto& v : s.values()) acc += std::pow(std::abs(v), p);
    acc /= double(s.size());
    return std::pow(acc, 1.0 / p);
}

inline double spectral_l2(const Field& f) {
    Field c = as_spectral(f);
    double acc = 0;
    for (const auto& v : c.values()) acc += std::norm(v);
    return std::sqrt(acc);
}

/// Dealiased pointwise product: both factors are transplanted onto the
/// oversampled lattice, multiplied in space, and truncated back.  The result's
/// spectrum is the exact discrete convolution of the inputs whenever that
/// convolution fits in the padded band (always true for oversample >= 2).
/// If truncation back to the resolved band discards nonzero coefficients,
/// *support_overflow is set and *discarded_max reports their peak modulus.
inline Field product_dealiased(const Field& fa, const Field& fb,
                               bool* support_overflow = nullptr,
                               double* discarded_max = nullptr) {
    if (fa.grid_ptr() != fb.grid_ptr())
        throw std::invalid_argument("product: fields on different grids");
    const SpectralGrid& g = fa.grid();
    Field ca = as_spectral(fa), cb = as_spectral(fb);

    const int d = g.d(), n = g.modes_per_axis(), np = g.padded_modes_per_axis();
    const int half = g.half(), hp = g.padded_half();
    const std::size_t tp = g.padded_points();

    auto embed = [&](const Field& c) {
        std::vector<cplx> bins(tp, cplx{0, 0});
        for (std::size_t f = 0; f < c.size(); ++f) {
            Index a = g.decode(f, n);
            std::size_t b = 0;
            for (int i = 0; i < d; ++i) {
                int lat = a[i] - half;
                b = b * np + std::size_t(lat >= 0 ? lat : lat + np);
            }
            bins[b] = c[f];
        }
        g.padded_plans().backward(bins.data());
        return bins;
    };

    std::vector<cplx> pa = embed(ca), pb = embed(cb);
    for (std::size_t i = 0; i < tp; ++i) pa[i] *= pb[i];
    g.padded_plans().forward(pa.data());
    const double scale = 1.0 / double(tp);

    std::vector<cplx> out(g.points(), cplx{0, 0});
    double outside = 0;
    for (std::size_t b = 0; b < tp; ++b) {
        Index a = g.decode(b, np);
        Index lat{0, 0, 0};
        for (int i = 0; i < d; ++i) lat[i] = a[i] <= hp ? a[i] : a[i] - np;
        cplx v = pa[b] * scale;
        if (linf(lat, d) <= half) {
            out[g.flat(lat)] = v;
        } else {
            outside = std::max(outside, std::abs(v));
        }
    }
    double ref = 0;
    for (const auto& v : out) ref = std::max(ref, std::abs(v));
    bool overflow = outside > 1e-13 * std::max(ref, outside);
    if (support_overflow) *support_overflow = overflow;
    if (discarded_max) *discarded_max = outside;
    return Field(fa.grid_ptr(), Rep::spectral, std::move(out));
}

/// d-component velocity field on a shared grid.
class VectorField {
public:
    VectorField() = default;
    explicit VectorField(GridPtr grid, Rep rep = Rep::spectral) {
        for (int i = 0; i < grid->d(); ++i) comps_.emplace_back(grid, rep);
    }
    explicit VectorField(std::vector<Field> comps) : comps_(std::move(comps)) {
        if (comps_.empty() || int(comps_.size()) != comps_[0].grid().d())
            throw std::invalid_argument("vector field: need d components");
    }

    const SpectralGrid& grid() const { return comps_[0].grid(); }
    GridPtr grid_ptr() const { return comps_[0].grid_ptr(); }
    int d() const { return int(comps_.size()); }
    Field& operator[](int i) { return comps_[std::size_t(i)]; }
    const Field& operator[](int i) const { return comps_[std::size_t(i)]; }

    VectorField& operator+=(const VectorField& o) {
        for (int i = 0; i < d(); ++i) comps_[std::size_t(i)] += o[i];
        return *this;
    }
    VectorField& operator-=(const VectorField& o) {
        for (int i = 0; i < d(); ++i) comps_[std::size_t(i)] -= o[i];
        return *this;
    }
    VectorField& operator*=(cplx c) {
        for (auto& f : comps_) f *= c;
        return *this;
    }
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(cplx c, VectorField v) { return v *= c; }

private:
    std::vector<Field> comps_;
};

/// max_k |k . u_hat(k)| / max_k |u_hat(k)| with physical frequencies.
inline double divergence_defect(const VectorField& u) {
    const SpectralGrid& g = u.grid();
    std::vector<Field> cs;
    for (int i = 0; i < u.d(); ++i) cs.push_back(as_spectral(u[i]));
    double num = 0, den = 0;
    for (std::size_t f = 0; f < cs[0].size(); ++f) {
        Index lat = g.lattice(f);
        auto xi = g.frequency(lat);
        cplx dot{0, 0};
        double mag = 0;
        for (int i = 0; i < u.d(); ++i) {
            dot += xi[std::size_t(i)] * cs[std::size_t(i)][f];
            mag = std::max(mag, std::abs(cs[std::size_t(i)][f]));
        }
        num = std::max(num, std::abs(dot));
        den = std::max(den, mag);
    }
    return den > 0 ? num / den : 0.0;
}

} // namespace modns
