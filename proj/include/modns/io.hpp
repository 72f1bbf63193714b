#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include "grid.hpp"

namespace modns {

// Flat binary field container: magic "MODNS1", u8 d, u32 m, u32 K, u8 rep tag,
// then little-endian double pairs (re, im) in row-major lattice order.

namespace detail {

template <class T>
void write_le(std::ostream& os, T v) {
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T read_le(std::istream& is) {
    unsigned char buf[sizeof(T)];
    is.read(reinterpret_cast<char*>(buf), sizeof(T));
    T v;
    std::memcpy(&v, buf, sizeof(T));
    return v;
}

} // namespace detail

inline void save_field(const Field& f, std::ostream& os) {
    os.write("MODNS1", 6);
    detail::write_le<std::uint8_t>(os, std::uint8_t(f.grid().d()));
    detail::write_le<std::uint32_t>(os, std::uint32_t(f.grid().m()));
    detail::write_le<std::uint32_t>(os, std::uint32_t(f.grid().K()));
    detail::write_le<std::uint8_t>(os, f.rep() == Rep::spatial ? 0 : 1);
    for (const auto& v : f.values()) {
        detail::write_le<double>(os, v.real());
        detail::write_le<double>(os, v.imag());
    }
}

inline void save_field(const Field& f, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    save_field(f, os);
}

inline Field load_field(std::istream& is, int oversample = 2) {
    char magic[6];
    is.read(magic, 6);
    if (!is || std::string(magic, 6) != "MODNS1")
        throw std::runtime_error("field container: bad magic");
    int d = detail::read_le<std::uint8_t>(is);
    int m = int(detail::read_le<std::uint32_t>(is));
    int K = int(detail::read_le<std::uint32_t>(is));
    Rep rep = detail::read_le<std::uint8_t>(is) == 0 ? Rep::spatial : Rep::spectral;
    GridPtr g = make_grid(d, m, K, oversample);
    std::vector<cplx> vals(g->points());
    for (auto& v : vals) {
        double re = detail::read_le<double>(is);
        double im = detail::read_le<double>(is);
        v = cplx{re, im};
    }
    if (!is) throw std::runtime_error("field container: truncated data");
    return Field(std::move(g), rep, std::move(vals));
}

inline Field load_field(const std::string& path, int oversample = 2) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    return load_field(is, oversample);
}

} // namespace modns
