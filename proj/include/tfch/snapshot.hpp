#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "tfch/errors.hpp"
#include "tfch/field.hpp"

namespace tfch {

/// On-disk field snapshot. Layout (explicitly little-endian):
///   magic "TFCH", version u32 = 1, nx u32, ny u32,
///   alpha f64, epsilon f64, t f64, then nx*ny values f64, row-major
///   x-fastest. Round-trips bit-exactly.
struct Snapshot {
    std::uint32_t version = 1;
    std::uint32_t nx = 0, ny = 0;
    double alpha = 0.0;
    double epsilon = 0.0;
    double t = 0.0;
    std::vector<double> values;
};

namespace detail {

inline void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = (v >> (8 * i)) & 0xFF;
    os.write(reinterpret_cast<const char*>(b), 4);
}

inline void put_f64(std::ostream& os, double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = (u >> (8 * i)) & 0xFF;
    os.write(reinterpret_cast<const char*>(b), 8);
}

inline std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
    return v;
}

inline double get_f64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= std::uint64_t(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}

}  // namespace detail

inline void write_snapshot(const std::string& path, const Snapshot& s) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InputError("snapshot: cannot open " + path);
    os.write("TFCH", 4);
    detail::put_u32(os, s.version);
    detail::put_u32(os, s.nx);
    detail::put_u32(os, s.ny);
    detail::put_f64(os, s.alpha);
    detail::put_f64(os, s.epsilon);
    detail::put_f64(os, s.t);
    for (double v : s.values) detail::put_f64(os, v);
    if (!os) throw NumericalError("snapshot: write failed for " + path);
}

inline void write_snapshot(const std::string& path, const Field& f,
                           double alpha, double epsilon, double t) {
    Snapshot s;
    s.nx = std::uint32_t(f.grid.nx);
    s.ny = std::uint32_t(f.grid.ny);
    s.alpha = alpha;
    s.epsilon = epsilon;
    s.t = t;
    s.values = f.v;
    write_snapshot(path, s);
}

inline Snapshot read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InputError("snapshot: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "TFCH", 4) != 0)
        throw InputError("snapshot: bad magic in " + path);
    Snapshot s;
    s.version = detail::get_u32(is);
    if (s.version != 1)
        throw InputError("snapshot: unsupported version in " + path);
    s.nx = detail::get_u32(is);
    s.ny = detail::get_u32(is);
    s.alpha = detail::get_f64(is);
    s.epsilon = detail::get_f64(is);
    s.t = detail::get_f64(is);
    const std::size_t n = std::size_t(s.nx) * std::size_t(s.ny);
    s.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.values[i] = detail::get_f64(is);
    if (!is) throw InputError("snapshot: truncated file " + path);
    return s;
}

/// 8-bit binary PGM ("P5"): u in [-1, 1] maps linearly to [0, 255] with
/// round-half-up (so u = 0 -> 127.5 -> 128), clamped outside the range.
inline void write_pgm(const std::string& path, std::uint32_t nx,
                      std::uint32_t ny, const std::vector<double>& values) {
    if (values.size() != std::size_t(nx) * ny)
        throw InputError("pgm: size mismatch");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InputError("pgm: cannot open " + path);
    os << "P5\n" << nx << " " << ny << "\n255\n";
    std::vector<unsigned char> row(nx);
    for (std::uint32_t j = 0; j < ny; ++j) {
        for (std::uint32_t i = 0; i < nx; ++i) {
            const double u = values[std::size_t(j) * nx + i];
            double p = std::floor((u + 1.0) * 0.5 * 255.0 + 0.5);
            p = p < 0.0 ? 0.0 : (p > 255.0 ? 255.0 : p);
            row[i] = static_cast<unsigned char>(p);
        }
        os.write(reinterpret_cast<const char*>(row.data()), row.size());
    }
    if (!os) throw NumericalError("pgm: write failed for " + path);
}

}  // namespace tfch
