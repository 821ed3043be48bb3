#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "tfch/grid.hpp"

namespace tfch {

/// Real scalar field on a periodic grid, row-major with x fastest.
struct Field {
    Grid2D grid;
    std::vector<double> v;

    explicit Field(const Grid2D& g) : grid(g), v(g.cells(), 0.0) {}
    Field(const Grid2D& g, double fill) : grid(g), v(g.cells(), fill) {}

    double& at(std::size_t i, std::size_t j) { return v[j * grid.nx + i]; }
    double at(std::size_t i, std::size_t j) const {
        return v[j * grid.nx + i];
    }
};

/// Unnormalized forward-transform output of a real field: ny x (nx/2 + 1)
/// complex coefficients, the x half-plane of the conjugate-symmetric
/// spectrum. Coefficient (m, j) carries wavenumber (2 pi m / lx, 2 pi j~ /
/// ly) with j~ = j for j <= ny/2 and j - ny otherwise.
struct SpectrumField {
    Grid2D grid;
    std::vector<std::complex<double>> c;

    explicit SpectrumField(const Grid2D& g)
        : grid(g), c(g.spectrum_size(), 0.0) {}

    std::complex<double>& at(std::size_t m, std::size_t j) {
        return c[j * (grid.nx / 2 + 1) + m];
    }
    std::complex<double> at(std::size_t m, std::size_t j) const {
        return c[j * (grid.nx / 2 + 1) + m];
    }
};

inline double field_mean(const Field& f) {
    double s = 0.0;
    for (double x : f.v) s += x;
    return s / double(f.v.size());
}

inline double field_max_abs(const Field& f) {
    double m = 0.0;
    for (double x : f.v) m = std::max(m, std::abs(x));
    return m;
}

inline double max_abs_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.v.size(); ++i)
        m = std::max(m, std::abs(a.v[i] - b.v[i]));
    return m;
}

inline bool all_finite(const Field& f) {
    return std::all_of(f.v.begin(), f.v.end(),
                       [](double x) { return std::isfinite(x); });
}

}  // namespace tfch
