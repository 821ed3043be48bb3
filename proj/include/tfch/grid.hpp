#pragma once

#include <cstddef>

#include "tfch/errors.hpp"

namespace tfch {

/// Periodic rectangular grid. ny == 1 is the 1D special case (ky == 0).
/// nx and ny must be even (or ny == 1): the half-spectrum bookkeeping and the
/// Nyquist conventions assume it.
struct Grid2D {
    std::size_t nx = 0, ny = 0;
    double lx = 0.0, ly = 0.0;

    Grid2D(std::size_t nx_, std::size_t ny_, double lx_, double ly_)
        : nx(nx_), ny(ny_), lx(lx_), ly(ly_) {
        if (nx < 8 || (ny != 1 && ny < 8))
            throw InputError("Grid2D: nx >= 8 and ny >= 8 (or ny == 1)");
        if (nx % 2 != 0 || (ny != 1 && ny % 2 != 0))
            throw InputError("Grid2D: nx, ny must be even");
        if (!(lx > 0.0) || !(ly > 0.0))
            throw InputError("Grid2D: lx, ly must be > 0");
    }

    double dx() const { return lx / double(nx); }
    double dy() const { return ly / double(ny); }
    double cell_area() const { return dx() * dy(); }
    double area() const { return lx * ly; }
    std::size_t cells() const { return nx * ny; }
    std::size_t spectrum_size() const { return ny * (nx / 2 + 1); }

    bool operator==(const Grid2D&) const = default;
};

}  // namespace tfch
