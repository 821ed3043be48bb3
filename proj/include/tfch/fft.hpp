#pragma once

#include <complex>
#include <vector>

#include <fftw3.h>

#include "tfch/errors.hpp"
#include "tfch/field.hpp"

namespace tfch {

/// FFTW r2c/c2r transform pair for one grid. Forward is the plain
/// unnormalized DFT sum; inverse divides by nx*ny, so inverse(forward(f)) ==
/// f to roundoff. Plans use FFTW_ESTIMATE (deterministic planning) and
/// FFTW_UNALIGNED so they can execute on any caller buffer.
///
/// Construct from one thread; afterwards the plans are immutable and a const
/// Transform is safe to share across threads (each call owns its scratch).
class Transform {
  public:
    explicit Transform(const Grid2D& g) : grid_(g) {
        const int ny = int(g.ny), nx = int(g.nx);
        std::vector<double> r(g.cells());
        std::vector<std::complex<double>> c(g.spectrum_size());
        fwd_ = fftw_plan_dft_r2c_2d(ny, nx, r.data(),
                                    reinterpret_cast<fftw_complex*>(c.data()),
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
        bwd_ = fftw_plan_dft_c2r_2d(ny, nx,
                                    reinterpret_cast<fftw_complex*>(c.data()),
                                    r.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (fwd_ == nullptr || bwd_ == nullptr)
            throw NumericalError("Transform: FFTW planning failed");
    }

    Transform(const Transform&) = delete;
    Transform& operator=(const Transform&) = delete;

    ~Transform() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }

    const Grid2D& grid() const { return grid_; }

    void forward(const Field& f, SpectrumField& out) const {
        check(f.grid, out.grid);
        // r2c out-of-place leaves the input intact
        fftw_execute_dft_r2c(
            fwd_, const_cast<double*>(f.v.data()),
            reinterpret_cast<fftw_complex*>(out.c.data()));
    }

    SpectrumField forward(const Field& f) const {
        SpectrumField out(grid_);
        forward(f, out);
        return out;
    }

    void inverse(const SpectrumField& F, Field& out) const {
        check(out.grid, F.grid);
        // c2r destroys its input; run on a scratch copy
        std::vector<std::complex<double>> scratch(F.c);
        fftw_execute_dft_c2r(bwd_,
                             reinterpret_cast<fftw_complex*>(scratch.data()),
                             out.v.data());
        const double scale = 1.0 / double(grid_.cells());
        for (double& x : out.v) x *= scale;
    }

    Field inverse(const SpectrumField& F) const {
        Field out(grid_);
        inverse(F, out);
        return out;
    }

    /// In-place c2r on a caller scratch buffer (contents destroyed),
    /// normalized. Saves the copy when the caller no longer needs the
    /// coefficients.
    void inverse_destructive(std::complex<double>* scratch, Field& out) const {
        fftw_execute_dft_c2r(bwd_,
                             reinterpret_cast<fftw_complex*>(scratch),
                             out.v.data());
        const double scale = 1.0 / double(grid_.cells());
        for (double& x : out.v) x *= scale;
    }

  private:
    static void check(const Grid2D& a, const Grid2D& b) {
        if (!(a == b)) throw InputError("Transform: grid shape mismatch");
    }

    Grid2D grid_;
    fftw_plan fwd_, bwd_;
};

}  // namespace tfch
