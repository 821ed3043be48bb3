#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "tfch/fft.hpp"
#include "tfch/field.hpp"
#include "tfch/parallel.hpp"

namespace tfch {

/// Spectral differential operators on one grid. Wavenumbers follow the usual
/// FFT ordering; first-derivative multipliers vanish on the Nyquist
/// column/row so odd derivatives of real fields stay real and
/// divergence(gradient(f)) == laplacian(f) holds exactly. The unreduced
/// |k|^2 symbol (Nyquist included) is exposed separately for implicit
/// solvers that want the full damping.
class Spectral {
  public:
    explicit Spectral(const Grid2D& g) : grid_(g), tf_(g) {
        const std::size_t nxh = g.nx / 2 + 1;
        const double two_pi = 6.283185307179586476925287;
        kx_.resize(nxh);
        kx_d_.resize(nxh);
        for (std::size_t m = 0; m < nxh; ++m) {
            kx_[m] = two_pi * double(m) / g.lx;
            kx_d_[m] = (2 * m == g.nx) ? 0.0 : kx_[m];
        }
        ky_.resize(g.ny);
        ky_d_.resize(g.ny);
        for (std::size_t j = 0; j < g.ny; ++j) {
            const double jj = (j <= g.ny / 2) ? double(j)
                                              : double(j) - double(g.ny);
            ky_[j] = two_pi * jj / g.ly;
            ky_d_[j] = (g.ny > 1 && 2 * j == g.ny) ? 0.0 : ky_[j];
        }
        k2_.resize(g.spectrum_size());
        k2_op_.resize(g.spectrum_size());
        keep_.resize(g.spectrum_size());
        for (std::size_t j = 0; j < g.ny; ++j) {
            for (std::size_t m = 0; m < nxh; ++m) {
                const std::size_t idx = j * nxh + m;
                k2_[idx] = kx_[m] * kx_[m] + ky_[j] * ky_[j];
                k2_op_[idx] = kx_d_[m] * kx_d_[m] + ky_d_[j] * ky_d_[j];
                // 2/3 rule: keep |m| <= nx/3, |j~| <= ny/3
                const double jj = (j <= g.ny / 2)
                                      ? double(j)
                                      : double(j) - double(g.ny);
                const bool ok_x = 3 * m <= g.nx;
                const bool ok_y =
                    g.ny == 1 || 3.0 * std::abs(jj) <= double(g.ny);
                keep_[idx] = (ok_x && ok_y) ? 1.0 : 0.0;
            }
        }
    }

    const Grid2D& grid() const { return grid_; }
    const Transform& transform() const { return tf_; }
    const std::vector<double>& k_squared() const { return k2_; }
    const std::vector<double>& k_squared_op() const { return k2_op_; }
    const std::vector<double>& dealias_mask() const { return keep_; }
    double kx(std::size_t m) const { return kx_[m]; }
    double ky(std::size_t j) const { return ky_[j]; }

    SpectrumField forward(const Field& f) const { return tf_.forward(f); }
    Field inverse(const SpectrumField& F) const { return tf_.inverse(F); }

    /// Zero every mode outside the 2/3 band.
    void dealias(SpectrumField& F) const {
        for (std::size_t i = 0; i < F.c.size(); ++i) F.c[i] *= keep_[i];
    }

    Field laplacian(const Field& f) const {
        SpectrumField F = tf_.forward(f);
        for (std::size_t i = 0; i < F.c.size(); ++i) F.c[i] *= -k2_op_[i];
        Field out(grid_);
        tf_.inverse_destructive(F.c.data(), out);
        return out;
    }

    std::pair<Field, Field> gradient(const Field& f) const {
        SpectrumField F = tf_.forward(f);
        SpectrumField Gx(grid_), Gy(grid_);
        apply_grad(F, Gx, Gy);
        Field gx(grid_), gy(grid_);
        tf_.inverse_destructive(Gx.c.data(), gx);
        tf_.inverse_destructive(Gy.c.data(), gy);
        return {std::move(gx), std::move(gy)};
    }

    Field divergence(const Field& gx, const Field& gy) const {
        SpectrumField Gx = tf_.forward(gx);
        SpectrumField Gy = tf_.forward(gy);
        const std::size_t nxh = grid_.nx / 2 + 1;
        for (std::size_t j = 0; j < grid_.ny; ++j)
            for (std::size_t m = 0; m < nxh; ++m) {
                const std::size_t idx = j * nxh + m;
                Gx.c[idx] = std::complex<double>(0.0, kx_d_[m]) * Gx.c[idx] +
                            std::complex<double>(0.0, ky_d_[j]) * Gy.c[idx];
            }
        Field out(grid_);
        tf_.inverse_destructive(Gx.c.data(), out);
        return out;
    }

    /// div(m grad mu) with the products formed pointwise in physical space.
    /// With dealias on, both factors of each product and the final
    /// divergence are filtered by the 2/3 rule.
    Field variable_flux_div(const Field& m, const Field& mu,
                            bool dealias_on) const {
        for (double x : m.v)
            if (x < 0.0)
                throw InputError("variable_flux_div: mobility must be >= 0");

        SpectrumField Mu = tf_.forward(mu);
        if (dealias_on) dealias(Mu);
        SpectrumField Gx(grid_), Gy(grid_);
        apply_grad(Mu, Gx, Gy);
        Field gx(grid_), gy(grid_);
        tf_.inverse_destructive(Gx.c.data(), gx);
        tf_.inverse_destructive(Gy.c.data(), gy);

        Field mf = m;
        if (dealias_on) {
            SpectrumField M = tf_.forward(m);
            dealias(M);
            tf_.inverse_destructive(M.c.data(), mf);
        }

        parallel_for(grid_.cells(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                gx.v[i] *= mf.v[i];
                gy.v[i] *= mf.v[i];
            }
        });

        SpectrumField Px = tf_.forward(gx);
        SpectrumField Py = tf_.forward(gy);
        const std::size_t nxh = grid_.nx / 2 + 1;
        for (std::size_t j = 0; j < grid_.ny; ++j)
            for (std::size_t m2 = 0; m2 < nxh; ++m2) {
                const std::size_t idx = j * nxh + m2;
                Px.c[idx] = std::complex<double>(0.0, kx_d_[m2]) * Px.c[idx] +
                            std::complex<double>(0.0, ky_d_[j]) * Py.c[idx];
            }
        if (dealias_on) dealias(Px);
        Field out(grid_);
        tf_.inverse_destructive(Px.c.data(), out);
        return out;
    }

  private:
    void apply_grad(const SpectrumField& F, SpectrumField& Gx,
                    SpectrumField& Gy) const {
        const std::size_t nxh = grid_.nx / 2 + 1;
        for (std::size_t j = 0; j < grid_.ny; ++j)
            for (std::size_t m = 0; m < nxh; ++m) {
                const std::size_t idx = j * nxh + m;
                Gx.c[idx] = std::complex<double>(0.0, kx_d_[m]) * F.c[idx];
                Gy.c[idx] = std::complex<double>(0.0, ky_d_[j]) * F.c[idx];
            }
    }

    Grid2D grid_;
    Transform tf_;
    std::vector<double> kx_, ky_, kx_d_, ky_d_;
    std::vector<double> k2_, k2_op_, keep_;
};

}  // namespace tfch
