#pragma once

#include <algorithm>
#include <cmath>

#include "tfch/fracops.hpp"
#include "tfch/parallel.hpp"
#include "tfch/spectral.hpp"

namespace tfch {

enum class MobilityKind { Constant, OneSided };

/// Physical and scheme parameters of the phase-field model.
struct ModelParams {
    double epsilon;
    MobilityKind mobility = MobilityKind::Constant;
    double stabilization_s = 2.0;  // max |F''| on [-1, 1]
    FractionalOrder alpha{1.0};

    ModelParams(double eps, MobilityKind kind, double s, FractionalOrder a)
        : epsilon(eps), mobility(kind), stabilization_s(s), alpha(a) {
        if (!(eps > 0.0)) throw InputError("ModelParams: epsilon must be > 0");
        if (s < 0.0)
            throw InputError("ModelParams: stabilization must be >= 0");
    }

    /// Interface resolution guard (warning condition, not an error).
    bool resolves(const Grid2D& g) const {
        return epsilon >= 2.0 * std::max(g.dx(), g.dy());
    }
};

struct EnergyValue {
    double total = 0.0;
    double per_area = 0.0;
};

/// Double well F(u) = (u^2 - 1)^2 / 4.
inline double potential(double u) {
    const double w = u * u - 1.0;
    return 0.25 * w * w;
}

/// F'(u) = u^3 - u.
inline double potential_deriv(double u) { return u * (u * u - 1.0); }

/// Mobility law: 1 for Constant, max(1 + u, 0) for OneSided (clamped so
/// overshoots below -1 cannot produce negative diffusivity).
inline Field mobility(const Field& u, MobilityKind kind) {
    Field m(u.grid, 1.0);
    if (kind == MobilityKind::OneSided) {
        parallel_for(u.v.size(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i)
                m.v[i] = std::max(1.0 + u.v[i], 0.0);
        });
    }
    return m;
}

/// mu = -eps^2 laplacian(u) + F'(u).
inline Field chemical_potential(const Spectral& sp, const Field& u,
                                const ModelParams& p) {
    Field mu = sp.laplacian(u);
    const double e2 = p.epsilon * p.epsilon;
    parallel_for(u.v.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            mu.v[i] = -e2 * mu.v[i] + potential_deriv(u.v[i]);
    });
    return mu;
}

/// E = sum over cells of [ (eps^2/2) |grad u|^2 + F(u) ] dx dy, gradient
/// spectral.
inline EnergyValue energy(const Spectral& sp, const Field& u,
                          const ModelParams& p) {
    auto [gx, gy] = sp.gradient(u);
    const double e2h = 0.5 * p.epsilon * p.epsilon;
    double total = 0.0;
    for (std::size_t i = 0; i < u.v.size(); ++i) {
        total += e2h * (gx.v[i] * gx.v[i] + gy.v[i] * gy.v[i]) +
                 potential(u.v[i]);
    }
    total *= u.grid.cell_area();
    return {total, total / u.grid.area()};
}

}  // namespace tfch
