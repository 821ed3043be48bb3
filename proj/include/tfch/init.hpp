#pragma once

#include <cmath>
#include <cstdint>

#include "tfch/errors.hpp"
#include "tfch/field.hpp"
#include "tfch/prng.hpp"

namespace tfch {

enum class InitKind { Random, Circle, Tanh1D };

struct InitConfig {
    InitKind kind = InitKind::Random;
    std::uint64_t seed = 0;
    double mean = 0.0;
    double amplitude = 0.05;
    double radius = -1.0;    // < 0: lx/4
    double cx = -1.0, cy = -1.0;  // < 0: domain center
};

/// Seeded initial conditions.
///  random: u = mean + amplitude (2 xi - 1), one splitmix64 draw per cell in
///          row-major order (bit-exact across platforms)
///  circle: u = tanh((R - |x - c|) / (sqrt2 eps)), +1 phase inside
///  tanh1d: two-interface stripe, +1 between cx - R and cx + R
inline Field init_field(const InitConfig& cfg, const Grid2D& g, double eps) {
    Field u(g);
    const double cx = cfg.cx >= 0.0 ? cfg.cx : 0.5 * g.lx;
    const double cy = cfg.cy >= 0.0 ? cfg.cy : 0.5 * g.ly;
    const double R = cfg.radius > 0.0 ? cfg.radius : 0.25 * g.lx;
    const double c = std::sqrt(2.0) * eps;

    switch (cfg.kind) {
        case InitKind::Random: {
            SplitMix64 rng(cfg.seed);
            for (double& v : u.v)
                v = cfg.mean + cfg.amplitude * (2.0 * rng.next_double() - 1.0);
            break;
        }
        case InitKind::Circle: {
            for (std::size_t j = 0; j < g.ny; ++j) {
                const double y = double(j) * g.dy();
                for (std::size_t i = 0; i < g.nx; ++i) {
                    const double x = double(i) * g.dx();
                    const double r = std::hypot(x - cx, y - cy);
                    u.at(i, j) = std::tanh((R - r) / c);
                }
            }
            break;
        }
        case InitKind::Tanh1D: {
            for (std::size_t j = 0; j < g.ny; ++j)
                for (std::size_t i = 0; i < g.nx; ++i) {
                    const double x = double(i) * g.dx();
                    u.at(i, j) = std::tanh((x - (cx - R)) / c) +
                                 std::tanh(((cx + R) - x) / c) - 1.0;
                }
            break;
        }
        default:
            throw InputError("init_field: invalid kind");
    }
    return u;
}

}  // namespace tfch
