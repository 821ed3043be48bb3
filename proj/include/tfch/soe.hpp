#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "tfch/errors.hpp"
#include "tfch/fracops.hpp"
#include "tfch/gamma.hpp"

namespace tfch {

/// Sum-of-exponentials surrogate for the kernel t^-alpha on [t_min, t_max]:
///   t^-alpha  ~  sum_i w_i exp(-s_i t),  sup rel. error <= tol.
///
/// Built from the Laplace representation
///   t^-alpha = (1/Gamma(alpha)) * int_0^inf s^(alpha-1) e^(-s t) ds
/// discretized by fixed-order Gauss-Legendre on dyadic panels [2^j, 2^(j+1)].
/// The residual tail below the lowest panel varies by less than tol over the
/// window and is folded into one constant (s = 0) mode. Mode count satisfies
/// modes <= C * log(t_max/t_min) * log(1/tol) with C = 12 (natural logs,
/// both factors clamped below at 2).
struct SoeKernel {
    double alpha = 0.0;
    double t_min = 0.0, t_max = 0.0;
    double tol = 0.0;            // requested
    double achieved_error = 0.0; // measured sup relative error
    std::vector<double> w, s;

    std::size_t modes() const { return w.size(); }

    double eval(double t) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * std::exp(-s[i] * t);
        return acc;
    }
};

namespace detail {

// 12-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; mirrored).
inline constexpr int gl_half = 6;
inline constexpr double gl_x[gl_half] = {
    0.1252334085114689154724414, 0.3678314989981801937526915,
    0.5873179542866174472967024, 0.7699026741943046870368938,
    0.9041172563704748566784659, 0.9815606342467192506905491,
};
inline constexpr double gl_w[gl_half] = {
    0.2491470458134027850005624, 0.2334925365383548087608499,
    0.2031674267230659217490645, 0.1600783285433462263346525,
    0.1069393259953184309602547, 0.0471753363865118271946160,
};

inline double soe_measure_error(const SoeKernel& k, int samples) {
    // dense log-spaced sampling of the relative error
    double worst = 0.0;
    const double lr = std::log(k.t_max / k.t_min);
    for (int i = 0; i < samples; ++i) {
        const double t = k.t_min * std::exp(lr * double(i) / double(samples - 1));
        const double exact = std::pow(t, -k.alpha);
        const double err = std::abs(k.eval(t) - exact) / exact;
        worst = std::max(worst, err);
    }
    return worst;
}

inline SoeKernel soe_attempt(double alpha, double t_min, double t_max,
                             double tol, double pad, int split) {
    SoeKernel k;
    k.alpha = alpha;
    k.t_min = t_min;
    k.t_max = t_max;
    k.tol = tol;

    // Panel range: e^(-s t_min) must be negligible past s_max, and the
    // below-s_min tail must be flat enough over [0, t_max] for the constant
    // mode to absorb it (error ~ (s_min t_max)^(1+alpha)).
    const double L = std::log(1.0 / tol);
    const double s_max = pad * (L + 10.0) / t_min;
    const double s_min = std::pow(tol / pad, 1.0 / (1.0 + alpha)) / t_max;
    const int j_lo = int(std::floor(std::log2(s_min)));
    const int j_hi = int(std::ceil(std::log2(s_max)));

    const double inv_gamma_a = 1.0 / gamma_fn(alpha);

    // constant mode for the [0, 2^j_lo] tail of the Laplace integral
    const double s_lo = std::ldexp(1.0, j_lo);
    k.w.push_back(inv_gamma_a * std::pow(s_lo, alpha) / alpha);
    k.s.push_back(0.0);

    for (int j = j_lo; j < j_hi; ++j) {
        const double a = std::ldexp(1.0, j), b = std::ldexp(2.0, j);
        const double sub = (b - a) / double(split);
        for (int p = 0; p < split; ++p) {
            const double mid = a + (double(p) + 0.5) * sub, half = 0.5 * sub;
            for (int q = 0; q < gl_half; ++q) {
                for (int sign = -1; sign <= 1; sign += 2) {
                    const double node = mid + sign * half * gl_x[q];
                    const double weight = half * gl_w[q] * inv_gamma_a *
                                          std::pow(node, alpha - 1.0);
                    k.w.push_back(weight);
                    k.s.push_back(node);
                }
            }
        }
    }

    // prune modes too small to matter anywhere on the window
    const double scale = std::pow(t_max, -alpha);
    std::vector<double> w2, s2;
    for (std::size_t i = 0; i < k.w.size(); ++i) {
        if (k.w[i] * std::exp(-k.s[i] * t_min) >= 1e-18 * scale) {
            w2.push_back(k.w[i]);
            s2.push_back(k.s[i]);
        }
    }
    k.w = std::move(w2);
    k.s = std::move(s2);

    k.achieved_error = soe_measure_error(k, 2000);
    return k;
}

}  // namespace detail

inline SoeKernel soe_build(const FractionalOrder& order, double t_min,
                           double t_max, double tol) {
    if (!(t_min > 0.0) || !(t_min < t_max))
        throw InputError("soe_build: need 0 < t_min < t_max");
    if (!(tol >= 1e-12 && tol <= 1e-3))
        throw InputError("soe_build: tol must be in [1e-12, 1e-3]");
    if (order.alpha == 1.0) {
        // kernel t^-1 never enters the L1 history at alpha = 1 (far weights
        // vanish); an empty kernel keeps the fast path exact.
        SoeKernel k;
        k.alpha = 1.0;
        k.t_min = t_min;
        k.t_max = t_max;
        k.tol = tol;
        return k;
    }
    double best = std::numeric_limits<double>::infinity();
    for (auto [pad, split] : {std::pair{4.0, 1}, {4.0, 2}, {16.0, 2},
                              {16.0, 4}, {64.0, 4}}) {
        SoeKernel k =
            detail::soe_attempt(order.alpha, t_min, t_max, tol, pad, split);
        if (k.achieved_error <= tol) return k;
        best = std::min(best, k.achieved_error);
    }
    throw SoeBuildError(
        "soe_build: tolerance unattainable, achieved " + std::to_string(best),
        best);
}

/// Per-mode exponential accumulators for one scalar history advanced on a
/// uniform grid with step tau. q_i tracks
///   int_0^{t_{n-1}} v'(s) exp(-s_i (t_n - s)) ds
/// with piecewise-linear v, via one multiply-add per mode per step.
struct SoeScalarState {
    double tau = 0.0;
    std::vector<double> decay;  // exp(-s_i tau)
    std::vector<double> gain;   // per-step injection factor
    std::vector<double> q;

    SoeScalarState() = default;
    SoeScalarState(const SoeKernel& kernel, double step) : tau(step) {
        decay.resize(kernel.modes());
        gain.resize(kernel.modes());
        q.assign(kernel.modes(), 0.0);
        for (std::size_t i = 0; i < kernel.modes(); ++i) {
            const double st = kernel.s[i] * step;
            const double d = std::exp(-st);
            decay[i] = d;
            // int_{t_{n-1}}^{t_n} e^{-s (t_{n+1}-s)} ds / tau = (d - d^2)/(s tau)
            gain[i] = st > 1e-8 ? d * (1.0 - d) / st : d * (1.0 - 0.5 * st);
        }
    }
};

/// One step of the fast L1 evaluation: returns the Caputo value at t_n from
/// the local (j = 0) term plus the SOE-compressed far history, then advances
/// the accumulators so the next call sees history up to t_n.
inline double caputo_fast_step(const SoeKernel& kernel, SoeScalarState& state,
                               double v_new, double v_prev, double tau) {
    const double dv = v_new - v_prev;
    const double c0 =
        std::pow(tau, -kernel.alpha) / gamma_fn(2.0 - kernel.alpha);
    double far = 0.0;
    if (kernel.alpha < 1.0) {
        double acc = 0.0;
        for (std::size_t i = 0; i < kernel.modes(); ++i)
            acc += kernel.w[i] * state.q[i];
        far = acc / gamma_fn(1.0 - kernel.alpha);
    }
    for (std::size_t i = 0; i < kernel.modes(); ++i)
        state.q[i] = state.decay[i] * state.q[i] + state.gain[i] * dv;
    return c0 * dv + far;
}

}  // namespace tfch
