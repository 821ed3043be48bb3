#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "tfch/errors.hpp"
#include "tfch/gamma.hpp"

namespace tfch {

/// Fractional order alpha in (0, 1] with the gamma factors every discrete
/// operator needs. For alpha = 1 the Caputo derivative degenerates to the
/// ordinary derivative and Gamma(1 - alpha) is the pole at 0 (+inf here);
/// only Gamma(2 - alpha) = 1 enters the formulas in that case.
struct FractionalOrder {
    double alpha;
    double gamma_2ma;  // Gamma(2 - alpha)
    double gamma_1ma;  // Gamma(1 - alpha), +inf when alpha == 1

    explicit FractionalOrder(double a)
        : alpha(a), gamma_2ma(gamma_fn(2.0 - a)), gamma_1ma(gamma_fn(1.0 - a)) {
        if (!(a > 0.0) || !(a <= 1.0))
            throw InputError("FractionalOrder: alpha must be in (0, 1]");
    }
};

/// L1 weights a_j = (j+1)^(1-alpha) - j^(1-alpha). a_0 = 1, strictly
/// decreasing to 0 for alpha < 1; identically 0 for j >= 1 at alpha = 1.
struct L1Weights {
    std::vector<double> a;
};

inline L1Weights l1_weights(const FractionalOrder& order, std::size_t n) {
    if (n < 1) throw InputError("l1_weights: n must be >= 1");
    L1Weights w;
    w.a.assign(n, 0.0);
    w.a[0] = 1.0;  // (j+1)^p - j^p at j = 0 for every order
    const double p = 1.0 - order.alpha;
    if (order.alpha < 1.0)
        for (std::size_t j = 1; j < n; ++j)
            w.a[j] = std::pow(double(j + 1), p) - std::pow(double(j), p);
    return w;
}

/// Uniformly sampled scalar signal v(t_j), t_j = j * tau starting at t_0 = 0.
struct ScalarHistory {
    double tau = 0.0;
    std::vector<double> v;

    std::size_t steps() const { return v.empty() ? 0 : v.size() - 1; }
    double t_end() const { return tau * double(steps()); }
};

namespace detail {
inline void check_spacing(const ScalarHistory& hist, double tau) {
    if (hist.v.size() < 2) throw InputError("history needs at least 2 samples");
    if (!(tau > 0.0) ||
        std::abs(hist.tau - tau) > 1e-12 * std::max(1.0, std::abs(tau)))
        throw InputError("history spacing does not match tau");
}
}  // namespace detail

/// L1 product-integration Caputo derivative at the last sample time:
///   (tau^-alpha / Gamma(2-alpha)) * sum_j a_j (v_{n-j} - v_{n-j-1}).
/// Exact for v linear in t; O(tau^(2-alpha)) otherwise.
inline double caputo_l1(const FractionalOrder& order, const ScalarHistory& hist,
                        double tau) {
    detail::check_spacing(hist, tau);
    const std::size_t n = hist.steps();
    const double c0 = std::pow(tau, -order.alpha) / order.gamma_2ma;
    if (order.alpha == 1.0)  // a_j = 0 for j >= 1: backward difference
        return c0 * (hist.v[n] - hist.v[n - 1]);
    const double p = 1.0 - order.alpha;
    double acc = 0.0;
    // j runs oldest-to-newest so the small tail weights accumulate first
    for (std::size_t j = n; j-- > 0;) {
        const double a_j = std::pow(double(j + 1), p) - std::pow(double(j), p);
        acc += a_j * (hist.v[n - j] - hist.v[n - j - 1]);
    }
    return c0 * acc;
}

/// Riemann-Liouville integral I^gamma v at the last sample time, by product
/// integration with piecewise-linear reconstruction (exact on linear v).
/// gamma = 1 reduces to the trapezoidal cumulative integral.
inline double rl_integral(double gamma, const ScalarHistory& hist, double tau) {
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw InputError("rl_integral: gamma must be in (0, 1]");
    detail::check_spacing(hist, tau);
    const std::size_t n = hist.steps();
    double acc = 0.0;
    // panel [t_i, t_{i+1}]; r = t_n - s ranges over [R_{i+1}, R_i]
    for (std::size_t i = 0; i < n; ++i) {
        const double R0 = double(n - i) * tau;
        const double R1 = double(n - i - 1) * tau;
        const double m0 = (std::pow(R0, gamma) - std::pow(R1, gamma)) / gamma;
        const double m1 = R0 * m0 - (std::pow(R0, gamma + 1.0) -
                                     std::pow(R1, gamma + 1.0)) /
                                        (gamma + 1.0);
        acc += hist.v[i] * m0 + (hist.v[i + 1] - hist.v[i]) / tau * m1;
    }
    return acc / gamma_fn(gamma);
}

/// Discrete check of the rescaling identity
///   d^alpha/dt^alpha [v(c t)](t) = c^alpha (d^alpha v)(c t).
/// Reuses the sample values of v: the same values with spacing tau/c are the
/// history of t -> v(c t). Returns (lhs, rhs); they agree to roundoff by
/// construction of the L1 sum, and both approximate the continuous identity.
inline std::pair<double, double> rescale_check(const FractionalOrder& order,
                                               const ScalarHistory& hist,
                                               double c) {
    if (!(c > 0.0)) throw InputError("rescale_check: c must be > 0");
    ScalarHistory scaled{hist.tau / c, hist.v};
    const double lhs = caputo_l1(order, scaled, scaled.tau);
    const double rhs =
        std::pow(c, order.alpha) * caputo_l1(order, hist, hist.tau);
    return {lhs, rhs};
}

}  // namespace tfch
