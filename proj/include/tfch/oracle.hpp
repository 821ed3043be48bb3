#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include "tfch/chmodel.hpp"
#include "tfch/errors.hpp"
#include "tfch/fft.hpp"
#include "tfch/gamma.hpp"

// Analytic ground truths used to check the discrete operators. Nothing here
// shares discretization code with the L1/SOE machinery or the PDE steppers,
// so agreement between the two is evidence, not tautology.

namespace tfch::oracle {

/// Equilibrium interface profile U(z) = tanh(z / sqrt(2)); solves
/// F'(U) - U'' = 0 with U(0) = 0, U(+-inf) = +-1.
inline double tanh_profile(double z) {
    return std::tanh(z / std::sqrt(2.0));
}

namespace detail {

// adaptive Simpson on [a, b]
inline double simpson(double a, double fa, double fm, double b, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adapt(const std::function<double(double)>& f, double a,
                    double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, fa, flm, m, fm);
    const double right = simpson(m, fm, frm, b, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive-Simpson quadrature to absolute tolerance tol.
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-13) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = detail::simpson(a, fa, fm, b, fb);
    return detail::adapt(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

/// S = int U'(z)^2 dz by quadrature over [-L, L]; the integrand decays like
/// e^(-2 sqrt(2) |z|), so L = 40 leaves a tail far below 1e-14.
inline double compute_S(double L = 40.0) {
    auto integrand = [](double z) {
        const double c = std::cosh(z / std::sqrt(2.0));
        const double up = 1.0 / (std::sqrt(2.0) * c * c);  // U'(z)
        return up * up;
    };
    return integrate(integrand, -L, L, 1e-15);
}

/// Constants of the inner expansion: S = int U'^2 = 2 sqrt(2)/3, the phase
/// jump [U] = 2, and the line tension sigma_int(eps) = S * eps.
struct ProfileConstants {
    static constexpr double S = 0.9428090415820633658677924828064654;
    static constexpr double U_jump = 2.0;
    static constexpr double sigma_int(double eps) { return S * eps; }
};

enum class FracKind { CaputoDeriv, RLIntegral };

/// Closed forms for monomials v(t) = t^beta:
///   Caputo:  Gamma(beta+1)/Gamma(beta+1-alpha) * t^(beta-alpha)
///   RL int:  Gamma(beta+1)/Gamma(beta+1+gamma) * t^(beta+gamma)
inline double frac_power(FracKind kind, double order, double beta, double t) {
    if (!(t > 0.0)) throw InputError("frac_power: t must be > 0");
    if (kind == FracKind::CaputoDeriv) {
        if (!(order > 0.0 && order <= 1.0))
            throw InputError("frac_power: alpha must be in (0, 1]");
        if (beta < 1.0) throw InputError("frac_power: beta must be >= 1");
        return gamma_fn(beta + 1.0) / gamma_fn(beta + 1.0 - order) *
               std::pow(t, beta - order);
    }
    if (!(order > 0.0 && order <= 1.0))
        throw InputError("frac_power: gamma must be in (0, 1]");
    if (beta < 0.0) throw InputError("frac_power: beta must be >= 0");
    return gamma_fn(beta + 1.0) / gamma_fn(beta + 1.0 + order) *
           std::pow(t, beta + order);
}

/// Direct quadrature of the Caputo definition
///   (1/Gamma(1-alpha)) int_0^t v'(s) (t-s)^(-alpha) ds.
/// The endpoint singularity is removed by the substitution r = (t-s)^(1-alpha)
/// and the remaining integral is done by dyadically graded Gauss panels.
/// v' is taken from v by a 4th-order central difference.
inline double brute_force_caputo(double alpha,
                                 const std::function<double(double)>& v,
                                 double t, int n_quad = 4000) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InputError("brute_force_caputo: alpha must be in (0, 1)");
    if (!(t > 0.0)) throw InputError("brute_force_caputo: t must be > 0");
    if (n_quad < 1000) throw InputError("brute_force_caputo: n_quad >= 1000");

    auto dv = [&](double s) {
        const double h = 1e-5 * std::max(1.0, std::abs(t));
        return (-v(s + 2.0 * h) + 8.0 * v(s + h) - 8.0 * v(s - h) +
                v(s - 2.0 * h)) /
               (12.0 * h);
    };

    // After r = (t-s)^(1-alpha):  int = 1/(1-alpha) * int_0^{t^(1-alpha)}
    // v'(t - r^(1/(1-alpha))) dr, integrand continuous at r = 0.
    const double p = 1.0 - alpha;
    const double R = std::pow(t, p);
    auto g = [&](double r) { return dv(t - std::pow(r, 1.0 / p)); };

    static constexpr int half = 8;  // 16-point Gauss-Legendre
    static constexpr double gx[half] = {
        0.0950125098376374401853193, 0.2816035507792589132304605,
        0.4580167776572273863424194, 0.6178762444026437484466718,
        0.7554044083550030338951012, 0.8656312023878317438804679,
        0.9445750230732325760779884, 0.9894009349916499325961542,
    };
    static constexpr double gw[half] = {
        0.1894506104550684962853967, 0.1826034150449235888667637,
        0.1691565193950025381893121, 0.1495959888165767320815017,
        0.1246289712555338720524763, 0.0951585116824927848099251,
        0.0622535239386478928628438, 0.0271524594117540948517806,
    };

    const int panels = std::max(16, n_quad / 16);
    double acc = 0.0;
    // dyadic grading toward r = 0 where the integrand loses smoothness
    double hi = R;
    for (int pnl = 0; pnl < panels; ++pnl) {
        const double lo = (pnl == panels - 1) ? 0.0 : hi * 0.5;
        const double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
        for (int q = 0; q < half; ++q) {
            acc += hw * gw[q] * (g(mid + hw * gx[q]) + g(mid - hw * gx[q]));
        }
        hi = lo;
        if (hi == 0.0) break;
    }
    return acc / (p * gamma_fn(1.0 - alpha));
}

/// One stabilized backward-Euler step of the classical (alpha = 1) CH
/// equation with unit mobility:
///   (1/tau + eps^2 k^4 + s k^2) u^n = u^{n-1}/tau - k^2 F'(u^{n-1})^
///                                     + s k^2 u^{n-1}.
/// Written directly against the transform (own wavenumber bookkeeping, full
/// Nyquist symbol) so the alpha -> 1 limit of the fractional stepper has an
/// independent reference.
inline Field classical_ch_step(const Field& u, const ModelParams& p,
                               double tau) {
    if (p.mobility != MobilityKind::Constant)
        throw InputError("classical_ch_step: constant mobility only");
    const Grid2D& g = u.grid;
    Transform tf(g);

    Field fp(g);
    for (std::size_t i = 0; i < u.v.size(); ++i)
        fp.v[i] = potential_deriv(u.v[i]);

    SpectrumField U = tf.forward(u);
    SpectrumField Fp = tf.forward(fp);

    const double two_pi = 6.283185307179586476925287;
    const double e2 = p.epsilon * p.epsilon;
    const double s = p.stabilization_s;
    const std::size_t nxh = g.nx / 2 + 1;
    for (std::size_t j = 0; j < g.ny; ++j) {
        const double jj =
            (j <= g.ny / 2) ? double(j) : double(j) - double(g.ny);
        const double ky = two_pi * jj / g.ly;
        for (std::size_t m = 0; m < nxh; ++m) {
            const double kx = two_pi * double(m) / g.lx;
            const double kk = kx * kx + ky * ky;
            const std::size_t idx = j * nxh + m;
            const std::complex<double> rhs =
                U.c[idx] / tau - kk * Fp.c[idx] + s * kk * U.c[idx];
            U.c[idx] = rhs / (1.0 / tau + e2 * kk * kk + s * kk);
        }
    }
    Field out(g);
    tf.inverse_destructive(U.c.data(), out);
    return out;
}

}  // namespace tfch::oracle
