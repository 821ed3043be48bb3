#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "tfch/errors.hpp"

namespace tfch {

struct GmresResult {
    std::size_t iterations = 0;
    double residual = 0.0;  // relative to ||b||
};

namespace detail {
inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}
inline double nrm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }
}  // namespace detail

/// Restarted GMRES with right preconditioning: solves A x = b by minimizing
/// the true residual over the Krylov space of A P^-1. apply_a(in, out) and
/// apply_pinv(in, out) must be linear. Throws KrylovError if the relative
/// residual does not reach tol within maxiter matvecs.
template <class MatVec, class Precond>
GmresResult gmres_right(const MatVec& apply_a, const Precond& apply_pinv,
                        const std::vector<double>& b, std::vector<double>& x,
                        double tol, std::size_t maxiter,
                        std::size_t restart = 40) {
    using vec = std::vector<double>;
    const std::size_t n = b.size();
    const double bnorm = detail::nrm2(b);
    if (bnorm == 0.0) {
        x.assign(n, 0.0);
        return {0, 0.0};
    }

    vec r(n), w(n), z(n);
    std::size_t iters = 0;

    auto residual_norm = [&]() {
        apply_a(x, r);
        for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
        return detail::nrm2(r);
    };

    double beta = residual_norm();
    if (beta <= tol * bnorm) return {0, beta / bnorm};

    while (true) {
        const std::size_t m = restart;
        std::vector<vec> V;
        V.reserve(m + 1);
        V.emplace_back(r);
        for (auto& v : V[0]) v /= beta;

        std::vector<vec> H(m + 1, vec(m, 0.0));
        vec cs(m, 0.0), sn(m, 0.0), g(m + 1, 0.0);
        g[0] = beta;

        std::size_t j = 0;
        bool converged = false;
        for (; j < m; ++j) {
            apply_pinv(V[j], z);
            apply_a(z, w);
            ++iters;
            for (std::size_t i = 0; i <= j; ++i) {
                const double h = detail::dot(w, V[i]);
                H[i][j] = h;
                for (std::size_t p = 0; p < n; ++p) w[p] -= h * V[i][p];
            }
            H[j + 1][j] = detail::nrm2(w);
            const bool breakdown = H[j + 1][j] == 0.0;
            if (!breakdown) {
                V.emplace_back(w);
                for (auto& v : V[j + 1]) v /= H[j + 1][j];
            }
            // apply accumulated Givens rotations, then a new one
            for (std::size_t i = 0; i < j; ++i) {
                const double t = cs[i] * H[i][j] + sn[i] * H[i + 1][j];
                H[i + 1][j] = -sn[i] * H[i][j] + cs[i] * H[i + 1][j];
                H[i][j] = t;
            }
            const double denom = std::hypot(H[j][j], H[j + 1][j]);
            cs[j] = H[j][j] / denom;
            sn[j] = H[j + 1][j] / denom;
            H[j][j] = denom;
            H[j + 1][j] = 0.0;
            g[j + 1] = -sn[j] * g[j];
            g[j] = cs[j] * g[j];

            if (std::abs(g[j + 1]) <= tol * bnorm || iters >= maxiter ||
                breakdown) {
                ++j;
                converged = true;
                break;
            }
        }
        if (!converged) j = m;

        // back substitution H y = g on the leading j x j block
        vec y(j, 0.0);
        for (std::size_t ii = j; ii-- > 0;) {
            double s = g[ii];
            for (std::size_t kk = ii + 1; kk < j; ++kk) s -= H[ii][kk] * y[kk];
            y[ii] = s / H[ii][ii];
        }
        // x += P^-1 (V y)
        vec u(n, 0.0);
        for (std::size_t kk = 0; kk < j; ++kk)
            for (std::size_t p = 0; p < n; ++p) u[p] += y[kk] * V[kk][p];
        apply_pinv(u, z);
        for (std::size_t p = 0; p < n; ++p) x[p] += z[p];

        beta = residual_norm();
        if (beta <= tol * bnorm) return {iters, beta / bnorm};
        if (iters >= maxiter)
            throw KrylovError("gmres: no convergence within maxiter",
                              beta / bnorm);
    }
}

}  // namespace tfch
