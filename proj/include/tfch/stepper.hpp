#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "tfch/chmodel.hpp"
#include "tfch/fracops.hpp"
#include "tfch/gmres.hpp"
#include "tfch/soe.hpp"
#include "tfch/spectral.hpp"

namespace tfch {

enum class HistoryMode { Direct, Soe };
enum class DealiasMode { Auto, On, Off };

struct SchemeConfig {
    double tau = 1e-3;
    double t_end = 1.0;
    HistoryMode history_mode = HistoryMode::Soe;
    double soe_tol = 1e-9;
    double krylov_tol = 1e-10;
    std::size_t krylov_maxiter = 400;
    DealiasMode dealias = DealiasMode::Auto;

    void validate() const {
        if (!(tau > 0.0)) throw InputError("SchemeConfig: tau must be > 0");
        if (t_end < 0.0) throw InputError("SchemeConfig: t_end must be >= 0");
        if (t_end > 0.0 && tau > t_end * (1.0 + 1e-12))
            throw InputError("SchemeConfig: tau must be <= t_end");
        if (!(krylov_tol > 0.0 && krylov_tol <= 1e-8))
            throw InputError("SchemeConfig: krylov_tol must be <= 1e-8");
    }
};

/// Per-wavenumber record of the past, either every spectrum (Direct) or
/// SOE-compressed accumulators plus the previous spectrum.
struct HistoryStore {
    using Spectrum = std::vector<std::complex<double>>;

    HistoryMode mode = HistoryMode::Direct;
    double soe_tol = 1e-9;

    // Direct: spectra of u^0 .. u^{n-1}
    std::vector<Spectrum> past;

    // SOE: kernel, per-mode recurrence factors, accumulators q[idx*M + l]
    SoeKernel kernel;
    std::vector<double> decay, gain;
    Spectrum q;     // size = spectrum_size * modes
    Spectrum prev;  // spectrum of u^{n-1}

    std::size_t length() const { return past.size(); }
};

/// Trajectory state: the current field, the history behind it, and the step
/// counter. tau and the model parameters ride along for introspection.
struct SolverState {
    Field u;
    HistoryStore history;
    std::size_t step_index = 0;
    double tau = 0.0;
    ModelParams params;
    double initial_mean = 0.0;

    double time() const { return tau * double(step_index); }
};

/// L1-in-time, semi-implicit stabilized pseudo-spectral stepper for
///   d^alpha/dt^alpha u = div(M(u) grad mu),  mu = -eps^2 lap u + F'(u).
///
/// Per step, with c0 = tau^-alpha / Gamma(2-alpha) and H^n the L1 history of
/// the j >= 1 terms, the constant-mobility update solves per wavenumber
///   (c0 + eps^2 k^4 + s k^2) u^n = c0 u^{n-1} - H^n - k^2 F'(u^{n-1})^
///                                  + s k^2 u^{n-1}
/// (full |k|^2 symbol, Nyquist included, so the implicit damping covers the
/// whole spectrum). The one-sided path freezes M at max(1 + u^{n-1}, 0) and
/// solves the variable-coefficient system with preconditioned GMRES.
class Solver {
  public:
    Solver(const Grid2D& grid, const ModelParams& params,
           const SchemeConfig& config)
        : sp_(grid), params_(params), config_(config) {
        config_.validate();
        weights_ = l1_weights(params_.alpha,
                              std::max<std::size_t>(total_steps(), 1));
        c0_ = std::pow(config_.tau, -params_.alpha.alpha) /
              params_.alpha.gamma_2ma;
    }

    const Spectral& spectral() const { return sp_; }
    const ModelParams& params() const { return params_; }
    const SchemeConfig& config() const { return config_; }
    std::size_t total_steps() const {
        return std::size_t(std::llround(config_.t_end / config_.tau));
    }
    bool dealias_on() const {
        switch (config_.dealias) {
            case DealiasMode::On: return true;
            case DealiasMode::Off: return false;
            default: return params_.mobility == MobilityKind::OneSided;
        }
    }

    SolverState initial_state(const Field& u0) const {
        if (!(u0.grid == sp_.grid()))
            throw InputError("Solver: initial field grid mismatch");
        Field start = u0;
        if (dealias_on()) {
            // project the initial data onto the 2/3 band so the truncated
            // modes stay identically zero along the trajectory
            SpectrumField F = sp_.forward(start);
            sp_.dealias(F);
            sp_.transform().inverse_destructive(F.c.data(), start);
        }
        SolverState st{start, {}, 0, config_.tau, params_, field_mean(start)};
        st.history.mode = config_.history_mode;
        st.history.soe_tol = config_.soe_tol;
        auto u0_hat = sp_.forward(start);
        if (st.history.mode == HistoryMode::Direct) {
            st.history.past.push_back(std::move(u0_hat.c));
        } else {
            // kernel window: far-history lags range over [tau, t_n]
            if (total_steps() > 1 && params_.alpha.alpha < 1.0) {
                st.history.kernel =
                    soe_build(params_.alpha, config_.tau,
                              config_.t_end * 1.01 + 10.0 * config_.tau,
                              config_.soe_tol);
            } else {
                st.history.kernel.alpha = params_.alpha.alpha;
            }
            const auto& k = st.history.kernel;
            st.history.decay.resize(k.modes());
            st.history.gain.resize(k.modes());
            for (std::size_t l = 0; l < k.modes(); ++l) {
                const double x = k.s[l] * config_.tau;
                const double d = std::exp(-x);
                st.history.decay[l] = d;
                st.history.gain[l] =
                    x > 1e-8 ? d * (1.0 - d) / x : d * (1.0 - 0.5 * x);
            }
            st.history.q.assign(sp_.grid().spectrum_size() * k.modes(), 0.0);
            st.history.prev = std::move(u0_hat.c);
        }
        return st;
    }

    void step(SolverState& st) const {
        if (params_.mobility == MobilityKind::Constant)
            step_constant(st);
        else
            step_degenerate(st);
    }

    void step_constant(SolverState& st) const {
        const auto& g = sp_.grid();
        const std::size_t S = g.spectrum_size();
        const auto& k2 = sp_.k_squared();
        const double e2 = params_.epsilon * params_.epsilon;
        const double s = params_.stabilization_s;

        HistoryStore::Spectrum H(S, 0.0);
        far_history(st, H);
        const HistoryStore::Spectrum& prev = prev_spectrum(st);

        Field fp(g);
        const Field& u = st.u;
        parallel_for(g.cells(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i)
                fp.v[i] = potential_deriv(u.v[i]);
        });
        SpectrumField fph = sp_.forward(fp);
        if (dealias_on()) sp_.dealias(fph);

        SpectrumField un(g);
        parallel_for(S, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                const double kk = k2[i];
                const std::complex<double> rhs = c0_ * prev[i] - H[i] -
                                                 kk * fph.c[i] +
                                                 s * kk * prev[i];
                un.c[i] = rhs / (c0_ + e2 * kk * kk + s * kk);
            }
        });

        Field u_new(g);
        HistoryStore::Spectrum un_copy = un.c;
        sp_.transform().inverse_destructive(un.c.data(), u_new);
        finish_step(st, std::move(u_new), std::move(un_copy));
    }

    void step_degenerate(SolverState& st) const {
        const auto& g = sp_.grid();
        const std::size_t S = g.spectrum_size();
        const auto& k2 = sp_.k_squared();
        const double e2 = params_.epsilon * params_.epsilon;
        const double s = params_.stabilization_s;
        const bool da = dealias_on();

        Field mob = mobility(st.u, MobilityKind::OneSided);
        const double mbar =
            *std::max_element(mob.v.begin(), mob.v.end());

        HistoryStore::Spectrum H(S, 0.0);
        far_history(st, H);
        SpectrumField Hs(g);
        Hs.c = H;
        Field h_phys = sp_.inverse(Hs);

        // b = -H + c0 u^{n-1} + div(M grad(F'(u^{n-1}) - s u^{n-1}))
        Field w(g);
        parallel_for(g.cells(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i)
                w.v[i] = potential_deriv(st.u.v[i]) - s * st.u.v[i];
        });
        Field b = sp_.variable_flux_div(mob, w, da);
        parallel_for(g.cells(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i)
                b.v[i] += c0_ * st.u.v[i] - h_phys.v[i];
        });

        // A u = c0 u - div(M grad(-eps^2 lap u + s u))
        auto apply_a = [&](const std::vector<double>& in,
                           std::vector<double>& out) {
            Field fin(g);
            fin.v = in;
            SpectrumField W = sp_.forward(fin);
            for (std::size_t i = 0; i < S; ++i)
                W.c[i] *= e2 * k2[i] + s;
            Field wphys(g);
            sp_.transform().inverse_destructive(W.c.data(), wphys);
            Field flux = sp_.variable_flux_div(mob, wphys, da);
            out.resize(in.size());
            for (std::size_t i = 0; i < in.size(); ++i)
                out[i] = c0_ * in[i] - flux.v[i];
        };

        // preconditioner: constant-coefficient operator at M = max M^{n-1}.
        // With dealiasing the operator acts as plain c0 on the truncated
        // band, so the symbol is masked the same way.
        const auto& keep = sp_.dealias_mask();
        auto apply_pinv = [&](const std::vector<double>& in,
                              std::vector<double>& out) {
            Field fin(g);
            fin.v = in;
            SpectrumField W = sp_.forward(fin);
            for (std::size_t i = 0; i < S; ++i) {
                const double kk = k2[i];
                const double band = da ? keep[i] : 1.0;
                W.c[i] /= c0_ + band * mbar * (e2 * kk * kk + s * kk);
            }
            Field res(g);
            sp_.transform().inverse_destructive(W.c.data(), res);
            out = std::move(res.v);
        };

        std::vector<double> x = st.u.v;  // warm start from u^{n-1}
        try {
            gmres_right(apply_a, apply_pinv, b.v, x, config_.krylov_tol,
                        config_.krylov_maxiter);
        } catch (const KrylovError& e) {
            throw KrylovError("step " + std::to_string(st.step_index + 1) +
                                  ": " + e.what(),
                              e.residual);
        }

        Field u_new(g);
        u_new.v = std::move(x);
        // the exact solution preserves the mean; pin the Krylov approximation
        // to it so mass cannot drift
        const double shift = st.initial_mean - field_mean(u_new);
        for (double& v : u_new.v) v += shift;

        SpectrumField un = sp_.forward(u_new);
        finish_step(st, std::move(u_new), std::move(un.c));
    }

    /// Advance to t_end, invoking the sink after every step (and once on the
    /// initial state). Deterministic for fixed config and thread count.
    SolverState run(const Field& init,
                    const std::function<void(const SolverState&)>& sink = {}) const {
        SolverState st = initial_state(init);
        if (sink) sink(st);
        const std::size_t n = total_steps();
        for (std::size_t i = 0; i < n; ++i) {
            step(st);
            if (sink) sink(st);
        }
        return st;
    }

  private:
    const HistoryStore::Spectrum& prev_spectrum(const SolverState& st) const {
        return st.history.mode == HistoryMode::Direct ? st.history.past.back()
                                                      : st.history.prev;
    }

    /// H^n = c0 sum_{j>=1} a_j (u^{n-j} - u^{n-j-1}) per wavenumber, from
    /// stored spectra (Direct) or the SOE accumulators (integral form).
    void far_history(const SolverState& st, HistoryStore::Spectrum& H) const {
        const std::size_t S = sp_.grid().spectrum_size();
        if (st.history.mode == HistoryMode::Direct) {
            const std::size_t n = st.step_index + 1;
            if (weights_.a.size() < n)
                weights_ = l1_weights(params_.alpha, 2 * n);
            for (std::size_t j = n - 1; j >= 1; --j) {
                const double c = c0_ * weights_.a[j];
                const auto& newer = st.history.past[n - j];
                const auto& older = st.history.past[n - j - 1];
                for (std::size_t i = 0; i < S; ++i)
                    H[i] += c * (newer[i] - older[i]);
            }
        } else {
            const auto& k = st.history.kernel;
            const std::size_t M = k.modes();
            if (M == 0) return;
            const double inv_g1ma = 1.0 / params_.alpha.gamma_1ma;
            parallel_for(S, [&](std::size_t lo, std::size_t hi) {
                for (std::size_t i = lo; i < hi; ++i) {
                    std::complex<double> acc = 0.0;
                    const auto* qi = &st.history.q[i * M];
                    for (std::size_t l = 0; l < M; ++l) acc += k.w[l] * qi[l];
                    H[i] = acc * inv_g1ma;
                }
            });
        }
    }

    void finish_step(SolverState& st, Field&& u_new,
                     HistoryStore::Spectrum&& un_hat) const {
        if (!all_finite(u_new))
            throw DivergenceError(
                "non-finite field values at step " +
                    std::to_string(st.step_index + 1),
                st.step_index + 1, (st.step_index + 1) * st.tau);
        if (st.history.mode == HistoryMode::Direct) {
            st.history.past.push_back(std::move(un_hat));
        } else {
            const std::size_t S = sp_.grid().spectrum_size();
            const std::size_t M = st.history.kernel.modes();
            auto& hist = st.history;
            if (M > 0) {
                parallel_for(S, [&](std::size_t lo, std::size_t hi) {
                    for (std::size_t i = lo; i < hi; ++i) {
                        const std::complex<double> dv =
                            un_hat[i] - hist.prev[i];
                        auto* qi = &hist.q[i * M];
                        for (std::size_t l = 0; l < M; ++l)
                            qi[l] = hist.decay[l] * qi[l] + hist.gain[l] * dv;
                    }
                });
            }
            hist.prev = std::move(un_hat);
        }
        st.u = std::move(u_new);
        ++st.step_index;
    }

    Spectral sp_;
    ModelParams params_;
    SchemeConfig config_;
    mutable L1Weights weights_;
    double c0_ = 0.0;
};

}  // namespace tfch
