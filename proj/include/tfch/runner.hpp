#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tfch/config.hpp"
#include "tfch/csvio.hpp"
#include "tfch/diagnostics.hpp"
#include "tfch/oracle.hpp"
#include "tfch/parallel.hpp"
#include "tfch/snapshot.hpp"
#include "tfch/stepper.hpp"

namespace tfch {

// exit codes shared by all subcommands
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_numerical = 2;
inline constexpr int exit_check = 3;

/// run: execute one experiment from a JSON config. Writes series.csv and
/// snapshot_NNNNNNNN.tfch files into output.dir (TFCHE_OUT_DIR overrides).
inline int cmd_run(const std::string& config_path, int threads = 1) {
    RunConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const InputError& e) {
        std::cerr << e.what() << "\n";
        return exit_usage;
    }
    set_thread_count(threads);

    std::string out_dir = cfg.output.dir;
    if (const char* env = std::getenv("TFCHE_OUT_DIR")) out_dir = env;

    try {
        std::filesystem::create_directories(out_dir);

        const Grid2D grid = cfg.make_grid();
        const ModelParams params = cfg.model_params();
        const SchemeConfig scheme = cfg.scheme_config();
        if (!params.resolves(grid))
            std::cerr << "warning: epsilon < 2 max(dx, dy); the interface "
                         "is under-resolved\n";

        Field u0 = init_field(cfg.init_config(), grid, cfg.epsilon);
        Solver solver(grid, params, scheme);
        const Spectral& sp = solver.spectral();

        TimeSeries series;
        auto sink = [&](const SolverState& st) {
            const bool last = st.step_index == solver.total_steps();
            if (cfg.output.series_every > 0 &&
                (st.step_index % cfg.output.series_every == 0 || last)) {
                SeriesRow row;
                row.step = st.step_index;
                row.t = st.time();
                const EnergyValue e = energy(sp, st.u, params);
                row.energy_total = e.total;
                row.energy_per_area = e.per_area;
                row.mass = field_mean(st.u);
                try {
                    auto [lsf, le] = characteristic_length(sp, st.u, params);
                    row.length_sf = lsf;
                    row.length_energy = le;
                } catch (const InputError&) {
                    row.length_sf = std::nan("");
                    row.length_energy = std::nan("");
                }
                if (series.rows.empty() || row.t > series.rows.back().t)
                    series.append(row);
            }
            if (cfg.output.snapshot_every > 0 &&
                st.step_index % cfg.output.snapshot_every == 0) {
                char name[64];
                std::snprintf(name, sizeof name, "snapshot_%08zu.tfch",
                              st.step_index);
                write_snapshot(out_dir + "/" + name, st.u, cfg.alpha,
                               cfg.epsilon, st.time());
            }
        };

        solver.run(u0, sink);
        write_series_csv(out_dir + "/series.csv", series);
    } catch (const InputError& e) {
        std::cerr << e.what() << "\n";
        return exit_usage;
    } catch (const NumericalError& e) {
        std::cerr << e.what() << "\n";
        return exit_numerical;
    }
    return exit_ok;
}

/// fit: least-squares power law through a series column, printed as one JSON
/// line on stdout.
inline int cmd_fit(const std::string& csv_path, const std::string& column,
                   double t_lo, double t_hi) {
    try {
        CsvTable table = read_csv(csv_path);
        const auto& t = table.column("t");
        const auto& y = table.column(column);
        SlopeFit fit = fit_power_law(t, y, t_lo, t_hi);
        nlohmann::json out{{"column", column},
                           {"slope", fit.slope},
                           {"intercept", fit.intercept},
                           {"r_squared", fit.r_squared},
                           {"window", {fit.t_lo, fit.t_hi}}};
        std::cout << out.dump() << "\n";
    } catch (const InputError& e) {
        std::cerr << e.what() << "\n";
        return exit_usage;
    }
    return exit_ok;
}

/// snapshot: convert a binary snapshot to an 8-bit PGM image.
inline int cmd_snapshot(const std::string& snap_path,
                        const std::string& pgm_path) {
    try {
        Snapshot s = read_snapshot(snap_path);
        write_pgm(pgm_path, s.nx, s.ny, s.values);
    } catch (const InputError& e) {
        std::cerr << e.what() << "\n";
        return exit_usage;
    }
    return exit_ok;
}

struct BenchResult {
    double alpha = 0.0;
    std::size_t n_steps = 0;
    double soe_tol = 0.0;
    std::size_t soe_modes = 0;
    double direct_seconds = 0.0;
    double soe_seconds = 0.0;
    double speedup = 0.0;
    double max_rel_diff = 0.0;
};

/// Direct O(n^2) L1 history versus the SOE fast path on one scalar
/// random-walk history (seeded, so both paths see identical data).
inline BenchResult bench_history(double alpha_value, std::size_t n_steps,
                                 double soe_tol = 1e-8) {
    using clock = std::chrono::steady_clock;
    FractionalOrder order(alpha_value);
    const double tau = 1.0;

    SplitMix64 rng(12345);
    std::vector<double> v(n_steps + 1);
    v[0] = 0.0;
    for (std::size_t i = 1; i <= n_steps; ++i)
        v[i] = v[i - 1] + (rng.next_double() < 0.5 ? -1.0 : 1.0);

    // direct: full L1 sum at every step with precomputed weights
    const L1Weights w = l1_weights(order, n_steps);
    const double c0 = std::pow(tau, -order.alpha) / order.gamma_2ma;
    std::vector<double> direct(n_steps + 1, 0.0);
    const auto t0 = clock::now();
    for (std::size_t n = 1; n <= n_steps; ++n) {
        double acc = 0.0;
        for (std::size_t j = n; j-- > 0;)
            acc += w.a[j] * (v[n - j] - v[n - j - 1]);
        direct[n] = c0 * acc;
    }
    const auto t1 = clock::now();

    SoeKernel kernel =
        soe_build(order, tau, tau * double(n_steps) * 1.01, soe_tol);
    SoeScalarState state(kernel, tau);
    std::vector<double> fast(n_steps + 1, 0.0);
    const auto t2 = clock::now();
    for (std::size_t n = 1; n <= n_steps; ++n)
        fast[n] = caputo_fast_step(kernel, state, v[n], v[n - 1], tau);
    const auto t3 = clock::now();

    BenchResult r;
    r.alpha = alpha_value;
    r.n_steps = n_steps;
    r.soe_tol = soe_tol;
    r.soe_modes = kernel.modes();
    for (std::size_t n = 1; n <= n_steps; ++n)
        r.max_rel_diff = std::max(r.max_rel_diff,
                                  std::abs(fast[n] - direct[n]) /
                                      (std::abs(direct[n]) + 1.0));
    r.direct_seconds = std::chrono::duration<double>(t1 - t0).count();
    r.soe_seconds = std::chrono::duration<double>(t3 - t2).count();
    r.speedup = r.direct_seconds / r.soe_seconds;
    return r;
}

/// bench: timings and agreement as one JSON line.
inline int cmd_bench(double alpha_value, std::size_t n_steps,
                     double soe_tol = 1e-8) {
    try {
        const BenchResult r = bench_history(alpha_value, n_steps, soe_tol);
        nlohmann::json out{{"alpha", r.alpha},
                           {"n_steps", r.n_steps},
                           {"soe_tol", r.soe_tol},
                           {"soe_modes", r.soe_modes},
                           {"direct_seconds", r.direct_seconds},
                           {"soe_seconds", r.soe_seconds},
                           {"speedup", r.speedup},
                           {"max_rel_diff", r.max_rel_diff}};
        std::cout << out.dump() << "\n";
    } catch (const InputError& e) {
        std::cerr << e.what() << "\n";
        return exit_usage;
    } catch (const NumericalError& e) {
        std::cerr << e.what() << "\n";
        return exit_numerical;
    }
    return exit_ok;
}

namespace checks {

struct Reporter {
    int failures = 0;

    void operator()(const std::string& name, bool ok) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    }
};

inline void fracops_identities(Reporter& rep) {
    // L1 exactness on linear data across alphas
    bool ok = true;
    for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        FractionalOrder order(a);
        ScalarHistory h;
        h.tau = 1.0 / 64.0;
        for (int j = 0; j <= 64; ++j) h.v.push_back(0.5 + 2.0 * h.tau * j);
        const double want = 2.0 / order.gamma_2ma;
        ok = ok &&
             std::abs(caputo_l1(order, h, h.tau) - want) < 1e-12 * want;
    }
    rep("fracops: L1 exact on linear data", ok);

    {
        FractionalOrder one(1.0);
        ScalarHistory h;
        h.tau = 0.01;
        for (int j = 0; j <= 50; ++j) h.v.push_back(std::sin(0.3 * j));
        const double bd = (h.v[50] - h.v[49]) / h.tau;
        rep("fracops: alpha = 1 degenerates to backward difference",
            std::abs(caputo_l1(one, h, h.tau) - bd) <= 1e-14 * std::abs(bd));
    }

    {
        FractionalOrder half(0.5);
        ScalarHistory h;
        h.tau = 1.0 / 128.0;
        for (int j = 0; j <= 128; ++j) h.v.push_back(h.tau * j);
        const double got = caputo_l1(half, h, h.tau);
        const double want =
            oracle::frac_power(oracle::FracKind::CaputoDeriv, 0.5, 1.0, 1.0);
        rep("fracops: caputo_l1(t) matches closed form",
            std::abs(got - want) < 1e-12 * want);

        auto [lhs, rhs] = rescale_check(half, h, 2.0);
        rep("fracops: rescaling identity",
            std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    }

    {
        ScalarHistory h;
        h.tau = 1.5 / 37.0;
        for (int j = 0; j <= 37; ++j) h.v.push_back(std::cos(2.0 * h.tau * j));
        double trap = 0.0;
        for (std::size_t j = 0; j + 1 < h.v.size(); ++j)
            trap += 0.5 * h.tau * (h.v[j] + h.v[j + 1]);
        rep("fracops: rl_integral at gamma = 1 is trapezoidal",
            std::abs(rl_integral(1.0, h, h.tau) - trap) < 1e-13);
    }
}

inline void soe_identities(Reporter& rep) {
    FractionalOrder half(0.5);
    SoeKernel k = soe_build(half, 1e-3, 10.0, 1e-8);
    rep("soe: kernel certified to tolerance", k.achieved_error <= 1e-8);

    const std::size_t n = 2000;
    const double tau = 1.0;
    SoeKernel kb = soe_build(half, tau, tau * n * 1.01, 1e-8);
    SoeScalarState st(kb, tau);
    SplitMix64 rng(99);
    ScalarHistory h;
    h.tau = tau;
    h.v.push_back(0.0);
    double fast = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        h.v.push_back(h.v.back() + (rng.next_double() < 0.5 ? -1.0 : 1.0));
        fast = caputo_fast_step(kb, st, h.v[i], h.v[i - 1], tau);
    }
    const double direct = caputo_l1(half, h, tau);
    rep("soe: fast path matches direct L1",
        std::abs(fast - direct) / (std::abs(direct) + 1.0) <= 1e-6);
}

inline void spectral_identities(Reporter& rep) {
    Grid2D g(32, 32, 1.3, 0.9);
    Spectral sp(g);
    Field f(g);
    SplitMix64 rng(5);
    for (double& v : f.v) v = 2.0 * rng.next_double() - 1.0;

    Field back = sp.inverse(sp.forward(f));
    rep("spectral: transform round trip",
        max_abs_diff(f, back) < 1e-12 * field_max_abs(f));

    SpectrumField F = sp.forward(f);
    double phys = 0.0;
    for (double v : f.v) phys += v * v;
    phys *= g.cell_area();
    double spec = 0.0;
    const std::size_t nxh = g.nx / 2 + 1;
    for (std::size_t j = 0; j < g.ny; ++j)
        for (std::size_t m = 0; m < nxh; ++m) {
            const double w = (m == 0 || 2 * m == g.nx) ? 1.0 : 2.0;
            spec += w * std::norm(F.at(m, j));
        }
    spec *= g.cell_area() / double(g.cells());
    rep("spectral: Parseval", std::abs(phys - spec) < 1e-10 * phys);

    auto [gx, gy] = sp.gradient(f);
    Field dg = sp.divergence(gx, gy);
    Field lap = sp.laplacian(f);
    rep("spectral: div(grad) = laplacian",
        max_abs_diff(dg, lap) < 1e-10 * std::max(1.0, field_max_abs(lap)));
    rep("spectral: laplacian preserves the mean",
        std::abs(field_mean(lap)) < 1e-12);

    Field m(g);
    for (double& v : m.v) v = 1.0 + 0.5 * rng.next_double();
    Field vfd = sp.variable_flux_div(m, f, true);
    rep("spectral: variable flux preserves the mean",
        std::abs(field_mean(vfd)) < 1e-12);
}

inline void stepper_identities(Reporter& rep) {
    Grid2D g(32, 32, 1.0, 1.0);
    ModelParams p(0.08, MobilityKind::Constant, 2.0, FractionalOrder(1.0));
    SchemeConfig cfg;
    cfg.tau = 1e-4;
    cfg.t_end = 5e-4;
    cfg.history_mode = HistoryMode::Direct;
    Solver solver(g, p, cfg);

    Field u0(g);
    SplitMix64 rng(42);
    for (double& v : u0.v) v = 0.5 * (2.0 * rng.next_double() - 1.0);

    SolverState st = solver.initial_state(u0);
    Field ref = u0;
    double worst = 0.0;
    for (int n = 0; n < 5; ++n) {
        solver.step(st);
        ref = oracle::classical_ch_step(ref, p, cfg.tau);
        worst = std::max(worst, max_abs_diff(st.u, ref));
    }
    rep("stepper: alpha = 1 equals classical stabilized Euler",
        worst <= 1e-12);

    ModelParams pf(0.08, MobilityKind::Constant, 2.0, FractionalOrder(0.8));
    SchemeConfig cfg2;
    cfg2.tau = 1e-4;
    cfg2.t_end = 5e-3;  // 50 steps
    cfg2.history_mode = HistoryMode::Soe;
    Solver s2(g, pf, cfg2);
    const Spectral& sp = s2.spectral();
    double e0 = -1.0, mass0 = 0.0, worst_e = -1e300, worst_m = 0.0;
    double max_u = 0.0;
    s2.run(u0, [&](const SolverState& s) {
        const double e = energy(sp, s.u, pf).total;
        if (s.step_index == 0) {
            e0 = e;
            mass0 = field_mean(s.u);
        }
        worst_e = std::max(worst_e, e - e0 * (1.0 + 1e-8));
        worst_m = std::max(worst_m, std::abs(field_mean(s.u) - mass0));
        max_u = std::max(max_u, field_max_abs(s.u));
    });
    rep("stepper: mass conserved to 1e-10", worst_m <= 1e-10);
    rep("stepper: energy bounded by initial value", worst_e <= 0.0);
    rep("stepper: solution bounded", max_u <= 1.5);
}

inline void prng_golden(Reporter& rep) {
    SplitMix64 a(42);
    bool ok = a.next_u64() == 0xbdd732262feb6e95ull;
    SplitMix64 b(42);
    ok = ok && b.next_double() == 0.74156487877182331;
    SplitMix64 c(0);
    ok = ok && c.next_double() == 0.88331080821364261;
    rep("prng: splitmix64 golden values", ok);
}

inline void file_roundtrips(Reporter& rep) {
    namespace fs = std::filesystem;
    const fs::path dir =
        fs::temp_directory_path() / "tfche_check";
    fs::create_directories(dir);

    {
        RunConfig c;
        c.alpha = 0.45;
        c.grid.nx = 64;
        c.init.kind = "circle";
        c.init.seed = 1234567890123ull;
        RunConfig back = config_from_json(config_to_json(c));
        RunConfig back2 = config_from_json(config_to_json(back));
        rep("io: config parse/serialize round trip",
            back == c && back2 == back);
    }

    {
        Grid2D g(16, 8, 1.0, 1.0);
        Field f(g);
        SplitMix64 rng(8);
        for (double& v : f.v) v = 2.0 * rng.next_double() - 1.0;
        const std::string p = (dir / "check.tfch").string();
        write_snapshot(p, f, 0.9, 0.05, 1.25);
        Snapshot s = read_snapshot(p);
        bool ok = s.nx == 16 && s.ny == 8 && s.alpha == 0.9 &&
                  s.epsilon == 0.05 && s.t == 1.25;
        for (std::size_t i = 0; i < f.v.size(); ++i)
            ok = ok && s.values[i] == f.v[i];
        const std::string p2 = (dir / "check2.tfch").string();
        Snapshot s2 = s;
        write_snapshot(p2, s2);
        std::ifstream f1(p, std::ios::binary), f2(p2, std::ios::binary);
        std::string b1((std::istreambuf_iterator<char>(f1)), {});
        std::string b2((std::istreambuf_iterator<char>(f2)), {});
        rep("io: snapshot bit-exact round trip", ok && b1 == b2);
    }

    {
        TimeSeries ts;
        ts.append({0, 0.0, 1.0, -0.125, 0.5, 0.25, 0.0});
        ts.append({5, 0.5, 0.75, -0.125, 0.55, 0.3, 0.0});
        const std::string p = (dir / "check.csv").string();
        // SeriesRow carries energy_per_area too; the file holds 6 columns
        write_series_csv(p, ts);
        CsvTable t = read_csv(p);
        bool ok = t.columns.size() == 6 && t.columns[0] == "step" &&
                  t.columns[2] == "energy";
        ok = ok && t.column("energy")[1] == 0.75 &&
             t.column("mass")[0] == 0.5;
        rep("io: series csv round trip", ok);
    }
    fs::remove_all(dir);
}

}  // namespace checks

/// check: the full invariant suite; nonzero exit (3) on any failure.
inline int cmd_check() {
    checks::Reporter rep;
    try {
        checks::fracops_identities(rep);
        checks::soe_identities(rep);
        checks::spectral_identities(rep);
        checks::stepper_identities(rep);
        checks::prng_golden(rep);
        checks::file_roundtrips(rep);
    } catch (const std::exception& e) {
        std::cout << "[FAIL] unexpected exception: " << e.what() << "\n";
        ++rep.failures;
    }
    if (rep.failures > 0) {
        std::cout << rep.failures << " check(s) failed\n";
        return exit_check;
    }
    std::cout << "all checks passed\n";
    return exit_ok;
}

}  // namespace tfch
