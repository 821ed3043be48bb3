#include <string>

#include <CLI11.hpp>

#include "tfch/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"time-fractional Cahn-Hilliard simulator"};
    app.require_subcommand(1);

    std::string config_path;
    int threads = 1;
    auto* run = app.add_subcommand("run", "execute an experiment config");
    run->add_option("config", config_path, "JSON config file")->required();
    run->add_option("--threads", threads, "grid-level parallelism (default 1)")
        ->check(CLI::PositiveNumber);

    std::string csv_path, column = "energy";
    double t_lo = 0.0, t_hi = 0.0;
    auto* fit = app.add_subcommand("fit", "power-law fit of a series column");
    fit->add_option("csv", csv_path, "series CSV file")->required();
    fit->add_option("--column", column, "column to fit (default energy)");
    fit->add_option("--t-lo", t_lo, "window start")->required();
    fit->add_option("--t-hi", t_hi, "window end")->required();

    auto* check = app.add_subcommand("check", "run the invariant suite");

    double bench_alpha = 0.5, bench_tol = 1e-8;
    std::size_t bench_steps = 100000;
    auto* bench =
        app.add_subcommand("bench", "direct vs SOE history benchmark");
    bench->add_option("--alpha", bench_alpha, "fractional order");
    bench->add_option("--steps", bench_steps, "history length");
    bench->add_option("--tol", bench_tol, "SOE tolerance");

    std::string snap_path, pgm_path;
    auto* snap = app.add_subcommand("snapshot", "convert a snapshot to PGM");
    snap->add_option("snapshot", snap_path, "input .tfch file")->required();
    snap->add_option("--pgm", pgm_path, "output PGM file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : tfch::exit_usage;
    }

    if (run->parsed()) return tfch::cmd_run(config_path, threads);
    if (fit->parsed()) return tfch::cmd_fit(csv_path, column, t_lo, t_hi);
    if (check->parsed()) return tfch::cmd_check();
    if (bench->parsed())
        return tfch::cmd_bench(bench_alpha, bench_steps, bench_tol);
    if (snap->parsed()) return tfch::cmd_snapshot(snap_path, pgm_path);
    return tfch::exit_usage;
}
