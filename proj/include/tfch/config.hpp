#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <string>

#include <json.hpp>

#include "tfch/chmodel.hpp"
#include "tfch/errors.hpp"
#include "tfch/grid.hpp"
#include "tfch/init.hpp"
#include "tfch/stepper.hpp"

namespace tfch {

/// One experiment = one JSON file. Unknown keys are rejected at every level;
/// optional fields and their defaults are spelled out in from_json below.
struct RunConfig {
    double alpha = 0.9;
    double epsilon = 0.05;

    struct GridCfg {
        std::size_t nx = 128, ny = 128;
        double lx = 1.0, ly = 1.0;
        bool operator==(const GridCfg&) const = default;
    } grid;

    std::string mobility = "constant";  // "constant" | "one_sided"
    double dt = 1e-3;
    double t_end = 1.0;
    double stabilization = 2.0;
    std::string dealias = "auto";  // "auto" | "on" | "off"

    struct HistoryCfg {
        std::string mode = "soe";  // "direct" | "soe"
        double tol = 1e-9;
        bool operator==(const HistoryCfg&) const = default;
    } history;

    struct KrylovCfg {
        double tol = 1e-10;
        std::size_t maxiter = 400;
        bool operator==(const KrylovCfg&) const = default;
    } krylov;

    struct InitCfg {
        std::string kind = "random";  // "random" | "circle" | "tanh1d"
        std::uint64_t seed = 0;
        double mean = 0.0;
        double amplitude = 0.05;
        double radius = -1.0;                    // < 0: lx/4
        std::array<double, 2> center{-1.0, -1.0};  // < 0: domain center
        bool operator==(const InitCfg&) const = default;
    } init;

    struct OutputCfg {
        std::string dir = "out";
        std::size_t snapshot_every = 0;  // 0: no snapshots
        std::size_t series_every = 1;
        bool operator==(const OutputCfg&) const = default;
    } output;

    bool operator==(const RunConfig&) const = default;

    Grid2D make_grid() const { return {grid.nx, grid.ny, grid.lx, grid.ly}; }

    MobilityKind mobility_kind() const {
        if (mobility == "constant") return MobilityKind::Constant;
        if (mobility == "one_sided") return MobilityKind::OneSided;
        throw InputError("config: mobility must be constant or one_sided");
    }

    ModelParams model_params() const {
        return {epsilon, mobility_kind(), stabilization,
                FractionalOrder(alpha)};
    }

    SchemeConfig scheme_config() const {
        SchemeConfig s;
        s.tau = dt;
        s.t_end = t_end;
        if (history.mode == "direct")
            s.history_mode = HistoryMode::Direct;
        else if (history.mode == "soe")
            s.history_mode = HistoryMode::Soe;
        else
            throw InputError("config: history.mode must be direct or soe");
        s.soe_tol = history.tol;
        s.krylov_tol = krylov.tol;
        s.krylov_maxiter = krylov.maxiter;
        if (dealias == "auto")
            s.dealias = DealiasMode::Auto;
        else if (dealias == "on")
            s.dealias = DealiasMode::On;
        else if (dealias == "off")
            s.dealias = DealiasMode::Off;
        else
            throw InputError("config: dealias must be auto, on or off");
        s.validate();
        return s;
    }

    InitConfig init_config() const {
        InitConfig c;
        if (init.kind == "random")
            c.kind = InitKind::Random;
        else if (init.kind == "circle")
            c.kind = InitKind::Circle;
        else if (init.kind == "tanh1d")
            c.kind = InitKind::Tanh1D;
        else
            throw InputError("config: init.kind must be random, circle or "
                             "tanh1d");
        c.seed = init.seed;
        c.mean = init.mean;
        c.amplitude = init.amplitude;
        c.radius = init.radius;
        c.cx = init.center[0];
        c.cy = init.center[1];
        return c;
    }
};

namespace detail {

inline void reject_unknown(const nlohmann::json& j,
                           std::initializer_list<const char*> allowed,
                           const std::string& where) {
    if (!j.is_object())
        throw InputError("config: " + where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok)
            throw InputError("config: unknown key \"" + it.key() + "\" in " +
                             where);
    }
}

template <typename T>
void opt(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace detail

inline RunConfig config_from_json(const nlohmann::json& j) {
    detail::reject_unknown(j,
                           {"alpha", "epsilon", "grid", "mobility", "dt",
                            "t_end", "stabilization", "dealias", "history",
                            "krylov", "init", "output"},
                           "top level");
    RunConfig c;
    try {
        detail::opt(j, "alpha", c.alpha);
        detail::opt(j, "epsilon", c.epsilon);
        detail::opt(j, "mobility", c.mobility);
        detail::opt(j, "dt", c.dt);
        detail::opt(j, "t_end", c.t_end);
        detail::opt(j, "stabilization", c.stabilization);
        detail::opt(j, "dealias", c.dealias);
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            detail::reject_unknown(g, {"nx", "ny", "lx", "ly"}, "grid");
            detail::opt(g, "nx", c.grid.nx);
            detail::opt(g, "ny", c.grid.ny);
            detail::opt(g, "lx", c.grid.lx);
            detail::opt(g, "ly", c.grid.ly);
        }
        if (j.contains("history")) {
            const auto& h = j.at("history");
            detail::reject_unknown(h, {"mode", "tol"}, "history");
            detail::opt(h, "mode", c.history.mode);
            detail::opt(h, "tol", c.history.tol);
        }
        if (j.contains("krylov")) {
            const auto& k = j.at("krylov");
            detail::reject_unknown(k, {"tol", "maxiter"}, "krylov");
            detail::opt(k, "tol", c.krylov.tol);
            detail::opt(k, "maxiter", c.krylov.maxiter);
        }
        if (j.contains("init")) {
            const auto& i = j.at("init");
            detail::reject_unknown(
                i, {"kind", "seed", "mean", "amplitude", "radius", "center"},
                "init");
            detail::opt(i, "kind", c.init.kind);
            detail::opt(i, "seed", c.init.seed);
            detail::opt(i, "mean", c.init.mean);
            detail::opt(i, "amplitude", c.init.amplitude);
            detail::opt(i, "radius", c.init.radius);
            detail::opt(i, "center", c.init.center);
        }
        if (j.contains("output")) {
            const auto& o = j.at("output");
            detail::reject_unknown(
                o, {"dir", "snapshot_every", "series_every"}, "output");
            detail::opt(o, "dir", c.output.dir);
            detail::opt(o, "snapshot_every", c.output.snapshot_every);
            detail::opt(o, "series_every", c.output.series_every);
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("config: ") + e.what());
    }

    // validate eagerly so a bad file fails at parse time
    c.make_grid();
    c.model_params();
    c.scheme_config();
    c.init_config();
    return c;
}

inline nlohmann::json config_to_json(const RunConfig& c) {
    return nlohmann::json{
        {"alpha", c.alpha},
        {"epsilon", c.epsilon},
        {"grid",
         {{"nx", c.grid.nx}, {"ny", c.grid.ny}, {"lx", c.grid.lx},
          {"ly", c.grid.ly}}},
        {"mobility", c.mobility},
        {"dt", c.dt},
        {"t_end", c.t_end},
        {"stabilization", c.stabilization},
        {"dealias", c.dealias},
        {"history", {{"mode", c.history.mode}, {"tol", c.history.tol}}},
        {"krylov", {{"tol", c.krylov.tol}, {"maxiter", c.krylov.maxiter}}},
        {"init",
         {{"kind", c.init.kind},
          {"seed", c.init.seed},
          {"mean", c.init.mean},
          {"amplitude", c.init.amplitude},
          {"radius", c.init.radius},
          {"center", c.init.center}}},
        {"output",
         {{"dir", c.output.dir},
          {"snapshot_every", c.output.snapshot_every},
          {"series_every", c.output.series_every}}},
    };
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("config: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("config: parse error: ") + e.what());
    }
    return config_from_json(j);
}

}  // namespace tfch
