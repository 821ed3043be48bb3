#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "tfch/config.hpp"
#include "tfch/csvio.hpp"
#include "tfch/init.hpp"
#include "tfch/snapshot.hpp"

using namespace tfch;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "tfch_io_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f),
            std::istreambuf_iterator<char>()};
}

#ifdef TFCHE_BIN
struct CliResult {
    int status = -1;
    std::string out, err;
};

CliResult cli(const std::string& args) {
    const fs::path out = temp_dir() / "cli.out";
    const fs::path err = temp_dir() / "cli.err";
    const std::string cmd = std::string(TFCHE_BIN) + " " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int rc = std::system(cmd.c_str());
    CliResult r;
    r.status = WEXITSTATUS(rc);
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}
#endif

}  // namespace

TEST_CASE("init_field golden values", "[io]") {
    Grid2D g(16, 16, 1.0, 1.0);

    SECTION("random: pinned first draw, row-major order") {
        InitConfig c;
        c.kind = InitKind::Random;
        c.seed = 42;
        c.mean = 0.0;
        c.amplitude = 0.05;
        Field u = init_field(c, g, 0.05);
        // 0.05 * (2 * 0.74156487877182331 - 1), pinned from the PRNG spec
        CHECK(u.v[0] == 0.024156487877182331);
        CHECK(u.v[1] == 0.05 * (2.0 * 0.1599103928769201 - 1.0));
    }

    SECTION("zero amplitude gives the uniform mean") {
        InitConfig c;
        c.kind = InitKind::Random;
        c.seed = 7;
        c.mean = -0.4;
        c.amplitude = 0.0;
        Field u = init_field(c, g, 0.05);
        for (double v : u.v) REQUIRE(v == -0.4);
    }

    SECTION("circle: +1 phase inside, -1 far outside") {
        Grid2D g2(128, 128, 1.0, 1.0);
        InitConfig c;
        c.kind = InitKind::Circle;
        c.radius = 0.25;
        Field u = init_field(c, g2, 0.02);
        CHECK(std::abs(u.at(64, 64) - 1.0) < 1e-7);
        CHECK(std::abs(u.at(0, 0) + 1.0) < 1e-7);
        // profile value at the rim midpoint
        CHECK(std::abs(u.at(64 + 32, 64)) < 0.2);
    }

    SECTION("tanh1d: stripe between cx - R and cx + R") {
        Grid2D g1(256, 1, 1.0, 1.0);
        InitConfig c;
        c.kind = InitKind::Tanh1D;
        c.radius = 0.25;
        Field u = init_field(c, g1, 0.02);
        CHECK(std::abs(u.v[128] - 1.0) < 1e-6);   // center
        CHECK(std::abs(u.v[2] + 1.0) < 1e-6);     // far left
        CHECK(std::abs(u.v[253] + 1.0) < 1e-6);   // far right
    }
}

TEST_CASE("config defaults, unknown keys, validation", "[io]") {
    SECTION("empty object gives the documented defaults") {
        RunConfig c = config_from_json(nlohmann::json::object());
        CHECK(c.alpha == 0.9);
        CHECK(c.epsilon == 0.05);
        CHECK(c.grid.nx == 128);
        CHECK(c.mobility == "constant");
        CHECK(c.history.mode == "soe");
        CHECK(c.history.tol == 1e-9);
        CHECK(c.krylov.tol == 1e-10);
        CHECK(c.krylov.maxiter == 400);
        CHECK(c.init.kind == "random");
        CHECK(c.output.series_every == 1);
        CHECK(c.output.snapshot_every == 0);
        CHECK(c.dealias == "auto");
    }

    SECTION("unknown keys are rejected at every level") {
        CHECK_THROWS_AS(config_from_json({{"alpa", 0.5}}), InputError);
        CHECK_THROWS_AS(
            config_from_json({{"grid", {{"nx", 32}, {"nz", 32}}}}),
            InputError);
        CHECK_THROWS_AS(
            config_from_json({{"init", {{"kid", "random"}}}}), InputError);
        CHECK_THROWS_AS(
            config_from_json({{"output", {{"dirr", "x"}}}}), InputError);
    }

    SECTION("bad values fail at parse time") {
        CHECK_THROWS_AS(config_from_json({{"alpha", 1.5}}), InputError);
        CHECK_THROWS_AS(config_from_json({{"alpha", 0.0}}), InputError);
        CHECK_THROWS_AS(config_from_json({{"mobility", "degenerate"}}),
                        InputError);
        CHECK_THROWS_AS(config_from_json({{"grid", {{"nx", 7}}}}),
                        InputError);
        CHECK_THROWS_AS(config_from_json({{"history", {{"mode", "fast"}}}}),
                        InputError);
        CHECK_THROWS_AS(config_from_json({{"dt", -0.1}}), InputError);
        CHECK_THROWS_AS(config_from_json({{"krylov", {{"tol", 1e-6}}}}),
                        InputError);
    }

    SECTION("parse -> serialize -> parse is the identity") {
        nlohmann::json j{{"alpha", 0.33},
                         {"grid", {{"nx", 64}, {"ny", 32}, {"lx", 3.2}}},
                         {"mobility", "one_sided"},
                         {"init", {{"kind", "circle"}, {"radius", 0.2}}},
                         {"history", {{"mode", "direct"}}}};
        RunConfig a = config_from_json(j);
        RunConfig b = config_from_json(config_to_json(a));
        CHECK(a == b);
        CHECK(config_to_json(a) == config_to_json(b));
    }

    SECTION("u64 seed survives the round trip") {
        nlohmann::json j{
            {"init", {{"seed", 18446744073709551615ull}}}};
        RunConfig c = config_from_json(j);
        CHECK(c.init.seed == 18446744073709551615ull);
        CHECK(config_from_json(config_to_json(c)).init.seed == c.init.seed);
    }
}

TEST_CASE("snapshot file format", "[io]") {
    Grid2D g(16, 8, 2.0, 1.0);
    Field f(g);
    for (std::size_t i = 0; i < f.v.size(); ++i)
        f.v[i] = std::sin(double(i)) * 1e-3 + double(i);

    const fs::path p = temp_dir() / "snap.tfch";
    write_snapshot(p.string(), f, 0.9, 0.05, 2.5);

    SECTION("header and values round trip bit-exactly") {
        Snapshot s = read_snapshot(p.string());
        CHECK(s.version == 1);
        CHECK(s.nx == 16);
        CHECK(s.ny == 8);
        CHECK(s.alpha == 0.9);
        CHECK(s.epsilon == 0.05);
        CHECK(s.t == 2.5);
        REQUIRE(s.values.size() == f.v.size());
        for (std::size_t i = 0; i < f.v.size(); ++i)
            REQUIRE(s.values[i] == f.v[i]);

        const fs::path p2 = temp_dir() / "snap2.tfch";
        write_snapshot(p2.string(), s);
        CHECK(slurp(p) == slurp(p2));
    }

    SECTION("magic bytes are literal TFCH") {
        const std::string bytes = slurp(p);
        REQUIRE(bytes.size() >= 4);
        CHECK(bytes.substr(0, 4) == "TFCH");
    }

    SECTION("bad files are rejected") {
        const fs::path bad = temp_dir() / "bad.tfch";
        std::ofstream(bad) << "NOPE garbage";
        CHECK_THROWS_AS(read_snapshot(bad.string()), InputError);

        const fs::path trunc = temp_dir() / "trunc.tfch";
        const std::string bytes = slurp(p);
        std::ofstream(trunc, std::ios::binary)
            .write(bytes.data(), std::streamsize(bytes.size() / 2));
        CHECK_THROWS_AS(read_snapshot(trunc.string()), InputError);
    }
}

TEST_CASE("pgm mapping", "[io]") {
    const fs::path p = temp_dir() / "img.pgm";

    SECTION("u = 0 maps to 128 by round-half-up") {
        write_pgm(p.string(), 4, 2, std::vector<double>(8, 0.0));
        const std::string bytes = slurp(p);
        CHECK(bytes.substr(0, 9) == "P5\n4 2\n25");
        for (std::size_t i = bytes.size() - 8; i < bytes.size(); ++i)
            REQUIRE(static_cast<unsigned char>(bytes[i]) == 128);
    }

    SECTION("endpoints and clamping") {
        write_pgm(p.string(), 2, 1, {1.0, -1.0});
        std::string bytes = slurp(p);
        CHECK(static_cast<unsigned char>(bytes[bytes.size() - 2]) == 255);
        CHECK(static_cast<unsigned char>(bytes[bytes.size() - 1]) == 0);

        write_pgm(p.string(), 2, 1, {7.0, -3.0});
        bytes = slurp(p);
        CHECK(static_cast<unsigned char>(bytes[bytes.size() - 2]) == 255);
        CHECK(static_cast<unsigned char>(bytes[bytes.size() - 1]) == 0);
    }
}

TEST_CASE("csv reader", "[io]") {
    const fs::path p = temp_dir() / "table.csv";
    std::ofstream(p) << "t,y\n1.0,2.0\n2.0,4.0\n";
    CsvTable t = read_csv(p.string());
    CHECK(t.column("y")[1] == 4.0);
    CHECK_THROWS_AS(t.column("z"), InputError);

    std::ofstream(p) << "t,y\n1.0,abc\n";
    CHECK_THROWS_AS(read_csv(p.string()), InputError);
}

#ifdef TFCHE_BIN

TEST_CASE("cli: usage errors exit 1", "[io][cli]") {
    CHECK(cli("run /nonexistent/config.json").status == 1);
    CHECK(cli("nonsense-subcommand").status == 1);
    CHECK(cli("").status == 1);
}

TEST_CASE("cli: fit on a synthetic power law", "[io][cli]") {
    const fs::path csv = temp_dir() / "powerlaw.csv";
    {
        std::ofstream f(csv);
        f << "step,t,energy,mass,length_sf,length_energy\n";
        for (int i = 0; i < 30; ++i) {
            const double t = 0.5 * std::pow(1.3, i);
            f << i << "," << std::setprecision(17) << t << ","
              << 2.0 * std::pow(t, -0.3) << ",0,0,0\n";
        }
    }
    auto r = cli("fit " + csv.string() + " --column energy --t-lo 0.5 "
                 "--t-hi 1e6");
    REQUIRE(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["slope"].get<double>() + 0.3) < 1e-12);
    CHECK(j["r_squared"].get<double>() >= 1.0 - 1e-12);

    // window with too few points: error exit with a message on stderr
    auto bad = cli("fit " + csv.string() + " --column energy --t-lo 0.5 "
                   "--t-hi 0.7");
    CHECK(bad.status == 1);
    CHECK(!bad.err.empty());
}

TEST_CASE("cli: run is deterministic and honors TFCHE_OUT_DIR", "[io][cli]") {
    const fs::path cfg_path = temp_dir() / "run.json";
    const fs::path out1 = temp_dir() / "out1";
    const fs::path out2 = temp_dir() / "out2";
    fs::remove_all(out1);
    fs::remove_all(out2);
    {
        nlohmann::json j{
            {"alpha", 0.9},
            {"epsilon", 0.08},
            {"grid", {{"nx", 32}, {"ny", 32}, {"lx", 1.0}, {"ly", 1.0}}},
            {"dt", 1e-4},
            {"t_end", 2e-3},
            {"init",
             {{"kind", "random"}, {"seed", 42}, {"amplitude", 0.05}}},
            {"output",
             {{"dir", out1.string()},
              {"snapshot_every", 10},
              {"series_every", 5}}}};
        std::ofstream(cfg_path) << j.dump(2);
    }

    auto r1 = cli("run " + cfg_path.string());
    REQUIRE(r1.status == 0);
    REQUIRE(fs::exists(out1 / "series.csv"));
    REQUIRE(fs::exists(out1 / "snapshot_00000000.tfch"));
    REQUIRE(fs::exists(out1 / "snapshot_00000020.tfch"));

    // second run into another directory via the environment override
    setenv("TFCHE_OUT_DIR", out2.string().c_str(), 1);
    auto r2 = cli("run " + cfg_path.string());
    unsetenv("TFCHE_OUT_DIR");
    REQUIRE(r2.status == 0);
    REQUIRE(fs::exists(out2 / "series.csv"));

    CHECK(slurp(out1 / "series.csv") == slurp(out2 / "series.csv"));
    CHECK(slurp(out1 / "snapshot_00000020.tfch") ==
          slurp(out2 / "snapshot_00000020.tfch"));

    // snapshot -> pgm conversion on real output
    const fs::path pgm = temp_dir() / "snap.pgm";
    auto r3 = cli("snapshot " + (out1 / "snapshot_00000020.tfch").string() +
                  " --pgm " + pgm.string());
    CHECK(r3.status == 0);
    CHECK(slurp(pgm).substr(0, 2) == "P5");
}

TEST_CASE("cli: bench emits valid JSON at tiny sizes", "[io][cli]") {
    auto r = cli("bench --alpha 0.5 --steps 10 --tol 1e-6");
    REQUIRE(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["n_steps"].get<std::size_t>() == 10);
    CHECK(j["max_rel_diff"].get<double>() <= 1e-5);
    CHECK(j.contains("speedup"));
}

TEST_CASE("cli: check subcommand is green", "[io][cli]") {
    auto r = cli("check");
    CHECK(r.status == 0);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
}

#endif  // TFCHE_BIN
