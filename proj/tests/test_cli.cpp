#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "pwlab/cli.hpp"
#include "pwlab/errors.hpp"
#include "pwlab/report.hpp"
#include "pwlab/wavefield.hpp"

using namespace pwlab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("pwlab_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string write_config(const TempDir& dir, const std::string& name, const std::string& body) {
    const fs::path p = dir.path / name;
    std::ofstream out(p);
    out << body;
    return p.string();
}

}  // namespace

TEST_CASE("minimal config gets the documented defaults") {
    xp::ScenarioConfig c = cli::parse_config_text(R"({"kind":"bell"})");
    CHECK(c.kind == xp::Kind::bell);
    CHECK(c.phases.x == doctest::Approx(0.0));
    CHECK(c.phases.xp == doctest::Approx(std::numbers::pi / 2));
    CHECK(c.phases.y == doctest::Approx(-std::numbers::pi / 4));
    CHECK(c.phases.yp == doctest::Approx(std::numbers::pi / 4));
    CHECK(c.ensemble.n == 100000);
    CHECK(c.ensemble.seed == 1);

    xp::ScenarioConfig s = cli::parse_config_text(R"({"kind":"pointer-sweep"})");
    CHECK(s.sweep.param == "pointer.mass");
    CHECK(s.sweep.values.size() == 5);
    CHECK(s.pointer.present);
}

TEST_CASE("strict parsing: duplicates, unknown keys, bad values") {
    CHECK_THROWS_AS(cli::parse_config_text(R"({"kind":"bell","kind":"semi"})"), ConfigError);
    CHECK_THROWS_AS(cli::parse_config_text(R"({"kind":"bell","bogus":1})"), ConfigError);
    CHECK_THROWS_AS(cli::parse_config_text(R"({"kind":"warp"})"), ConfigError);
    CHECK_THROWS_AS(cli::parse_config_text(R"({})"), ConfigError);
    CHECK_THROWS_AS(cli::parse_config_text(R"(not json)"), ConfigError);
    CHECK_THROWS_AS(cli::parse_config_text(R"({"kind":"semi","phases":{"q":1}})"), ConfigError);
    CHECK_THROWS_AS(cli::parse_config_text(R"({"kind":"semi","kick":{"k":1,"region":[1]}})"),
                    ConfigError);
    CHECK_THROWS_AS(
        cli::parse_config_text(R"({"kind":"semi","kick":{"k":1,"sign_rule":"weird"}})"),
        ConfigError);
}

TEST_CASE("config fields land in the right places") {
    xp::ScenarioConfig c = cli::parse_config_text(R"({
        "kind": "semi",
        "grid": {"points": [512, 128], "extent": [48.0, 16.0], "dt": 0.004},
        "packets": [{"center": -5, "momentum": 4, "sigma": 1},
                    {"center": 5, "momentum": -4, "sigma": 1}],
        "kick": {"k": 2.5, "region": [-24, 0], "sign_rule": "plus-on-region", "t_apply": 0.0},
        "pointer": {"mass": 10, "sigma": 0.8},
        "ensemble": {"n": 1234, "seed": 99},
        "t_final": 6.5
    })");
    CHECK(c.grid.points[0] == 512);
    CHECK(c.grid.points[1] == 128);
    CHECK(c.grid.extent[1] == doctest::Approx(16.0));
    CHECK(c.grid.dt == doctest::Approx(0.004));
    CHECK(c.packets.size() == 2);
    CHECK(c.kick.strength == doctest::Approx(2.5));
    REQUIRE(c.kick.region.size() == 1);
    CHECK(c.kick.region[0].lo == doctest::Approx(-24.0));
    CHECK(c.pointer.present);
    CHECK(c.pointer.mass == doctest::Approx(10.0));
    CHECK(c.ensemble.n == 1234);
    CHECK(c.ensemble.seed == 99);
    CHECK(c.t_final == doctest::Approx(6.5));
}

TEST_CASE("config hash is stable under key reordering") {
    const std::string a = R"({"kind":"bell","ensemble":{"n":5,"seed":2}})";
    const std::string b = R"({"ensemble":{"seed":2,"n":5},"kind":"bell"})";
    CHECK(report::canonical_config_hash(a) == report::canonical_config_hash(b));
}

TEST_CASE("cli exit codes") {
    TempDir dir("exit");
    // unknown subcommand
    CHECK(cli::run({"frobnicate"}) == 2);
    // unknown format
    CHECK(cli::run({"bell", "--format", "yaml", "--out", (dir.path / "o1").string()}) == 2);
    // missing config file
    CHECK(cli::run({"bell", "--config", (dir.path / "none.json").string()}) == 2);
    // config kind mismatch
    const std::string bellcfg = write_config(dir, "bell.json", R"({"kind":"bell"})");
    CHECK(cli::run({"semi", "--config", bellcfg}) == 2);
    // physics violation: packet too narrow for the forced grid
    const std::string narrow = write_config(dir, "narrow.json", R"({
        "kind": "semi",
        "grid": {"points": 64, "extent": 64.0},
        "ensemble": {"n": 10}
    })");
    CHECK(cli::run({"semi", "--config", narrow, "--out", (dir.path / "o2").string()}) == 3);
    // sigma < 2 dx with everything else fine: the narrow-packet invariant
    const std::string thin = write_config(dir, "thin.json", R"({
        "kind": "semi",
        "grid": {"points": 512, "extent": 64.0},
        "packets": [{"center": -5, "momentum": 4, "sigma": 0.2},
                    {"center": 5, "momentum": -4, "sigma": 0.2}],
        "ensemble": {"n": 10}
    })");
    CHECK(cli::run({"semi", "--config", thin, "--out", (dir.path / "o3").string()}) == 3);
}

TEST_CASE("semi run end to end emits trajectories, samples and plots") {
    TempDir dir("semi");
    const std::string cfg = write_config(dir, "s.json", R"({
        "kind": "semi",
        "ensemble": {"n": 150, "seed": 4}
    })");
    const std::string out1 = (dir.path / "r1").string();
    const std::string out2 = (dir.path / "r2").string();
    for (const std::string& o : {out1, out2})
        REQUIRE(cli::run({"semi", "--config", cfg, "--format", "json,csv,svg", "--out", o,
                          "--quiet"}) == 0);
    for (const char* name :
         {"report.json", "trajectories.csv", "samples.csv", "semi.svg", "manifest.json"}) {
        CAPTURE(name);
        REQUIRE(fs::exists(fs::path(out1) / name));
        CHECK(slurp(fs::path(out1) / name) == slurp(fs::path(out2) / name));
    }
    std::ifstream in(fs::path(out1) / "trajectories.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "sample,t,x,y,flags");
}

TEST_CASE("bell run end to end writes deterministic outputs") {
    TempDir dir("bell");
    const std::string cfg =
        write_config(dir, "b.json", R"({"kind":"bell","ensemble":{"n":20000,"seed":3}})");
    const std::string out1 = (dir.path / "r1").string();
    const std::string out2 = (dir.path / "r2").string();
    const std::vector<std::string> base{"bell",     "--config", cfg,   "--format",
                                        "json,csv,svg", "--quiet"};
    auto with_out = [&](const std::string& o) {
        std::vector<std::string> v = base;
        v.push_back("--out");
        v.push_back(o);
        return v;
    };
    REQUIRE(cli::run(with_out(out1)) == 0);
    REQUIRE(cli::run(with_out(out2)) == 0);
    for (const char* name : {"report.json", "bell_tables.csv", "bell.svg", "manifest.json"}) {
        CAPTURE(name);
        REQUIRE(fs::exists(fs::path(out1) / name));
        CHECK(slurp(fs::path(out1) / name) == slurp(fs::path(out2) / name));
    }
}

TEST_CASE("two-time csv table has the documented 8 rows summing to 1") {
    TempDir dir("tt");
    const std::string cfg = write_config(
        dir, "t.json", R"({"kind":"two-time","ensemble":{"n":0,"seed":1}})");
    const std::string out = (dir.path / "r").string();
    REQUIRE(cli::run({"two-time", "--config", cfg, "--format", "csv", "--out", out,
                      "--quiet"}) == 0);
    std::ifstream in(fs::path(out) / "two_time_table.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "a,ap,b,p,empirical");
    double sum = 0.0;
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++rows;
        std::stringstream ss(line);
        std::string tok;
        for (int i = 0; i < 4; ++i) std::getline(ss, tok, ',');
        sum += std::stod(tok);
    }
    CHECK(rows == 8);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("seed override changes sampled outputs") {
    TempDir dir("seed");
    const std::string cfg =
        write_config(dir, "b.json", R"({"kind":"bell","ensemble":{"n":5000,"seed":3}})");
    const std::string o1 = (dir.path / "a").string(), o2 = (dir.path / "b").string();
    REQUIRE(cli::run({"bell", "--config", cfg, "--out", o1, "--quiet"}) == 0);
    REQUIRE(cli::run({"bell", "--config", cfg, "--seed", "4", "--out", o2, "--quiet"}) == 0);
    CHECK(slurp(fs::path(o1) / "report.json") != slurp(fs::path(o2) / "report.json"));
}

TEST_CASE("field snapshot round trip") {
    TempDir dir("field");
    wave::Grid g;
    g.dims = 2;
    g.axis[0] = {128, 32.0, 1.0};
    g.axis[1] = {64, 16.0, 2.0};
    g.dt = 0.01;
    wave::WaveField f = wave::init_gaussian(g, {1.0, 0.5, 1.5}, {0.0, 0.0, 1.0});
    f.time = 3.25;
    const std::string path = (dir.path / "snap.pwfd").string();
    report::save_field(f, path);
    REQUIRE(fs::exists(path));
    REQUIRE(fs::exists(path + ".json"));
    wave::WaveField g2 = report::load_field(path);
    CHECK(g2.grid == f.grid);
    CHECK(g2.time == f.time);
    REQUIRE(g2.amps.size() == f.amps.size());
    for (std::size_t i = 0; i < f.amps.size(); ++i) CHECK(g2.amps[i] == f.amps[i]);
}
