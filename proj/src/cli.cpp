#include "pwlab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pwlab/coherent.hpp"
#include "pwlab/errors.hpp"
#include "pwlab/fft.hpp"
#include "pwlab/kernels.hpp"
#include "pwlab/parallel.hpp"
#include "pwlab/report.hpp"
#include "pwlab/rng.hpp"

namespace pwlab::cli {

using nlohmann::json;

namespace {

// --- strict JSON: duplicate-key detection via a SAX pass ---------------

class DupKeySax : public nlohmann::json_sax<json> {
  public:
    bool null() override { return true; }
    bool boolean(bool) override { return true; }
    bool number_integer(number_integer_t) override { return true; }
    bool number_unsigned(number_unsigned_t) override { return true; }
    bool number_float(number_float_t, const string_t&) override { return true; }
    bool string(string_t&) override { return true; }
    bool binary(binary_t&) override { return true; }
    bool start_object(std::size_t) override {
        stack_.emplace_back();
        return true;
    }
    bool key(string_t& val) override {
        if (!stack_.back().insert(val).second)
            throw ConfigError("duplicate key in config: \"" + val + "\"");
        return true;
    }
    bool end_object() override {
        stack_.pop_back();
        return true;
    }
    bool start_array(std::size_t) override { return true; }
    bool end_array() override { return true; }
    bool parse_error(std::size_t pos, const std::string&,
                     const nlohmann::detail::exception& ex) override {
        throw ConfigError("config is not valid JSON at byte " + std::to_string(pos) + ": " +
                          ex.what());
    }

  private:
    std::vector<std::set<std::string>> stack_;
};

void reject_unknown_keys(const json& j, const std::string& where,
                         const std::set<std::string>& allowed) {
    for (const auto& [key, _] : j.items())
        if (!allowed.contains(key))
            throw ConfigError("unknown key \"" + key + "\" in " + where);
}

double num_at(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigError(std::string(key) + " must be a number");
    return j.at(key).get<double>();
}

}  // namespace

xp::ScenarioConfig parse_config_text(const std::string& text) {
    {
        DupKeySax sax;
        json::sax_parse(text, &sax);
    }
    json j = json::parse(text);
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    reject_unknown_keys(j, "config", {"kind", "phases", "grid", "packets", "kick", "pointer",
                                      "ensemble", "t_final", "sweep"});
    if (!j.contains("kind")) throw ConfigError("config must name a kind");
    const std::string kind = j.at("kind").get<std::string>();
    xp::Kind k;
    if (kind == "bell")
        k = xp::Kind::bell;
    else if (kind == "two-time")
        k = xp::Kind::two_time;
    else if (kind == "semi")
        k = xp::Kind::semi;
    else if (kind == "pointer-sweep")
        k = xp::Kind::pointer_sweep;
    else
        throw ConfigError("unknown kind \"" + kind + "\"");

    xp::ScenarioConfig c = xp::ScenarioConfig::defaults(k);

    if (j.contains("phases")) {
        const json& p = j.at("phases");
        reject_unknown_keys(p, "phases", {"x", "xp", "y", "yp"});
        c.phases.x = num_at(p, "x", c.phases.x);
        c.phases.xp = num_at(p, "xp", c.phases.xp);
        c.phases.y = num_at(p, "y", c.phases.y);
        c.phases.yp = num_at(p, "yp", c.phases.yp);
    }
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        reject_unknown_keys(g, "grid", {"points", "extent", "dt"});
        if (g.contains("points")) {
            if (g.at("points").is_array()) {
                auto v = g.at("points").get<std::vector<int>>();
                if (v.empty() || v.size() > 2) throw ConfigError("grid.points needs 1 or 2 values");
                c.grid.points[0] = v[0];
                c.grid.points[1] = v.size() > 1 ? v[1] : v[0];
            } else {
                c.grid.points[0] = c.grid.points[1] = g.at("points").get<int>();
            }
        }
        if (g.contains("extent")) {
            if (g.at("extent").is_array()) {
                auto v = g.at("extent").get<std::vector<double>>();
                if (v.empty() || v.size() > 2) throw ConfigError("grid.extent needs 1 or 2 values");
                c.grid.extent[0] = v[0];
                c.grid.extent[1] = v.size() > 1 ? v[1] : v[0];
            } else {
                c.grid.extent[0] = c.grid.extent[1] = g.at("extent").get<double>();
            }
        }
        c.grid.dt = num_at(g, "dt", c.grid.dt);
    }
    if (j.contains("packets")) {
        c.packets.clear();
        for (const json& p : j.at("packets")) {
            reject_unknown_keys(p, "packets[]", {"center", "momentum", "sigma"});
            wave::PacketSpec s;
            s.center = num_at(p, "center", 0.0);
            s.momentum = num_at(p, "momentum", 0.0);
            s.sigma = num_at(p, "sigma", 1.0);
            c.packets.push_back(s);
        }
    }
    if (j.contains("kick")) {
        const json& q = j.at("kick");
        reject_unknown_keys(q, "kick", {"k", "region", "sign_rule", "t_apply"});
        c.kick.strength = num_at(q, "k", c.kick.strength);
        c.kick.t_apply = num_at(q, "t_apply", c.kick.t_apply);
        if (q.contains("sign_rule")) {
            const std::string r = q.at("sign_rule").get<std::string>();
            if (r == "plus-on-region")
                c.kick.rule = wave::SignRule::plus_on_region;
            else if (r == "plus-minus-split")
                c.kick.rule = wave::SignRule::plus_minus_split;
            else
                throw ConfigError("kick.sign_rule must be plus-on-region or plus-minus-split");
        }
        if (q.contains("region")) {
            c.kick.region.clear();
            const json& reg = q.at("region");
            if (!reg.is_array() || reg.empty()) throw ConfigError("kick.region must be an array");
            if (reg.front().is_array()) {
                for (const json& iv : reg) {
                    auto v = iv.get<std::vector<double>>();
                    if (v.size() != 2) throw ConfigError("kick.region intervals need [lo, hi]");
                    c.kick.region.push_back({v[0], v[1]});
                }
            } else {
                auto v = reg.get<std::vector<double>>();
                if (v.size() != 2) throw ConfigError("kick.region needs [lo, hi]");
                c.kick.region.push_back({v[0], v[1]});
            }
        }
        if (c.kick.strength > 0.0) c.pointer.present = true;
    }
    if (j.contains("pointer")) {
        const json& p = j.at("pointer");
        reject_unknown_keys(p, "pointer", {"mass", "sigma"});
        c.pointer.present = true;
        c.pointer.mass = num_at(p, "mass", c.pointer.mass);
        c.pointer.sigma = num_at(p, "sigma", c.pointer.sigma);
        if (c.kick.strength <= 0.0) c.kick.strength = 4.0;
    }
    if (j.contains("ensemble")) {
        const json& e = j.at("ensemble");
        reject_unknown_keys(e, "ensemble", {"n", "seed"});
        if (e.contains("n")) c.ensemble.n = e.at("n").get<long>();
        if (e.contains("seed")) c.ensemble.seed = e.at("seed").get<std::uint64_t>();
    }
    c.t_final = num_at(j, "t_final", c.t_final);
    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        reject_unknown_keys(s, "sweep", {"param", "values"});
        if (s.contains("param")) c.sweep.param = s.at("param").get<std::string>();
        if (s.contains("values")) c.sweep.values = s.at("values").get<std::vector<double>>();
    }
    return c;
}

xp::ScenarioConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file not found: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config_text(buf.str());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config schema violation: ") + e.what());
    }
}

std::string config_to_json(const xp::ScenarioConfig& c) {
    json j;
    j["kind"] = xp::kind_name(c.kind);
    j["phases"] = {{"x", c.phases.x}, {"xp", c.phases.xp}, {"y", c.phases.y}, {"yp", c.phases.yp}};
    j["grid"] = {{"points", {c.grid.points[0], c.grid.points[1]}},
                 {"extent", {c.grid.extent[0], c.grid.extent[1]}},
                 {"dt", c.grid.dt}};
    j["packets"] = json::array();
    for (const auto& p : c.packets)
        j["packets"].push_back(
            {{"center", p.center}, {"momentum", p.momentum}, {"sigma", p.sigma}});
    json region = json::array();
    for (const auto& iv : c.kick.region) region.push_back({iv.lo, iv.hi});
    j["kick"] = {{"k", c.kick.strength},
                 {"region", region},
                 {"sign_rule", c.kick.rule == wave::SignRule::plus_on_region
                                   ? "plus-on-region"
                                   : "plus-minus-split"},
                 {"t_apply", c.kick.t_apply}};
    j["pointer"] = {{"present", c.pointer.present},
                    {"mass", c.pointer.mass},
                    {"sigma", c.pointer.sigma}};
    j["ensemble"] = {{"n", c.ensemble.n}, {"seed", c.ensemble.seed}};
    j["t_final"] = c.t_final;
    j["sweep"] = {{"param", c.sweep.param}, {"values", c.sweep.values}};
    return j.dump(2);
}

// --- check suite ------------------------------------------------------------

namespace {

struct CheckLine {
    std::string name;
    bool pass;
    std::string detail;
};

void run_fast_checks(std::vector<CheckLine>& out) {
    using namespace pwlab::mode;
    constexpr double pi = std::numbers::pi;

    // unitarity of phases + splitters over seeded random states
    {
        std::mt19937_64 g(42);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            ModeState s;
            for (auto& a : s.amps) a = {u01(g) - 0.5, u01(g) - 0.5};
            s = s.normalized();
            ModeState t = apply_beamsplitter(
                apply_phase(apply_phase(s, 1, u01(g) * 2 * pi), 4, u01(g) * 2 * pi),
                Side::alice);
            t = apply_beamsplitter(t, Side::bob);
            worst = std::max(worst, std::abs(t.norm_sq() - 1.0));
        }
        out.push_back({"mode unitarity (100 random states)", worst < 1e-12,
                       "max |norm-1| = " + std::to_string(worst)});
    }
    // coincidence law on a grid
    {
        double worst = 0.0;
        for (int i = 0; i < 10; ++i)
            for (int jj = 0; jj < 10; ++jj) {
                const double x = 2 * pi * i / 10.0, y = 2 * pi * jj / 10.0;
                ModeState s = make_bell_state();
                s = apply_phase(s, 1, x);
                s = apply_phase(s, 4, y);
                s = apply_beamsplitter(s, Side::alice);
                s = apply_beamsplitter(s, Side::bob);
                CoincidenceTable t = detection_probs(s);
                const double minus = (1.0 - std::cos(x + y)) / 4.0;
                const double plus = (1.0 + std::cos(x + y)) / 4.0;
                worst = std::max({worst, std::abs(t.at(1, 4) - minus),
                                  std::abs(t.at(2, 3) - minus), std::abs(t.at(1, 3) - plus),
                                  std::abs(t.at(2, 4) - plus)});
            }
        out.push_back({"coincidence law (100-point grid)", worst < 1e-12,
                       "max dev = " + std::to_string(worst)});
    }
    // CHSH at optimal angles and Tsirelson scan
    {
        const double s_opt = chsh(0.0, pi / 2.0, -pi / 4.0, pi / 4.0);
        const bool p1 = std::abs(s_opt - 2.0 * std::sqrt(2.0)) < 1e-9;
        std::mt19937_64 g(7);
        double smax = 0.0;
        for (int i = 0; i < 10000; ++i)
            smax = std::max(smax, std::abs(chsh(u01(g) * 2 * pi, u01(g) * 2 * pi,
                                                u01(g) * 2 * pi, u01(g) * 2 * pi)));
        const bool p2 = smax <= 2.0 * std::sqrt(2.0) + 1e-9;
        out.push_back({"CHSH optimal + Tsirelson scan", p1 && p2,
                       "S_opt = " + std::to_string(s_opt) + ", scan max = " +
                           std::to_string(smax)});
    }
    // two-time marginals and signalling gap
    {
        using namespace pwlab::joint;
        double worst = 0.0;
        std::mt19937_64 g(11);
        for (int i = 0; i < 100; ++i) {
            TwoTimeJoint t =
                two_time_joint(u01(g) * 2 * pi, u01(g) * 2 * pi, u01(g) * 2 * pi);
            worst = std::max(worst, std::abs(t.sum() - 1.0));
        }
        const std::vector<double> grid{0.0, pi / 2.0};
        const double gap = signalling_gap(0.0, 0.0, grid);
        const bool pass = worst < 1e-12 && std::abs(gap - 0.25) < 1e-12;
        out.push_back({"two-time normalization + signalling gap", pass,
                       "gap(0,0;{0,pi/2}) = " + std::to_string(gap)});
    }
    // sampler law
    {
        using namespace pwlab::joint;
        const double x = pi / 3, xp = pi / 5, y = pi / 7;
        TwoTimeJoint t = two_time_joint(x, xp, y);
        std::array<double, 8> emp{};
        const long n = 100000;
        for (long i = 0; i < n; ++i) {
            OutcomeTriple o = sample_outcome(x, xp, y, 1, i);
            emp[TwoTimeJoint::index(o.a, o.ap, o.b)] += 1.0;
        }
        double l1 = 0.0;
        for (int i = 0; i < 8; ++i) l1 += std::abs(emp[i] / n - t.p[i]);
        out.push_back(
            {"sampler vs closed form (N=1e5)", l1 < 0.01, "L1 = " + std::to_string(l1)});
    }
    // CHSH from samples
    {
        auto est = joint::chsh_from_samples(0.0, pi / 2.0, -pi / 4.0, pi / 4.0, 100000, 1);
        const bool pass = std::abs(est.s - 2.0 * std::sqrt(2.0)) < 3.0 * est.stderr_s &&
                          (est.s - 2.0) / est.stderr_s > 5.0;
        out.push_back({"CHSH Monte Carlo (N=1e5/pair)", pass,
                       "S = " + std::to_string(est.s) + " +- " + std::to_string(est.stderr_s)});
    }
    // EBS
    {
        using namespace pwlab::mode;
        CoherentTwoMode in = CoherentTwoMode::product({2.0, 0.0}, {0.0, 0.0});
        CoherentTwoMode once = ebs_transform(in);
        CoherentTwoMode twice = ebs_transform(once);
        CoherentTwoMode target = CoherentTwoMode::product({0.0, 0.0}, {2.0, 0.0});
        const double f_complete = fidelity(twice, target);
        const double f_classical = fidelity(once, classical_bs_transform(in));
        const bool pass = std::abs(f_complete - 1.0) < 1e-12 && f_classical < 1.0 &&
                          std::abs(once.norm() - 1.0) < 1e-12;
        out.push_back({"EBS completeness + divergence from classical BS", pass,
                       "fid(EBS^2, i|0,a>) = " + std::to_string(f_complete) +
                           ", fid(EBS, classical) = " + std::to_string(f_classical)});
    }
    // kernel parity serial vs omp
    {
        std::mt19937_64 g(3);
        const int nx = 64, ny = 64;
        fft::avector<std::complex<double>> a(nx * ny), b(a.size());
        for (auto& v : a) v = {u01(g) - 0.5, u01(g) - 0.5};
        b = a;
        fft::forward_2d(a.data(), nx, ny);
        fft::forward_2d_serial(b.data(), nx, ny);
        double worst = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
        out.push_back({"2D FFT parallel vs serial reference", worst < 1e-10,
                       "max |diff| = " + std::to_string(worst)});
    }
}

void run_full_checks(std::vector<CheckLine>& out) {
    // continuum regimes at production scale
    auto semi = xp::ScenarioConfig::defaults(xp::Kind::semi);
    auto rep = xp::run_semi(semi);
    out.push_back({"semi (no pointer): all bounce",
                   rep.bounce_fraction == 1.0 && rep.config_space_crossings == 0,
                   "bounce = " + std::to_string(rep.bounce_fraction)});
    out.push_back({"semi (no pointer): detector anti-correlation",
                   rep.detector_path_anticorrelation == 1.0,
                   std::to_string(rep.detector_path_anticorrelation)});
    out.push_back({"semi (no pointer): equivariance", rep.ks_pass,
                   "KS = " + std::to_string(rep.ks_max) + " < " + std::to_string(rep.ks_limit)});

    xp::ScenarioConfig fast_cfg = xp::ScenarioConfig::defaults(xp::Kind::semi);
    fast_cfg.pointer = {true, 1.0, 0.8};
    fast_cfg.kick.strength = 8.0;
    auto fast = xp::run_semi(fast_cfg);
    out.push_back({"fast pointer: crossings dominate",
                   fast.bounce_fraction <= 0.01 && fast.pointer_path_correlation > 0.99,
                   "bounce = " + std::to_string(fast.bounce_fraction) +
                       ", corr = " + std::to_string(fast.pointer_path_correlation)});

    xp::ScenarioConfig slow_cfg = xp::ScenarioConfig::defaults(xp::Kind::semi);
    slow_cfg.pointer = {true, 150.0, 0.8};
    slow_cfg.kick.strength = 4.0;
    slow_cfg.kick.t_apply = 0.75;
    auto slow = xp::run_semi(slow_cfg);
    out.push_back({"slow pointer: bounce + surrealism",
                   slow.bounce_fraction >= 0.99 && slow.surrealism,
                   "bounce = " + std::to_string(slow.bounce_fraction) +
                       ", corr = " + std::to_string(slow.pointer_path_correlation)});

    auto sweep = xp::ScenarioConfig::defaults(xp::Kind::pointer_sweep);
    auto reps = xp::run_pointer_sweep(sweep);
    bool intermediate = false;
    for (const auto& r : reps)
        if (r.bounce_fraction > 0.05 && r.bounce_fraction < 0.95 && r.bounce_ci.lo > 0.05 &&
            r.bounce_ci.hi < 0.95)
            intermediate = true;
    out.push_back({"intermediate regime exists", intermediate, ""});
    bool equis = true;
    for (const auto& r : reps) equis = equis && r.ks_pass;
    out.push_back({"equivariance across sweep", equis, ""});
}

int do_check(bool full, bool quiet) {
    std::vector<CheckLine> lines;
    run_fast_checks(lines);
    if (full) run_full_checks(lines);
    bool all = true;
    for (const auto& l : lines) {
        all = all && l.pass;
        if (!quiet || !l.pass)
            std::printf("[%s] %s%s%s\n", l.pass ? "PASS" : "FAIL", l.name.c_str(),
                        l.detail.empty() ? "" : " -- ", l.detail.c_str());
    }
    if (!all) std::printf("check: FAILED\n");
    return all ? 0 : 4;
}

report::EmitOptions make_emit_options(const std::string& out_dir, const std::string& formats,
                                      bool dump_fields, bool quiet) {
    report::EmitOptions o;
    o.out_dir = out_dir;
    o.json = false;
    o.dump_fields = dump_fields;
    o.quiet = quiet;
    std::stringstream ss(formats);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "json")
            o.json = true;
        else if (item == "csv")
            o.csv = true;
        else if (item == "svg")
            o.svg = true;
        else if (!item.empty())
            throw ConfigError("unknown format \"" + item + "\" (expected json,csv,svg)");
    }
    if (!o.json && !o.csv && !o.svg) o.json = true;
    return o;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    try {
        CLI::App app{"pwlab -- pilot-wave dynamics in interferometric Bell tests"};
        app.fallthrough(true);
        std::string config_path, out_dir = "out", formats = "json";
        std::uint64_t seed = 0;
        int threads = 0;
        bool quiet = false, dump_fields = false, full = false;
        app.add_option("--config", config_path, "scenario config (JSON)");
        app.add_option("--seed", seed, "override ensemble seed");
        app.add_option("--out", out_dir, "output directory")->capture_default_str();
        app.add_option("--format", formats, "comma list of json,csv,svg")->capture_default_str();
        app.add_option("--threads", threads, "worker threads (default: PWLAB_THREADS or cores)");
        app.add_flag("--quiet", quiet, "suppress progress output");

        CLI::App* cmd_bell = app.add_subcommand("bell", "mode-level Bell test");
        CLI::App* cmd_tt = app.add_subcommand("two-time", "two-time joint statistics");
        CLI::App* cmd_semi = app.add_subcommand("semi", "semi-interferometer trajectories");
        cmd_semi->add_flag("--dump-fields", dump_fields, "export field snapshots");
        CLI::App* cmd_sweep = app.add_subcommand("pointer-sweep", "pointer regime sweep");
        CLI::App* cmd_check = app.add_subcommand("check", "run the invariant suite");
        cmd_check->add_flag("--full", full, "include the continuum scenarios (slow)");
        app.require_subcommand(1);

        std::vector<std::string> rev(args.rbegin(), args.rend());
        try {
            app.parse(rev);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            std::cerr << e.what() << "\n" << app.help() << "\n";
            return 2;
        }

        pwlab::set_threads(threads > 0 ? threads : pwlab::default_threads());

        if (cmd_check->parsed()) return do_check(full, quiet);

        xp::Kind kind = xp::Kind::bell;
        if (cmd_tt->parsed()) kind = xp::Kind::two_time;
        if (cmd_semi->parsed()) kind = xp::Kind::semi;
        if (cmd_sweep->parsed()) kind = xp::Kind::pointer_sweep;

        xp::ScenarioConfig cfg =
            config_path.empty() ? xp::ScenarioConfig::defaults(kind) : parse_config(config_path);
        if (cfg.kind != kind)
            throw ConfigError("config kind \"" + xp::kind_name(cfg.kind) +
                              "\" does not match subcommand");
        if (app.count("--seed") > 0) cfg.ensemble.seed = seed;

        const std::string config_json = config_to_json(cfg);
        report::EmitOptions opts = make_emit_options(out_dir, formats, dump_fields, quiet);

        std::vector<std::string> files;
        switch (kind) {
            case xp::Kind::bell: {
                auto rep = xp::run_bell(cfg);
                files = report::emit_bell(rep, config_json, opts);
                if (!quiet)
                    std::printf("chsh analytic = %.7f%s\n", rep.chsh_analytic,
                                rep.sampled ? (" sampled = " + std::to_string(rep.mc.s)).c_str()
                                            : "");
                break;
            }
            case xp::Kind::two_time: {
                auto rep = xp::run_two_time(cfg);
                files = report::emit_two_time(rep, config_json, opts);
                if (!quiet)
                    std::printf("no-signalling %s, gap = %.6f\n",
                                rep.no_signalling_pass ? "ok" : "VIOLATED",
                                rep.signalling_gap_value);
                break;
            }
            case xp::Kind::semi: {
                auto res = xp::run_semi_full(cfg);
                files = report::emit_semi(res, config_json, opts);
                if (!quiet)
                    std::printf("bounce fraction = %.4f (regime %s)\n",
                                res.report.bounce_fraction, res.report.regime.c_str());
                break;
            }
            case xp::Kind::pointer_sweep: {
                auto reps = xp::run_pointer_sweep(cfg);
                files = report::emit_sweep(reps, cfg.sweep.values, config_json, opts);
                if (!quiet)
                    for (const auto& r : reps)
                        std::printf("tau/T = %-8.3f bounce = %.4f  regime = %s\n", r.tau_ratio,
                                    r.bounce_fraction, r.regime.c_str());
                break;
            }
        }
        if (!quiet)
            for (const auto& f : files) std::printf("wrote %s\n", f.c_str());
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const PhysicsError& e) {
        std::cerr << "invalid physics config: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace pwlab::cli
