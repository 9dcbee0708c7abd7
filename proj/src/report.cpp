#include "pwlab/report.hpp"

#include <chrono>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>

#include <json.hpp>

#include "pwlab/errors.hpp"
#include "pwlab/svg.hpp"

namespace pwlab::report {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr long kMaxTrajectoryRows = 256;  // samples exported to trajectories.csv

void write_text(const std::string& path, const std::string& content) {
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path);
    out << content;
}

std::string now_iso() {
    const auto t = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(t);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    return buf;
}

json phases_json(const xp::Phases& p) {
    return json{{"x", p.x}, {"xp", p.xp}, {"y", p.y}, {"yp", p.yp}};
}

json regime_json(const xp::RegimeReport& r) {
    return json{{"kick_strength", r.kick_strength},
                {"pointer_mass", r.pointer_mass},
                {"pointer_sigma", r.pointer_sigma},
                {"pointer_present", r.pointer_present},
                {"tau", r.pointer_present ? json(r.tau) : json()},
                {"t_cross", r.t_cross},
                {"tau_ratio", r.tau_ratio},
                {"t_read", r.t_read},
                {"t_final", r.t_final},
                {"regime", r.regime},
                {"n_samples", r.n_samples},
                {"n_bounced", r.n_bounced},
                {"n_crossed", r.n_crossed},
                {"n_inconclusive", r.n_inconclusive},
                {"n_trapped", r.n_trapped},
                {"bounce_fraction", r.bounce_fraction},
                {"bounce_ci", {r.bounce_ci.lo, r.bounce_ci.hi}},
                {"pointer_path_correlation",
                 r.pointer_present ? json(r.pointer_path_correlation) : json()},
                {"surrealism", r.pointer_present ? json(r.surrealism) : json()},
                {"detector_path_anticorrelation", r.detector_path_anticorrelation},
                {"ks_max", r.ks_max},
                {"ks_limit", r.ks_limit},
                {"ks_pass", r.ks_pass},
                {"config_space_crossings", r.config_space_crossings},
                {"shadow_crossings", r.shadow_crossings},
                {"trapped_rate", r.trapped_rate},
                {"norm_drift", r.norm_drift},
                {"readout_distinguishability", r.readout_distinguishability},
                {"seed", r.seed}};
}

void write_manifest(const std::string& out_dir, const std::string& config_json,
                    std::uint64_t seed, const json& verdicts, std::vector<std::string>& files) {
    json m{{"config_hash", canonical_config_hash(config_json)},
           {"seed", seed},
           {"version", kVersion},
           {"verdicts", verdicts}};
    const std::string path = out_dir + "/manifest.json";
    write_text(path, m.dump(2) + "\n");
    files.push_back(path);
    // wall-clock record lives outside the reproducible file set
    const std::string log = out_dir + "/run.log";
    write_text(log, "finished " + now_iso() + "\n");
    files.push_back(log);
}

std::string csv_num(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

}  // namespace

std::string canonical_config_hash(const std::string& config_json) {
    // round-trip through sorted-key serialization, then FNV-1a 64
    const std::string canon = json::parse(config_json).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream s;
    s << std::hex << std::setfill('0') << std::setw(16) << h;
    return s.str();
}

// --- bell -------------------------------------------------------------

std::vector<std::string> emit_bell(const xp::BellReport& rep, const std::string& config_json,
                                   const EmitOptions& opts) {
    std::vector<std::string> files;
    json j{{"kind", "bell"},
           {"phases", phases_json(rep.phases)},
           {"chsh_analytic", rep.chsh_analytic},
           {"analytic_correlators", rep.analytic_correlators},
           {"sampled", rep.sampled},
           {"seed", rep.seed}};
    const char* pair_names[4] = {"x_y", "x_yp", "xp_y", "xp_yp"};
    for (int k = 0; k < 4; ++k) {
        const auto& t = rep.analytic_tables[k];
        j["tables"][pair_names[k]] = {{"P13", t.at(1, 3)},
                                      {"P14", t.at(1, 4)},
                                      {"P23", t.at(2, 3)},
                                      {"P24", t.at(2, 4)}};
    }
    if (rep.sampled) {
        j["mc"] = {{"s", rep.mc.s},
                   {"stderr", rep.mc.stderr_s},
                   {"n_per_pair", rep.mc.n_per_pair},
                   {"correlators", rep.mc.correlators},
                   {"agree_3sigma", rep.agree_3sigma}};
    }
    if (opts.json) {
        write_text(opts.out_dir + "/report.json", j.dump(2) + "\n");
        files.push_back(opts.out_dir + "/report.json");
    }
    if (opts.csv) {
        std::ostringstream csv;
        csv << "pair,P13,P14,P23,P24,E\n";
        for (int k = 0; k < 4; ++k) {
            const auto& t = rep.analytic_tables[k];
            csv << pair_names[k] << "," << csv_num(t.at(1, 3)) << "," << csv_num(t.at(1, 4))
                << "," << csv_num(t.at(2, 3)) << "," << csv_num(t.at(2, 4)) << ","
                << csv_num(rep.analytic_correlators[k]) << "\n";
        }
        write_text(opts.out_dir + "/bell_tables.csv", csv.str());
        files.push_back(opts.out_dir + "/bell_tables.csv");
    }
    if (opts.svg) {
        svg::Plot plot(520, 320, "coincidence probabilities per setting pair", "detector pair",
                       "P");
        plot.set_range(-0.5, 15.5, 0.0, 1.0);
        const char* colors[4] = {"#4477aa", "#ee6677", "#228833", "#ccbb44"};
        for (int k = 0; k < 4; ++k) {
            const auto& t = rep.analytic_tables[k];
            const double v[4] = {t.at(1, 3), t.at(1, 4), t.at(2, 3), t.at(2, 4)};
            const char* lab[4] = {"13", "14", "23", "24"};
            for (int i = 0; i < 4; ++i)
                plot.bar(k * 4 + i, 0.8, v[i], colors[k], k == 0 ? lab[i] : "");
        }
        write_text(opts.out_dir + "/bell.svg", plot.render());
        files.push_back(opts.out_dir + "/bell.svg");
    }
    json verdicts{{"mc_agrees_3sigma", !rep.sampled || rep.agree_3sigma}};
    write_manifest(opts.out_dir, config_json, rep.seed, verdicts, files);
    return files;
}

// --- two-time -----------------------------------------------------------

std::vector<std::string> emit_two_time(const xp::TwoTimeReport& rep,
                                       const std::string& config_json, const EmitOptions& opts) {
    std::vector<std::string> files;
    json j{{"kind", "two-time"},
           {"phases", phases_json(rep.phases)},
           {"joint", rep.joint_table.p},
           {"table_sum", rep.table_sum},
           {"marginal_first", rep.first.p},
           {"marginal_second", rep.second.p},
           {"alice_two_time", rep.alice.p},
           {"marginal_first_xp_dev", rep.marginal_first_xp_dev},
           {"marginal_second_x_dev", rep.marginal_second_x_dev},
           {"no_signalling_pass", rep.no_signalling_pass},
           {"signalling_gap", rep.signalling_gap_value},
           {"sampled", rep.sampled},
           {"seed", rep.seed}};
    if (rep.sampled) {
        j["mc"] = {{"n", rep.n_samples},
                   {"empirical", rep.empirical},
                   {"l1_distance", rep.l1_distance},
                   {"l1_pass", rep.l1_pass}};
    }
    if (opts.json) {
        write_text(opts.out_dir + "/report.json", j.dump(2) + "\n");
        files.push_back(opts.out_dir + "/report.json");
    }
    if (opts.csv) {
        std::ostringstream csv;
        csv << "a,ap,b,p,empirical\n";
        for (int a = 1; a <= 2; ++a)
            for (int ap = 1; ap <= 2; ++ap)
                for (int b = 3; b <= 4; ++b) {
                    const int idx = joint::TwoTimeJoint::index(a, ap, b);
                    csv << a << "," << ap << "," << b << "," << csv_num(rep.joint_table.p[idx])
                        << "," << csv_num(rep.sampled ? rep.empirical[idx] : 0.0) << "\n";
                }
        write_text(opts.out_dir + "/two_time_table.csv", csv.str());
        files.push_back(opts.out_dir + "/two_time_table.csv");
    }
    if (opts.svg) {
        svg::Plot plot(520, 320, "two-time joint law P(a,a',b)", "(a,a',b)", "P");
        plot.set_range(-0.5, 7.5, 0.0, 1.0);
        for (int a = 1; a <= 2; ++a)
            for (int ap = 1; ap <= 2; ++ap)
                for (int b = 3; b <= 4; ++b) {
                    const int idx = joint::TwoTimeJoint::index(a, ap, b);
                    std::string lab = std::to_string(a) + std::to_string(ap) + std::to_string(b);
                    plot.bar(idx, 0.8, rep.joint_table.p[idx], "#4477aa", lab);
                    if (rep.sampled) plot.marker(idx, rep.empirical[idx], "#ee6677", 2.5);
                }
        write_text(opts.out_dir + "/two_time.svg", plot.render());
        files.push_back(opts.out_dir + "/two_time.svg");
    }
    json verdicts{{"no_signalling", rep.no_signalling_pass},
                  {"sampler_l1", !rep.sampled || rep.l1_pass}};
    write_manifest(opts.out_dir, config_json, rep.seed, verdicts, files);
    return files;
}

// --- semi ----------------------------------------------------------------

std::vector<std::string> emit_semi(const xp::SemiResult& res, const std::string& config_json,
                                   const EmitOptions& opts) {
    std::vector<std::string> files;
    json j{{"kind", "semi"}, {"report", regime_json(res.report)}};
    j["setup"] = {{"meeting_point", res.setup.meeting_point},
                  {"t_meet", res.setup.t_meet},
                  {"grid_points", {res.setup.grid.nx(), res.setup.grid.ny()}},
                  {"grid_extent", {res.setup.grid.axis[0].extent,
                                   res.setup.grid.dims == 2 ? res.setup.grid.axis[1].extent : 0.0}},
                  {"dt", res.setup.grid.dt}};
    if (opts.json) {
        write_text(opts.out_dir + "/report.json", j.dump(2) + "\n");
        files.push_back(opts.out_dir + "/report.json");
    }
    const auto& hist = res.history;
    const long n = res.ensemble.size();
    if (opts.csv) {
        // per-(sample,time) rows, capped sample count; columns documented
        // in README: sample, t, x, y, flags bitmask
        std::ostringstream csv;
        csv << "sample,t,x,y,flags\n";
        const long cap = std::min<long>(n, kMaxTrajectoryRows);
        for (long i = 0; i < cap; ++i) {
            const auto& fl = res.ensemble.flags[i];
            const int flags = (fl.node_events > 0 ? 1 : 0) | (fl.trapped ? 2 : 0) |
                              (fl.wrapped ? 4 : 0) | (fl.duplicate_start ? 8 : 0);
            for (long ti = 0; ti < hist.n_times(); ++ti)
                csv << i << "," << csv_num(hist.times[ti]) << ","
                    << csv_num(hist.positions[ti][i][0]) << ","
                    << csv_num(res.setup.grid.dims == 2 ? hist.positions[ti][i][1] : 0.0) << ","
                    << flags << "\n";
        }
        write_text(opts.out_dir + "/trajectories.csv", csv.str());
        files.push_back(opts.out_dir + "/trajectories.csv");

        std::ostringstream sm;
        sm << "sample,x0,y0,x_final,y_final,label,node_events,trapped\n";
        for (long i = 0; i < n; ++i) {
            const auto& fl = res.ensemble.flags[i];
            const auto& p0 = hist.positions.front()[i];
            const auto& pf = hist.positions.back()[i];
            std::string label = "trapped";
            if (!fl.trapped) {
                switch (traj::classify_bounce(p0[0], pf[0], res.setup.meeting_point, 0.0)) {
                    case traj::BounceLabel::bounced: label = "bounced"; break;
                    case traj::BounceLabel::crossed: label = "crossed"; break;
                    case traj::BounceLabel::inconclusive: label = "inconclusive"; break;
                }
            }
            sm << i << "," << csv_num(p0[0]) << "," << csv_num(p0[1]) << "," << csv_num(pf[0])
               << "," << csv_num(pf[1]) << "," << label << "," << fl.node_events << ","
               << (fl.trapped ? 1 : 0) << "\n";
        }
        write_text(opts.out_dir + "/samples.csv", sm.str());
        files.push_back(opts.out_dir + "/samples.csv");
    }
    if (opts.svg) {
        svg::Plot plot(640, 420, "Bohmian trajectory fan", "t", "x");
        const double half = 0.5 * res.setup.grid.axis[0].extent;
        double xmax = 0.0;
        for (long ti = 0; ti < hist.n_times(); ++ti)
            for (long i = 0; i < std::min<long>(n, kMaxTrajectoryRows); ++i)
                xmax = std::max(xmax, std::abs(hist.positions[ti][i][0]));
        xmax = std::min(half, 1.15 * xmax);
        plot.set_range(0.0, hist.times.back(), -xmax, xmax);
        const long cap = std::min<long>(n, kMaxTrajectoryRows);
        for (long i = 0; i < cap; ++i) {
            if (res.ensemble.flags[i].trapped) continue;
            const auto lbl = traj::classify_bounce(hist.positions.front()[i][0],
                                                   hist.positions.back()[i][0],
                                                   res.setup.meeting_point, 0.0);
            const char* color = lbl == traj::BounceLabel::bounced
                                    ? "#4477aa"
                                    : (lbl == traj::BounceLabel::crossed ? "#ee6677" : "#bbbbbb");
            std::vector<std::pair<double, double>> pts;
            pts.reserve(hist.n_times());
            for (long ti = 0; ti < hist.n_times(); ++ti)
                pts.emplace_back(hist.times[ti], hist.positions[ti][i][0]);
            plot.polyline(pts, color, 0.6, 0.55);
        }
        plot.hline(res.setup.meeting_point, "#000000");
        write_text(opts.out_dir + "/semi.svg", plot.render());
        files.push_back(opts.out_dir + "/semi.svg");
    }
    if (opts.dump_fields) {
        save_field(
            [&] {
                // re-derive the initial field for the dump
                return res.setup.grid.dims == 1
                           ? wave::init_gaussian(res.setup.grid, res.setup.packets[0])
                           : wave::init_gaussian(res.setup.grid, res.setup.packets[0],
                                                 {0.0, 0.0, res.setup.pointer_sigma});
            }(),
            opts.out_dir + "/packet0.pwfd");
        files.push_back(opts.out_dir + "/packet0.pwfd");
    }
    const auto& r = res.report;
    json verdicts{{"equivariance", r.ks_pass},
                  {"trapped_ok", r.trapped_rate <= 0.005},
                  {"norm_ok", r.norm_drift < 1e-8}};
    write_manifest(opts.out_dir, config_json, r.seed, verdicts, files);
    return files;
}

// --- sweep -----------------------------------------------------------------

std::vector<std::string> emit_sweep(const std::vector<xp::RegimeReport>& reps,
                                    const std::vector<double>& values,
                                    const std::string& config_json, const EmitOptions& opts) {
    std::vector<std::string> files;
    json arr = json::array();
    for (const auto& r : reps) arr.push_back(regime_json(r));
    json j{{"kind", "pointer-sweep"}, {"values", values}, {"reports", arr}};
    if (opts.json) {
        write_text(opts.out_dir + "/report.json", j.dump(2) + "\n");
        files.push_back(opts.out_dir + "/report.json");
    }
    if (opts.csv) {
        std::ostringstream csv;
        csv << "value,tau_ratio,bounce_fraction,ci_lo,ci_hi,pointer_path_correlation,"
               "surrealism,regime,n_trapped\n";
        for (std::size_t i = 0; i < reps.size(); ++i) {
            const auto& r = reps[i];
            csv << csv_num(values[i]) << "," << csv_num(r.tau_ratio) << ","
                << csv_num(r.bounce_fraction) << "," << csv_num(r.bounce_ci.lo) << ","
                << csv_num(r.bounce_ci.hi) << "," << csv_num(r.pointer_path_correlation) << ","
                << (r.surrealism ? 1 : 0) << "," << r.regime << "," << r.n_trapped << "\n";
        }
        write_text(opts.out_dir + "/sweep.csv", csv.str());
        files.push_back(opts.out_dir + "/sweep.csv");
    }
    if (opts.svg && !reps.empty()) {
        svg::Plot plot(560, 360, "bounce fraction vs tau / T_cross", "log10(tau/T_cross)",
                       "bounce fraction");
        std::vector<double> xs, lo, hi;
        std::vector<std::pair<double, double>> pts;
        for (const auto& r : reps) {
            const double x = std::log10(std::max(1e-6, r.tau_ratio));
            xs.push_back(x);
            lo.push_back(r.bounce_ci.lo);
            hi.push_back(r.bounce_ci.hi);
            pts.emplace_back(x, r.bounce_fraction);
        }
        plot.set_range(xs.front() - 0.2, xs.back() + 0.2, 0.0, 1.0);
        plot.band(xs, lo, hi, "#4477aa");
        plot.polyline(pts, "#4477aa", 1.5);
        for (const auto& [x, y] : pts) plot.marker(x, y, "#223355");
        write_text(opts.out_dir + "/sweep.svg", plot.render());
        files.push_back(opts.out_dir + "/sweep.svg");
    }
    json verdicts = json::array();
    bool intermediate = false;
    for (const auto& r : reps) {
        verdicts.push_back({{"regime", r.regime}, {"ks_pass", r.ks_pass}});
        if (r.bounce_fraction > 0.05 && r.bounce_fraction < 0.95) intermediate = true;
    }
    json v{{"points", verdicts}, {"intermediate_regime_present", intermediate}};
    write_manifest(opts.out_dir, config_json, reps.empty() ? 0 : reps.front().seed, v, files);
    return files;
}

// --- field snapshots ----------------------------------------------------------

void save_field(const wave::WaveField& f, const std::string& path) {
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path);
    const char magic[4] = {'P', 'W', 'F', 'D'};
    out.write(magic, 4);
    auto w32 = [&](std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); };
    auto w64 = [&](std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); };
    auto wf = [&](double v) { out.write(reinterpret_cast<const char*>(&v), 8); };
    w32(1);  // version
    w32(static_cast<std::uint32_t>(f.grid.dims));
    for (int ax = 0; ax < 2; ++ax) {
        w64(static_cast<std::uint64_t>(f.grid.axis[ax].n));
        wf(f.grid.axis[ax].extent);
        wf(f.grid.axis[ax].mass);
    }
    wf(f.grid.dt);
    wf(f.grid.hbar);
    wf(f.time);
    out.write(reinterpret_cast<const char*>(f.amps.data()),
              static_cast<std::streamsize>(f.amps.size() * sizeof(wave::cplx)));

    json sidecar{{"format", "complex128 interleaved (re,im)"},
                 {"byte_order", "little-endian"},
                 {"layout", "row-major [ix*ny + iy]"},
                 {"dims", f.grid.dims},
                 {"points", {f.grid.axis[0].n, f.grid.axis[1].n}},
                 {"extent", {f.grid.axis[0].extent, f.grid.axis[1].extent}},
                 {"mass", {f.grid.axis[0].mass, f.grid.axis[1].mass}},
                 {"dt", f.grid.dt},
                 {"hbar", f.grid.hbar},
                 {"time", f.time}};
    write_text(path + ".json", sidecar.dump(2) + "\n");
}

wave::WaveField load_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path);
    char magic[4];
    in.read(magic, 4);
    if (std::memcmp(magic, "PWFD", 4) != 0) throw ConfigError("bad field snapshot magic");
    auto r32 = [&] {
        std::uint32_t v;
        in.read(reinterpret_cast<char*>(&v), 4);
        return v;
    };
    auto r64 = [&] {
        std::uint64_t v;
        in.read(reinterpret_cast<char*>(&v), 8);
        return v;
    };
    auto rf = [&] {
        double v;
        in.read(reinterpret_cast<char*>(&v), 8);
        return v;
    };
    if (r32() != 1) throw ConfigError("unsupported field snapshot version");
    wave::WaveField f;
    f.grid.dims = static_cast<int>(r32());
    for (int ax = 0; ax < 2; ++ax) {
        f.grid.axis[ax].n = static_cast<int>(r64());
        f.grid.axis[ax].extent = rf();
        f.grid.axis[ax].mass = rf();
    }
    f.grid.dt = rf();
    f.grid.hbar = rf();
    f.time = rf();
    f.amps.resize(f.grid.size());
    in.read(reinterpret_cast<char*>(f.amps.data()),
            static_cast<std::streamsize>(f.amps.size() * sizeof(wave::cplx)));
    if (!in) throw ConfigError("truncated field snapshot");
    return f;
}

}  // namespace pwlab::report
