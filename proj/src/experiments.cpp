#include "pwlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "pwlab/errors.hpp"
#include "pwlab/parallel.hpp"

namespace pwlab::xp {

namespace {

constexpr double kPi = std::numbers::pi;

int pow2ceil(double x) {
    int n = 64;
    while (n < x && n < (1 << 22)) n *= 2;
    return n;
}

double spread_sigma(double sigma, double t, double mass, double hbar) {
    const double r = hbar * t / (2.0 * mass * sigma * sigma);
    return sigma * std::sqrt(1.0 + r * r);
}

}  // namespace

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::bell: return "bell";
        case Kind::two_time: return "two-time";
        case Kind::semi: return "semi";
        case Kind::pointer_sweep: return "pointer-sweep";
    }
    return "?";
}

ScenarioConfig ScenarioConfig::defaults(Kind k) {
    ScenarioConfig c;
    c.kind = k;
    switch (k) {
        case Kind::bell:
            c.phases = {0.0, kPi / 2.0, -kPi / 4.0, kPi / 4.0};
            c.ensemble = {100000, 1};
            break;
        case Kind::two_time:
            c.phases = {kPi / 3.0, kPi / 5.0, kPi / 7.0, 0.0};
            c.ensemble = {100000, 1};
            break;
        case Kind::semi:
            c.ensemble = {5000, 1};
            break;
        case Kind::pointer_sweep:
            c.ensemble = {5000, 1};
            c.pointer = {true, 10.0, 0.8};
            c.kick.strength = 8.0;
            c.sweep.param = "pointer.mass";
            // tau/T_cross = 0.1, 0.3, 1, 3, 10 with the default packets
            c.sweep.values = {1.0, 3.0, 10.0, 30.0, 100.0};
            break;
    }
    return c;
}

SemiSetup derive_semi(const ScenarioConfig& c) {
    SemiSetup s;
    const double hbar = 1.0;
    const double m = 1.0;

    s.packets = c.packets;
    if (s.packets.empty()) {
        s.packets = {{-5.0, 4.0, 1.0}, {5.0, -4.0, 1.0}};
    }
    if (s.packets.size() != 2)
        throw PhysicsError("semi: need exactly two particle packets (or none for defaults)");
    const wave::PacketSpec& a = s.packets[0];
    const wave::PacketSpec& b = s.packets[1];
    if (!(a.center < b.center) || !(a.momentum > 0.0) || !(b.momentum < 0.0))
        throw PhysicsError("semi: packets must converge (left one moving right, right one left)");

    const double va = a.momentum / m, vb = b.momentum / m;
    s.v0 = 0.5 * (va - vb);
    s.t_meet = (b.center - a.center) / (va - vb);
    s.meeting_point = a.center + va * s.t_meet;
    const double sigma = std::max(a.sigma, b.sigma);
    s.t_cross = 8.0 * sigma / (va - vb);

    s.pointer_present = c.pointer.present && c.kick.strength > 0.0;
    s.kick = c.kick;
    s.pointer_mass = c.pointer.mass;
    s.pointer_sigma = c.pointer.sigma;
    if (s.pointer_present) {
        s.tau = wave::pointer_separation_time(c.kick.strength, c.pointer.mass, c.pointer.sigma);
        s.tau_ratio = s.tau / s.t_cross;
        s.t_read = s.t_meet + 0.5 * s.t_cross + 3.0 * s.tau;
        s.t_final = c.t_final > 0.0 ? c.t_final : s.t_read;
    } else {
        s.tau = std::numeric_limits<double>::infinity();
        s.tau_ratio = 0.0;
        s.t_read = 0.0;
        s.t_final = c.t_final > 0.0 ? c.t_final : s.t_meet + 1.5 * s.t_cross;
    }
    if (s.t_final < s.t_meet + 0.5 * s.t_cross)
        throw PhysicsError("semi: packets fail to cross before t_final");

    // time step: trajectory step h = 2 dt, sized to resolve the fringe
    // transit of the fastest packet
    const double pmax = std::max(std::abs(a.momentum), std::abs(b.momentum));
    double dt = c.grid.dt;
    if (dt <= 0.0) {
        const double h = std::min(s.t_cross / 50.0, kPi * m / (20.0 * pmax * pmax));
        dt = 0.5 * h;
    }
    // snap timing to the trajectory-step lattice; the run switches to an
    // 8x coarser step once the packets have fully crossed (if there is
    // enough flight left for it to matter)
    const double h = 2.0 * dt;
    s.t_coarse = std::lround(std::ceil((s.t_meet + s.t_cross) / h)) * h;
    const double h2 = 8.0 * h;
    if (s.t_final > s.t_coarse + 10.0 * h2) {
        s.coarse_factor = 8;
        const long n2 = std::lround(std::ceil((s.t_final - s.t_coarse) / h2));
        s.t_final = s.t_coarse + n2 * h2;
    } else {
        s.coarse_factor = 1;
        const long n_steps = std::max<long>(1, std::lround(std::ceil(s.t_final / h)));
        s.t_final = n_steps * h;
        s.t_coarse = s.t_final;
    }
    if (s.pointer_present) {
        if (s.coarse_factor > 1 && s.t_read > s.t_coarse)
            s.t_read = std::min(s.t_final,
                                s.t_coarse + std::lround((s.t_read - s.t_coarse) / h2) * h2);
        else
            s.t_read = std::min(s.t_final, std::lround(s.t_read / h) * h);
    }

    // particle-axis grid
    wave::Grid g;
    g.dims = s.pointer_present ? 2 : 1;
    g.dt = dt;
    g.hbar = hbar;
    // outgoing branches sit v0 (t_final - t_meet) past the meeting point;
    // the extent must hold them plus tails, and keep the periodic images
    // from re-meeting before the run ends
    const double sig_tf = spread_sigma(sigma, s.t_final, m, hbar);
    const double x_wave = s.v0 * (s.t_final - s.t_meet);
    double lx = c.grid.extent[0] > 0.0
                    ? c.grid.extent[0]
                    : 2.0 * (x_wave + std::abs(s.meeting_point)) + 8.0 * sig_tf + 4.0 * sigma;
    const double dx_t = kPi / (8.0 * pmax / hbar);
    int nx = c.grid.points[0] > 0 ? c.grid.points[0] : pow2ceil(lx / dx_t);
    g.axis[0] = {nx, lx, m};

    if (s.pointer_present) {
        const double k = c.kick.strength;
        const double sy = c.pointer.sigma;
        const double M = c.pointer.mass;
        const double d_read = k / M * (s.t_final - c.kick.t_apply);
        const double sy_tf = spread_sigma(sy, s.t_final, M, hbar);
        double ly = c.grid.extent[1] > 0.0 ? c.grid.extent[1]
                                           : 2.0 * (d_read + 4.0 * sy_tf + 0.5 * sy);
        const double dy_t = kPi / (4.0 * (k / hbar + 2.0 / sy));
        int ny = c.grid.points[1] > 0 ? c.grid.points[1] : pow2ceil(ly / dy_t);
        g.axis[1] = {ny, ly, M};

        // default region: the kicked detector watches the left arm
        if (s.kick.region.empty()) {
            s.kick.region.push_back({-0.5 * lx, s.meeting_point});
            if (s.kick.rule == wave::SignRule::plus_minus_split)
                s.kick.region.push_back({s.meeting_point, 0.5 * lx});
        }
    }

    g.validate();
    wave::check_bandwidth(g, s.packets, s.pointer_present ? s.kick.strength : 0.0);
    s.grid = g;
    return s;
}

BinomialCI wilson_ci(long successes, long trials) {
    BinomialCI ci;
    if (trials <= 0) return ci;
    const double z = 1.959963984540054;  // 95%
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    ci.lo = std::max(0.0, center - half);
    ci.hi = std::min(1.0, center + half);
    return ci;
}

SemiResult run_semi_full(const ScenarioConfig& c) {
    SemiResult res;
    SemiSetup s = derive_semi(c);
    res.setup = s;

    // initial pilot wave: equal superposition of the two converging packets
    wave::WaveField psi0;
    if (s.grid.dims == 1) {
        wave::WaveField g1 = wave::init_gaussian(s.grid, s.packets[0]);
        wave::WaveField g2 = wave::init_gaussian(s.grid, s.packets[1]);
        const wave::SuperposeTerm terms[] = {{1.0, &g1}, {1.0, &g2}};
        psi0 = wave::superpose(terms);
    } else {
        const wave::PacketSpec pointer_packet{0.0, 0.0, s.pointer_sigma};
        wave::WaveField g1 = wave::init_gaussian(s.grid, s.packets[0], pointer_packet);
        wave::WaveField g2 = wave::init_gaussian(s.grid, s.packets[1], pointer_packet);
        const wave::SuperposeTerm terms[] = {{1.0, &g1}, {1.0, &g2}};
        psi0 = wave::superpose(terms);
    }

    res.ensemble = traj::sample_initial(psi0, c.ensemble.n, c.ensemble.seed);
    const std::vector<traj::Point> initial = res.ensemble.position;

    std::vector<double> checkpoints = {0.25 * s.t_final, 0.5 * s.t_final, 0.75 * s.t_final,
                                       s.t_final};
    if (s.pointer_present) checkpoints.push_back(s.t_read);

    wave::SplitStepEvolver ev(psi0);
    if (s.pointer_present && s.kick.t_apply <= s.t_coarse) ev.add_kick(s.kick);
    if (s.pointer_present) res.report.kick_strength = s.kick.strength;

    traj::IntegrateOptions opts;
    opts.t_final = s.t_coarse;
    opts.record_stride = 16;
    for (double tc : checkpoints)
        if (tc <= s.t_coarse) opts.checkpoint_times.push_back(tc);
    res.history = traj::integrate(res.ensemble, ev, opts);

    double final_norm = ev.field().norm_l2();
    if (s.coarse_factor > 1) {
        wave::WaveField coarse_field = ev.field();
        coarse_field.grid.dt *= s.coarse_factor;
        wave::SplitStepEvolver ev2(std::move(coarse_field));
        if (s.pointer_present && s.kick.t_apply > s.t_coarse) ev2.add_kick(s.kick);
        traj::IntegrateOptions opts2;
        opts2.t_final = s.t_final;
        opts2.record_stride = 4;
        for (double tc : checkpoints)
            if (tc > s.t_coarse) opts2.checkpoint_times.push_back(tc);
        traj::History tail = traj::integrate(res.ensemble, ev2, opts2);
        // first tail record duplicates the phase-1 final record
        for (long ti = 1; ti < tail.n_times(); ++ti) {
            res.history.times.push_back(tail.times[ti]);
            res.history.positions.push_back(std::move(tail.positions[ti]));
        }
        for (auto& m : tail.marginals) res.history.marginals.push_back(std::move(m));
        final_norm = ev2.field().norm_l2();
        if (s.pointer_present && std::abs(s.t_final - s.t_read) < 1e-9)
            res.report.readout_distinguishability =
                wave::branch_distinguishability(ev2.field(), s.meeting_point);
    }

    // --- statistics -----------------------------------------------------
    RegimeReport& r = res.report;
    r.pointer_present = s.pointer_present;
    r.pointer_mass = s.pointer_mass;
    r.pointer_sigma = s.pointer_sigma;
    r.kick_strength = s.pointer_present ? s.kick.strength : 0.0;
    r.tau = s.tau;
    r.t_cross = s.t_cross;
    r.tau_ratio = s.tau_ratio;
    r.t_read = s.t_read;
    r.t_final = s.t_final;
    r.seed = c.ensemble.seed;
    if (!s.pointer_present)
        r.regime = "none";
    else if (s.tau_ratio <= 0.1)
        r.regime = "fast";
    else if (s.tau_ratio >= 10.0)
        r.regime = "slow";
    else
        r.regime = "intermediate";

    const long n = res.ensemble.size();
    r.n_samples = n;
    const auto& final_pos = res.history.positions.back();

    long read_idx = static_cast<long>(res.history.times.size()) - 1;
    if (s.pointer_present) {
        for (long ti = 0; ti < res.history.n_times(); ++ti)
            if (std::abs(res.history.times[ti] - s.t_read) < 1e-9) read_idx = ti;
    }

    const double xc = s.meeting_point;
    // pointer reading threshold: halfway between the still and kicked
    // branch centers at readout time
    const double d_read =
        s.pointer_present ? s.kick.strength / s.pointer_mass * (s.t_read - s.kick.t_apply) : 0.0;

    double corr_sum = 0.0;
    long corr_n = 0;
    long anti_matches = 0, anti_n = 0;
    for (long i = 0; i < n; ++i) {
        if (res.ensemble.flags[i].trapped) {
            ++r.n_trapped;
            continue;
        }
        const double x0 = initial[i][0];
        const double xf = final_pos[i][0];
        switch (traj::classify_bounce(x0, xf, xc, 0.0)) {
            case traj::BounceLabel::bounced: ++r.n_bounced; break;
            case traj::BounceLabel::crossed: ++r.n_crossed; break;
            case traj::BounceLabel::inconclusive: ++r.n_inconclusive; break;
        }
        if (s.pointer_present) {
            // reading: which arm does the pointer indicate
            const double y_read = res.history.positions[read_idx][i][1];
            bool reads_arm1;
            if (s.kick.rule == wave::SignRule::plus_on_region)
                reads_arm1 = y_read > 0.5 * d_read;
            else
                reads_arm1 = y_read > 0.0;
            const bool path_arm1 = x0 < xc;
            corr_sum += (reads_arm1 ? 1.0 : -1.0) * (path_arm1 ? 1.0 : -1.0);
            ++corr_n;
        } else {
            // detector d sits where mode d's wave ends: mode 1 runs left
            // to right, so detector 1 is the right side
            const int detector_mode = xf > xc ? 1 : 2;
            const int path_mode = x0 < xc ? 1 : 2;
            if (detector_mode != path_mode) ++anti_matches;
            ++anti_n;
        }
    }
    const long conclusive = r.n_bounced + r.n_crossed;
    r.bounce_fraction = conclusive > 0 ? static_cast<double>(r.n_bounced) / conclusive : 0.0;
    r.bounce_ci = wilson_ci(r.n_bounced, conclusive);
    r.trapped_rate = static_cast<double>(r.n_trapped) / static_cast<double>(n);
    if (s.pointer_present && corr_n > 0) {
        r.pointer_path_correlation = corr_sum / corr_n;
        r.surrealism = r.pointer_path_correlation < -0.5;
    }
    if (!s.pointer_present && anti_n > 0)
        r.detector_path_anticorrelation = static_cast<double>(anti_matches) / anti_n;

    // equivariance at the checkpoints
    r.ks_limit = 1.63 / std::sqrt(static_cast<double>(n));
    for (const auto& m : res.history.marginals) {
        long ti = -1;
        for (long t2 = 0; t2 < res.history.n_times(); ++t2)
            if (std::abs(res.history.times[t2] - m.time) < 1e-9) ti = t2;
        if (ti < 0) continue;
        for (int ax = 0; ax < s.grid.dims; ++ax) {
            std::vector<double> vals;
            vals.reserve(n);
            for (long i = 0; i < n; ++i)
                if (!res.ensemble.flags[i].trapped)
                    vals.push_back(res.history.positions[ti][i][ax]);
            const double ks = traj::ks_distance(std::move(vals), m.cell_mass[ax],
                                                s.grid.origin(ax), s.grid.dx(ax));
            r.ks_max = std::max(r.ks_max, ks);
        }
    }
    r.ks_pass = r.ks_max < r.ks_limit;

    traj::CrossingReport cr = traj::check_no_crossing(res.ensemble, res.history);
    r.config_space_crossings = cr.config_space_crossings;
    r.shadow_crossings = cr.shadow_crossings;

    r.norm_drift = std::abs(final_norm - 1.0);
    // pointer-branch distinguishability from the final field when the
    // run ends at the readout time (the default)
    if (s.coarse_factor == 1 && s.pointer_present && std::abs(s.t_final - s.t_read) < 1e-9)
        r.readout_distinguishability = wave::branch_distinguishability(ev.field(), xc);

    if (r.trapped_rate > 0.005)
        throw std::runtime_error("semi: node-trapped exclusion rate above 0.5%");
    return res;
}

RegimeReport run_semi(const ScenarioConfig& c) { return run_semi_full(c).report; }

std::vector<RegimeReport> run_pointer_sweep(const ScenarioConfig& c) {
    if (c.sweep.values.empty()) throw PhysicsError("pointer-sweep: empty sweep grid");
    if (c.sweep.param != "pointer.mass" && c.sweep.param != "kick.k")
        throw PhysicsError("pointer-sweep: sweep.param must be pointer.mass or kick.k");
    const int np = static_cast<int>(c.sweep.values.size());
    std::vector<RegimeReport> out(np);
    std::vector<std::string> errors(np);
#pragma omp parallel for schedule(dynamic, 1) if (pwlab::parallel_enabled())
    for (int i = 0; i < np; ++i) {
        ScenarioConfig point = c;
        point.kind = Kind::semi;
        point.pointer.present = true;
        point.sweep = {};
        if (c.sweep.param == "pointer.mass")
            point.pointer.mass = c.sweep.values[i];
        else
            point.kick.strength = c.sweep.values[i];
        try {
            out[i] = run_semi(point);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }
    for (int i = 0; i < np; ++i)
        if (!errors[i].empty())
            throw std::runtime_error("pointer-sweep point " + std::to_string(i) + " failed: " +
                                     errors[i]);
    return out;
}

BellReport run_bell(const ScenarioConfig& c) {
    BellReport rep;
    rep.phases = c.phases;
    rep.seed = c.ensemble.seed;
    const std::array<std::pair<double, double>, 4> pairs{{{c.phases.x, c.phases.y},
                                                          {c.phases.x, c.phases.yp},
                                                          {c.phases.xp, c.phases.y},
                                                          {c.phases.xp, c.phases.yp}}};
    for (int k = 0; k < 4; ++k) {
        mode::ModeState st = mode::make_bell_state();
        st = mode::apply_phase(st, 1, pairs[k].first);
        st = mode::apply_phase(st, 4, pairs[k].second);
        st = mode::apply_beamsplitter(st, mode::Side::alice);
        st = mode::apply_beamsplitter(st, mode::Side::bob);
        rep.analytic_tables[k] = mode::detection_probs(st);
        const auto& t = rep.analytic_tables[k];
        rep.analytic_correlators[k] = t.at(1, 3) + t.at(2, 4) - t.at(1, 4) - t.at(2, 3);
    }
    rep.chsh_analytic = rep.analytic_correlators[0] + rep.analytic_correlators[1] +
                        rep.analytic_correlators[2] - rep.analytic_correlators[3];
    if (c.ensemble.n > 0) {
        rep.sampled = true;
        rep.mc = joint::chsh_from_samples(c.phases.x, c.phases.xp, c.phases.y, c.phases.yp,
                                          c.ensemble.n, c.ensemble.seed);
        rep.agree_3sigma = std::abs(rep.mc.s - rep.chsh_analytic) <= 3.0 * rep.mc.stderr_s;
    }
    return rep;
}

mode::CoincidenceTable sample_coincidences(double x, double y, long n, std::uint64_t seed) {
    mode::CoincidenceTable t;
    for (long i = 0; i < n; ++i) {
        joint::OutcomeTriple o = joint::sample_outcome(x, 0.0, y, seed, i);
        t.at(o.a, o.b) += 1.0;
    }
    for (auto& v : t.p) v /= static_cast<double>(n);
    return t;
}

TwoTimeReport run_two_time(const ScenarioConfig& c) {
    TwoTimeReport rep;
    rep.phases = c.phases;
    rep.seed = c.ensemble.seed;
    const double x = c.phases.x, xp = c.phases.xp, y = c.phases.y;
    rep.joint_table = joint::two_time_joint(x, xp, y);
    rep.first = joint::marginal_first(rep.joint_table);
    rep.second = joint::marginal_second(rep.joint_table);
    rep.alice = joint::alice_two_time(rep.joint_table);
    rep.table_sum = rep.joint_table.sum();

    // no-signalling sweeps (50 settings of the other-time phase)
    for (int s = 0; s < 50; ++s) {
        const double phi = 2.0 * kPi * s / 50.0;
        joint::PairTable f = joint::marginal_first(joint::two_time_joint(x, phi, y));
        joint::PairTable g = joint::marginal_second(joint::two_time_joint(phi, xp, y));
        for (int i = 0; i < 4; ++i) {
            rep.marginal_first_xp_dev =
                std::max(rep.marginal_first_xp_dev, std::abs(f.p[i] - rep.first.p[i]));
            rep.marginal_second_x_dev =
                std::max(rep.marginal_second_x_dev, std::abs(g.p[i] - rep.second.p[i]));
        }
    }
    rep.no_signalling_pass =
        rep.marginal_first_xp_dev < 1e-12 && rep.marginal_second_x_dev < 1e-12;

    std::vector<double> ygrid;
    for (int s = 0; s < 32; ++s) ygrid.push_back(2.0 * kPi * s / 32.0);
    rep.signalling_gap_value = joint::signalling_gap(x, xp, ygrid);

    if (c.ensemble.n > 0) {
        rep.sampled = true;
        rep.n_samples = c.ensemble.n;
        for (long i = 0; i < c.ensemble.n; ++i) {
            joint::OutcomeTriple o = joint::sample_outcome(x, xp, y, c.ensemble.seed, i);
            rep.empirical[joint::TwoTimeJoint::index(o.a, o.ap, o.b)] += 1.0;
        }
        for (auto& v : rep.empirical) v /= static_cast<double>(c.ensemble.n);
        rep.l1_distance = 0.0;
        for (int i = 0; i < 8; ++i)
            rep.l1_distance += std::abs(rep.empirical[i] - rep.joint_table.p[i]);
        rep.l1_pass = c.ensemble.n < 10000 || rep.l1_distance < 0.01;
    }
    return rep;
}

}  // namespace pwlab::xp
