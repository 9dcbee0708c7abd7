#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pwlab/integrate.hpp"
#include "pwlab/mode_engine.hpp"
#include "pwlab/two_time.hpp"
#include "pwlab/wavefield.hpp"

namespace pwlab::xp {

enum class Kind { bell, two_time, semi, pointer_sweep };

std::string kind_name(Kind k);

struct Phases {
    double x = 0.0, xp = 0.0, y = 0.0, yp = 0.0;
};

struct GridSpec {
    std::array<int, 2> points{0, 0};     // 0 = derive from the scenario
    std::array<double, 2> extent{0, 0};  // 0 = derive
    double dt = 0.0;                     // 0 = derive
};

struct EnsembleSpec {
    long n = 5000;
    std::uint64_t seed = 1;
};

struct PointerSpec {
    bool present = false;
    double mass = 5.0;
    double sigma = 0.8;
};

struct SweepSpec {
    std::string param;  // "pointer.mass" or "kick.k"
    std::vector<double> values;
};

struct ScenarioConfig {
    Kind kind = Kind::bell;
    Phases phases;
    GridSpec grid;
    std::vector<wave::PacketSpec> packets;  // particle axis; semi: two converging
    wave::KickSpec kick;
    PointerSpec pointer;
    EnsembleSpec ensemble;
    double t_final = 0.0;  // 0 = derive
    SweepSpec sweep;

    static ScenarioConfig defaults(Kind k);
};

// Fully resolved continuum setup: all the automatic grid / timing
// choices filled in and validated.
struct SemiSetup {
    wave::Grid grid;
    std::vector<wave::PacketSpec> packets;
    wave::KickSpec kick;
    double pointer_mass = 0.0, pointer_sigma = 0.0;
    bool pointer_present = false;
    double v0 = 0.0;          // packet speed
    double meeting_point = 0.0;
    double t_meet = 0.0;
    double t_cross = 0.0;     // crossing window duration
    double tau = 0.0;         // pointer separation time (inf without pointer)
    double tau_ratio = 0.0;   // tau / t_cross
    double t_read = 0.0;      // pointer readout time (= t_meet + t_cross/2 + 3 tau)
    double t_final = 0.0;
    // after the packets have fully crossed the guidance field is smooth,
    // so the long readout flight integrates on an 8x coarser step
    double t_coarse = 0.0;    // phase switch time (= t_final when single-phase)
    int coarse_factor = 1;
};

SemiSetup derive_semi(const ScenarioConfig& c);

struct BinomialCI {
    double lo = 0.0, hi = 0.0;  // Wilson 95%
};

struct RegimeReport {
    // resolved regime parameters
    double kick_strength = 0.0, pointer_mass = 0.0, pointer_sigma = 0.0;
    double tau = 0.0, t_cross = 0.0, tau_ratio = 0.0, t_read = 0.0, t_final = 0.0;
    bool pointer_present = false;
    std::string regime;  // "fast" | "slow" | "intermediate" | "none"

    // trajectory statistics
    long n_samples = 0, n_bounced = 0, n_crossed = 0, n_inconclusive = 0, n_trapped = 0;
    double bounce_fraction = 0.0;
    BinomialCI bounce_ci;
    double pointer_path_correlation = 0.0;  // only meaningful with a pointer
    bool surrealism = false;                // pointer indicates the path not taken
    double detector_path_anticorrelation = 0.0;  // fraction detector-mode != path-mode

    // run health
    double ks_max = 0.0, ks_limit = 0.0;
    bool ks_pass = false;
    long config_space_crossings = 0, shadow_crossings = 0;
    double trapped_rate = 0.0;
    double norm_drift = 0.0;
    double readout_distinguishability = 0.0;  // pointer-branch TV at readout
    std::uint64_t seed = 0;
};

// Report plus the raw material needed for plots and exports.
struct SemiResult {
    RegimeReport report;
    SemiSetup setup;
    traj::Ensemble ensemble;
    traj::History history;
};

SemiResult run_semi_full(const ScenarioConfig& c);
RegimeReport run_semi(const ScenarioConfig& c);

std::vector<RegimeReport> run_pointer_sweep(const ScenarioConfig& c);

struct BellReport {
    Phases phases;
    // analytic coincidence tables for the pairs (x,y),(x,y'),(x',y),(x',y')
    std::array<mode::CoincidenceTable, 4> analytic_tables;
    std::array<double, 4> analytic_correlators{};
    double chsh_analytic = 0.0;
    bool sampled = false;
    joint::ChshEstimate mc;
    bool agree_3sigma = true;
    std::uint64_t seed = 0;
};

BellReport run_bell(const ScenarioConfig& c);

// Empirical coincidence counts for one setting pair.
mode::CoincidenceTable sample_coincidences(double x, double y, long n, std::uint64_t seed);

struct TwoTimeReport {
    Phases phases;
    joint::TwoTimeJoint joint_table;
    joint::PairTable first, second, alice;
    double table_sum = 0.0;
    // no-signalling sweeps: largest deviation of each one-time marginal
    // when the other-time setting scans 50 values
    double marginal_first_xp_dev = 0.0;
    double marginal_second_x_dev = 0.0;
    bool no_signalling_pass = false;
    double signalling_gap_value = 0.0;  // over the canonical y grid
    // sampling
    bool sampled = false;
    long n_samples = 0;
    std::array<double, 8> empirical{};
    double l1_distance = 0.0;
    bool l1_pass = true;
    std::uint64_t seed = 0;
};

TwoTimeReport run_two_time(const ScenarioConfig& c);

BinomialCI wilson_ci(long successes, long trials);

}  // namespace pwlab::xp
