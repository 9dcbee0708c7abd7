#pragma once

#include <vector>

#include "pwlab/ensemble.hpp"
#include "pwlab/evolve.hpp"
#include "pwlab/velocity.hpp"

namespace pwlab::traj {

struct IntegrateOptions {
    double t_final = 0.0;
    int record_stride = 16;                  // record every k-th trajectory step
    std::vector<double> checkpoint_times;    // forced record + field-marginal capture
    double node_frac = 1e-12;
    int shrink_factor = 8;
    int max_shrink_levels = 2;
    // reject a step when the RK4 stage velocities disagree by more than
    // this many grid cells over the step (guards monotonicity of the
    // flow map near interference nodes)
    double spread_limit = 0.25;
};

// Positions of every sample at the recorded times, plus field
// marginals captured at the checkpoints (for equivariance checks).
struct History {
    std::vector<double> times;
    std::vector<std::vector<Point>> positions;  // [time index][sample]
    struct FieldMarginal {
        double time = 0.0;
        std::array<std::vector<double>, 2> cell_mass;
    };
    std::vector<FieldMarginal> marginals;

    long n_times() const { return static_cast<long>(times.size()); }
};

// Advances every sample to t_final with RK4 on trajectory steps of
// h = 2*dt, velocities taken from field snapshots at t, t+h/2, t+h
// (the field co-evolves in half-steps). Near nodes the step shrinks by
// 1/shrink_factor per level with time-interpolated fields; samples
// that still sit on a node are marked trapped and frozen.
History integrate(Ensemble& e, wave::SplitStepEvolver& ev, const IntegrateOptions& opts);

struct CrossingReport {
    long config_space_crossings = 0;  // 1D order violations / 2D near-coincidences
    long shadow_crossings = 0;        // particle-axis projection inversions (2D)
    long degenerate_pairs = 0;
    double min_pair_distance = 0.0;   // 2D only
};

// 1D: exact order preservation over the recorded times. 2D: pairwise
// distinctness at the recorded times plus the projection-inversion
// count of the particle axis.
CrossingReport check_no_crossing(const Ensemble& e, const History& h);

enum class BounceLabel { bounced, crossed, inconclusive };

// Labels one sample from its initial vs final side of the meeting
// point; final positions inside the crossing window are inconclusive.
BounceLabel classify_bounce(double x_initial, double x_final, double meeting_point,
                            double window_halfwidth);

}  // namespace pwlab::traj
