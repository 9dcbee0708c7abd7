#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pwlab/velocity.hpp"
#include "pwlab/wavefield.hpp"

namespace pwlab::traj {

struct SampleFlags {
    int node_events = 0;       // times the node policy kicked in
    bool trapped = false;      // step underflow near a node; excluded from stats
    bool wrapped = false;      // crossed the periodic boundary
    bool duplicate_start = false;
};

// |psi_0|^2-distributed sample positions plus bookkeeping. Positions
// are drawn by conditional inverse-CDF (x marginal, then y within the
// x cell), one rng sub-stream per sample.
struct Ensemble {
    std::uint64_t seed = 0;
    int dims = 1;
    std::vector<Point> position;      // current (initially t=0) positions
    std::vector<SampleFlags> flags;
    std::array<double, 2> ks_initial{};  // KS vs the field marginals at construction

    long size() const { return static_cast<long>(position.size()); }
};

// Throws PhysicsError if n < 1 or the construction KS check fails at
// the 99% level (1.63/sqrt(n)).
Ensemble sample_initial(const wave::WaveField& f, long n, std::uint64_t seed);

// KS distance between sample coordinates and a piecewise-linear CDF
// built from per-cell masses on a uniform grid axis.
double ks_distance(std::vector<double> values, const std::vector<double>& cell_mass,
                   double origin, double dx);

}  // namespace pwlab::traj
