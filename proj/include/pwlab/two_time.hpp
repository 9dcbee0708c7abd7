#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace pwlab::joint {

// Joint law P(a, a', b | x, x', y) for Alice's particle mode at two
// times (a before her first splitter's detectors, a' at the second
// round with phase x') and Bob's mode b. a,a' in {1,2}, b in {3,4}.
//
// p(a,a',b) = [1 + (-1)^{a+b} cos(x+y)]/4 * [1 + (-1)^{a'+b} cos(x'+y)]/2
//
// The second factor uses x' (the second-round phase). The product form
// makes both one-time marginals reproduce the quantum coincidence law
// while the (a,a') marginal retains a y-dependence; see
// alice_two_time / signalling_gap.
struct TwoTimeJoint {
    double x = 0.0, xp = 0.0, y = 0.0;
    std::array<double, 8> p{};

    static int index(int a, int ap, int b) { return ((a - 1) * 2 + (ap - 1)) * 2 + (b - 3); }
    const double& at(int a, int ap, int b) const { return p[index(a, ap, b)]; }
    double& at(int a, int ap, int b) { return p[index(a, ap, b)]; }
    double sum() const;
};

TwoTimeJoint two_time_joint(double x, double xp, double y);

// 2x2 probability table with row/column labels depending on context.
struct PairTable {
    std::array<double, 4> p{};
    const double& at(int i, int j) const { return p[i * 2 + j]; }
    double& at(int i, int j) { return p[i * 2 + j]; }
    double sum() const { return p[0] + p[1] + p[2] + p[3]; }
};

// Sum over a': rows a in {1,2}, cols b in {3,4}. Equals
// [1 + (-1)^{a+b} cos(x+y)]/4, independent of x'.
PairTable marginal_first(const TwoTimeJoint& j);

// Sum over a: rows a' in {1,2}, cols b in {3,4}. Equals
// [1 + (-1)^{a'+b} cos(x'+y)]/4, independent of x.
PairTable marginal_second(const TwoTimeJoint& j);

// Sum over b: rows a, cols a'. Equals
// [1 + (-1)^{a+a'} cos(x+y) cos(x'+y)]/4 -- depends on Bob's y.
PairTable alice_two_time(const TwoTimeJoint& j);

// Max over the four (a,a') entries of (max_y - min_y) of
// alice_two_time across the given y grid. Throws on an empty grid.
double signalling_gap(double x, double xp, std::span<const double> y_grid);

struct OutcomeTriple {
    int a = 0, ap = 0, b = 0;
    std::uint64_t sample_index = 0;
    std::uint64_t seed = 0;  // master seed the sub-stream was derived from
};

// Draws (a,b) from the first-time law, then a' from the conditional
// [1 + (-1)^{a'+b} cos(x'+y)]/2 given b. The joint law factorizes
// exactly this way, so the empirical distribution is the joint above.
// Sample `index` selects the rng sub-stream; fixed (seed,index) gives
// a fixed outcome.
OutcomeTriple sample_outcome(double x, double xp, double y, std::uint64_t seed,
                             std::uint64_t index = 0);

struct ChshEstimate {
    double s = 0.0;
    double stderr_s = 0.0;
    std::array<double, 4> correlators{};  // E(x,y), E(x,y'), E(x',y), E(x',y')
    long n_per_pair = 0;
};

// Monte Carlo CHSH using only first-time (a,b) outcomes per setting
// pair, n samples per pair.
ChshEstimate chsh_from_samples(double x, double xp, double y, double yp, long n_per_pair,
                               std::uint64_t seed);

}  // namespace pwlab::joint
