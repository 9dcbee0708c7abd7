#include "pwlab/two_time.hpp"

#include <cmath>
#include <stdexcept>

#include "pwlab/rng.hpp"

namespace pwlab::joint {

namespace {
inline double parity(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }
}  // namespace

double TwoTimeJoint::sum() const {
    double s = 0.0;
    for (double v : p) s += v;
    return s;
}

TwoTimeJoint two_time_joint(double x, double xp, double y) {
    TwoTimeJoint j;
    j.x = x;
    j.xp = xp;
    j.y = y;
    const double c1 = std::cos(x + y);
    const double c2 = std::cos(xp + y);
    for (int a = 1; a <= 2; ++a)
        for (int ap = 1; ap <= 2; ++ap)
            for (int b = 3; b <= 4; ++b)
                j.at(a, ap, b) =
                    (1.0 + parity(a + b) * c1) / 4.0 * (1.0 + parity(ap + b) * c2) / 2.0;
    return j;
}

PairTable marginal_first(const TwoTimeJoint& j) {
    PairTable t;
    for (int a = 1; a <= 2; ++a)
        for (int b = 3; b <= 4; ++b)
            t.at(a - 1, b - 3) = j.at(a, 1, b) + j.at(a, 2, b);
    return t;
}

PairTable marginal_second(const TwoTimeJoint& j) {
    PairTable t;
    for (int ap = 1; ap <= 2; ++ap)
        for (int b = 3; b <= 4; ++b)
            t.at(ap - 1, b - 3) = j.at(1, ap, b) + j.at(2, ap, b);
    return t;
}

PairTable alice_two_time(const TwoTimeJoint& j) {
    PairTable t;
    for (int a = 1; a <= 2; ++a)
        for (int ap = 1; ap <= 2; ++ap)
            t.at(a - 1, ap - 1) = j.at(a, ap, 3) + j.at(a, ap, 4);
    return t;
}

double signalling_gap(double x, double xp, std::span<const double> y_grid) {
    if (y_grid.empty()) throw std::invalid_argument("signalling_gap: empty y grid");
    std::array<double, 4> lo{}, hi{};
    bool first = true;
    for (double y : y_grid) {
        PairTable t = alice_two_time(two_time_joint(x, xp, y));
        for (int i = 0; i < 4; ++i) {
            if (first || t.p[i] < lo[i]) lo[i] = t.p[i];
            if (first || t.p[i] > hi[i]) hi[i] = t.p[i];
        }
        first = false;
    }
    double gap = 0.0;
    for (int i = 0; i < 4; ++i) gap = std::max(gap, hi[i] - lo[i]);
    return gap;
}

OutcomeTriple sample_outcome(double x, double xp, double y, std::uint64_t seed,
                             std::uint64_t index) {
    std::mt19937_64 g = substream(seed, index);
    const double c1 = std::cos(x + y);
    const double c2 = std::cos(xp + y);

    // first-time table over (a,b), basis order (1,3),(1,4),(2,3),(2,4)
    std::array<double, 4> first{};
    for (int a = 1; a <= 2; ++a)
        for (int b = 3; b <= 4; ++b)
            first[(a - 1) * 2 + (b - 3)] = (1.0 + parity(a + b) * c1) / 4.0;

    double u = u01(g);
    int cell = 3;
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
        acc += first[i];
        if (u < acc) {
            cell = i;
            break;
        }
    }
    const int a = cell / 2 + 1;
    const int b = cell % 2 + 3;

    const double p_ap1 = (1.0 + parity(1 + b) * c2) / 2.0;
    const int ap = (u01(g) < p_ap1) ? 1 : 2;

    return OutcomeTriple{a, ap, b, index, seed};
}

ChshEstimate chsh_from_samples(double x, double xp, double y, double yp, long n_per_pair,
                               std::uint64_t seed) {
    if (n_per_pair < 1) throw std::invalid_argument("chsh_from_samples: need n >= 1");
    const std::array<std::pair<double, double>, 4> pairs{
        {{x, y}, {x, yp}, {xp, y}, {xp, yp}}};
    ChshEstimate est;
    est.n_per_pair = n_per_pair;
    double var_sum = 0.0;
    for (int k = 0; k < 4; ++k) {
        double acc = 0.0;
        for (long i = 0; i < n_per_pair; ++i) {
            // sub-stream index unique per (pair, sample)
            OutcomeTriple o = sample_outcome(pairs[k].first, 0.0, pairs[k].second, seed,
                                             static_cast<std::uint64_t>(k) * n_per_pair + i);
            const double sa = (o.a == 1) ? 1.0 : -1.0;
            const double sb = (o.b == 3) ? 1.0 : -1.0;
            acc += sa * sb;
        }
        const double e = acc / static_cast<double>(n_per_pair);
        est.correlators[k] = e;
        var_sum += (1.0 - e * e) / static_cast<double>(n_per_pair);
    }
    est.s = est.correlators[0] + est.correlators[1] + est.correlators[2] - est.correlators[3];
    est.stderr_s = std::sqrt(var_sum);
    return est;
}

}  // namespace pwlab::joint
