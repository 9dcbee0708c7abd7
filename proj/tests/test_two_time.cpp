#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "pwlab/rng.hpp"
#include "pwlab/two_time.hpp"

using namespace pwlab::joint;
using pwlab::u01;

namespace {
constexpr double pi = std::numbers::pi;

// independent brute-force route: the 8 entries written out directly
std::array<double, 8> brute_joint(double x, double xp, double y) {
    std::array<double, 8> p{};
    for (int a = 1; a <= 2; ++a)
        for (int ap = 1; ap <= 2; ++ap)
            for (int b = 3; b <= 4; ++b) {
                const double s1 = ((a + b) % 2 == 0) ? 1.0 : -1.0;
                const double s2 = ((ap + b) % 2 == 0) ? 1.0 : -1.0;
                p[TwoTimeJoint::index(a, ap, b)] =
                    (1.0 + s1 * std::cos(x + y)) / 4.0 * (1.0 + s2 * std::cos(xp + y)) / 2.0;
            }
    return p;
}
}  // namespace

TEST_CASE("joint law values at pinned settings") {
    {
        TwoTimeJoint j = two_time_joint(0, 0, 0);
        CHECK(j.at(1, 1, 3) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(j.at(2, 2, 4) == doctest::Approx(0.5).epsilon(1e-12));
        for (int a = 1; a <= 2; ++a)
            for (int ap = 1; ap <= 2; ++ap)
                for (int b = 3; b <= 4; ++b)
                    if (!((a == 1 && ap == 1 && b == 3) || (a == 2 && ap == 2 && b == 4)))
                        CHECK(j.at(a, ap, b) == doctest::Approx(0.0).epsilon(1e-12));
    }
    {
        TwoTimeJoint j = two_time_joint(pi / 2, pi / 2, pi / 2);
        CHECK(j.at(1, 1, 4) == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("joint law normalization and non-negativity over random settings") {
    std::mt19937_64 g(21);
    for (int i = 0; i < 100; ++i) {
        TwoTimeJoint j = two_time_joint(u01(g) * 2 * pi, u01(g) * 2 * pi, u01(g) * 2 * pi);
        CHECK(std::abs(j.sum() - 1.0) < 1e-12);
        for (double p : j.p) CHECK(p >= -1e-15);
        auto brute = brute_joint(j.x, j.xp, j.y);
        for (int k = 0; k < 8; ++k) CHECK(std::abs(j.p[k] - brute[k]) < 1e-15);
    }
}

TEST_CASE("first marginal recovers the coincidence law, independent of xp") {
    {
        PairTable t = marginal_first(two_time_joint(0, 1.234, 0));
        CHECK(t.at(0, 0) == doctest::Approx(0.5).epsilon(1e-12));  // (a=1,b=3)
        CHECK(t.at(0, 1) == doctest::Approx(0.0).epsilon(1e-12));  // (a=1,b=4)
    }
    {
        PairTable t = marginal_first(two_time_joint(0, 0.77, pi));
        CHECK(t.at(0, 0) == doctest::Approx(0.0).epsilon(1e-12));
    }
    const double x = 0.3, y = 1.1;
    PairTable ref = marginal_first(two_time_joint(x, 0.0, y));
    for (int s = 0; s < 50; ++s) {
        PairTable t = marginal_first(two_time_joint(x, 2 * pi * s / 50.0, y));
        for (int i = 0; i < 4; ++i) CHECK(std::abs(t.p[i] - ref.p[i]) < 1e-12);
        CHECK(std::abs(t.sum() - 1.0) < 1e-12);
    }
}

TEST_CASE("second marginal mirrors the first under x <-> xp") {
    {
        PairTable t = marginal_second(two_time_joint(0.4, 0, 0));
        CHECK(t.at(0, 0) == doctest::Approx(0.5).epsilon(1e-12));  // (a'=1,b=3)
    }
    const double xp = 0.9, y = 0.2;
    PairTable ref = marginal_second(two_time_joint(0.0, xp, y));
    for (int s = 0; s < 50; ++s) {
        PairTable t = marginal_second(two_time_joint(2 * pi * s / 50.0, xp, y));
        for (int i = 0; i < 4; ++i) CHECK(std::abs(t.p[i] - ref.p[i]) < 1e-12);
    }
    std::mt19937_64 g(8);
    for (int i = 0; i < 20; ++i) {
        const double a = u01(g) * 2 * pi, b = u01(g) * 2 * pi, c = u01(g) * 2 * pi;
        PairTable m2 = marginal_second(two_time_joint(a, b, c));
        PairTable m1s = marginal_first(two_time_joint(b, a, c));
        for (int k = 0; k < 4; ++k) CHECK(std::abs(m2.p[k] - m1s.p[k]) < 1e-12);
    }
}

TEST_CASE("alice two-time marginal depends on y") {
    CHECK(alice_two_time(two_time_joint(0, 0, 0)).at(0, 0) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(alice_two_time(two_time_joint(0, 0, pi / 2)).at(0, 0) ==
          doctest::Approx(0.25).epsilon(1e-12));
    // gap of 1/4 between y = 0 and y = pi/2
    const double gap = alice_two_time(two_time_joint(0, 0, 0)).at(0, 0) -
                       alice_two_time(two_time_joint(0, 0, pi / 2)).at(0, 0);
    CHECK(gap == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("signalling gap") {
    const std::vector<double> two{0.0, pi / 2};
    CHECK(signalling_gap(0.0, 0.0, two) == doctest::Approx(0.25).epsilon(1e-12));

    const std::vector<double> one{0.77};
    CHECK(signalling_gap(0.3, 0.9, one) == 0.0);

    CHECK_THROWS_AS(signalling_gap(0, 0, std::vector<double>{}), std::invalid_argument);

    // brute-force oracle: marginalize the 8-entry table per y directly
    std::mt19937_64 g(31);
    for (int trial = 0; trial < 20; ++trial) {
        const double x = u01(g) * 2 * pi, xp = u01(g) * 2 * pi;
        std::vector<double> grid;
        for (int s = 0; s < 9; ++s) grid.push_back(u01(g) * 2 * pi);
        std::array<double, 4> lo{}, hi{};
        bool first = true;
        for (double y : grid) {
            auto p = brute_joint(x, xp, y);
            for (int a = 0; a < 2; ++a)
                for (int ap = 0; ap < 2; ++ap) {
                    const double v = p[TwoTimeJoint::index(a + 1, ap + 1, 3)] +
                                     p[TwoTimeJoint::index(a + 1, ap + 1, 4)];
                    const int k = a * 2 + ap;
                    if (first || v < lo[k]) lo[k] = v;
                    if (first || v > hi[k]) hi[k] = v;
                }
            first = false;
        }
        double expect = 0.0;
        for (int k = 0; k < 4; ++k) expect = std::max(expect, hi[k] - lo[k]);
        CHECK(std::abs(signalling_gap(x, xp, grid) - expect) < 1e-12);
    }
}

TEST_CASE("sampler support at zero phases") {
    for (std::uint64_t i = 0; i < 200; ++i) {
        OutcomeTriple o = sample_outcome(0, 0, 0, 42, i);
        const bool ok = (o.a == 1 && o.ap == 1 && o.b == 3) || (o.a == 2 && o.ap == 2 && o.b == 4);
        CHECK(ok);
    }
}

TEST_CASE("sampler reproduces the joint law") {
    const double x = pi / 3, xp = pi / 5, y = pi / 7;
    TwoTimeJoint j = two_time_joint(x, xp, y);
    std::array<double, 8> emp{};
    const long n = 100000;
    for (long i = 0; i < n; ++i) {
        OutcomeTriple o = sample_outcome(x, xp, y, 7, i);
        emp[TwoTimeJoint::index(o.a, o.ap, o.b)] += 1.0;
    }
    double l1 = 0.0;
    for (int k = 0; k < 8; ++k) l1 += std::abs(emp[k] / n - j.p[k]);
    CHECK(l1 < 0.01);
}

TEST_CASE("sampler determinism") {
    for (std::uint64_t i = 0; i < 50; ++i) {
        OutcomeTriple a = sample_outcome(0.3, 0.8, 1.9, 1234, i);
        OutcomeTriple b = sample_outcome(0.3, 0.8, 1.9, 1234, i);
        CHECK(a.a == b.a);
        CHECK(a.ap == b.ap);
        CHECK(a.b == b.b);
    }
}

TEST_CASE("chsh from samples") {
    auto est = chsh_from_samples(0.0, pi / 2, -pi / 4, pi / 4, 100000, 1);
    CHECK(std::abs(est.s - 2.0 * std::sqrt(2.0)) < 3.0 * est.stderr_s);
    CHECK((est.s - 2.0) / est.stderr_s > 5.0);

    auto zero = chsh_from_samples(0, 0, 0, 0, 1000, 1);
    CHECK(std::abs(zero.s - 2.0) < 3.0 * std::max(zero.stderr_s, 1e-6) + 0.2);

    auto tiny = chsh_from_samples(0.5, 1.5, 2.5, 3.5, 1, 9);
    CHECK(tiny.s >= -4.0);
    CHECK(tiny.s <= 4.0);

    CHECK_THROWS_AS(chsh_from_samples(0, 0, 0, 0, 0, 1), std::invalid_argument);
}
