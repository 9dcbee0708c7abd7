#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "pwlab/errors.hpp"
#include "pwlab/evolve.hpp"
#include "pwlab/fft.hpp"
#include "pwlab/kernels.hpp"
#include "pwlab/wavefield.hpp"
#include "support/oracles.hpp"

using namespace pwlab;
using namespace pwlab::wave;
using cplx = std::complex<double>;

namespace {

Grid grid_1d(int n, double extent, double dt) {
    Grid g;
    g.dims = 1;
    g.axis[0] = {n, extent, 1.0};
    g.dt = dt;
    return g;
}

Grid grid_2d(int n, double extent, double dt, double pointer_mass = 1.0) {
    Grid g;
    g.dims = 2;
    g.axis[0] = {n, extent, 1.0};
    g.axis[1] = {n, extent, pointer_mass};
    g.dt = dt;
    return g;
}

double l2_diff(const WaveField& a, const WaveField& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.amps.size(); ++i) s += std::norm(a.amps[i] - b.amps[i]);
    return std::sqrt(s * a.grid.cell_volume());
}

}  // namespace

TEST_CASE("gaussian init: moments and normalization") {
    Grid g = grid_1d(1024, 64.0, 0.01);
    WaveField f = init_gaussian(g, {0.0, 0.0, 1.0});
    CHECK(std::abs(f.norm_l2() - 1.0) < 1e-12);
    CHECK(std::abs(mean_position(f, 0)) < 1e-10);
    CHECK(std::abs(mean_momentum(f, 0)) < 1e-10);

    WaveField boosted = init_gaussian(g, {-3.0, 2.0, 1.5});
    CHECK(mean_position(boosted, 0) == doctest::Approx(-3.0).epsilon(1e-9));
    CHECK(mean_momentum(boosted, 0) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("gaussian init: rejects bad packets") {
    Grid g = grid_1d(64, 64.0, 0.01);  // dx = 1
    CHECK_THROWS_AS(init_gaussian(g, {0.0, 0.0, 1.5}), PhysicsError);  // sigma <= 2 dx
    Grid g2 = grid_1d(1024, 64.0, 0.01);
    CHECK_THROWS_AS(init_gaussian(g2, {0.0, 60.0, 1.0}), PhysicsError);  // out of band
    CHECK_THROWS_AS(init_gaussian(g2, {31.0, 0.0, 1.0}), PhysicsError);  // at the boundary
}

TEST_CASE("free dispersion follows the analytic width") {
    Grid g = grid_1d(1024, 64.0, 0.01);
    WaveField f = init_gaussian(g, {0.0, 0.0, 1.0});
    // three spreading times (t_s = 2 m sigma^2 / hbar = 2)
    f = evolve(f, 600);
    const double got = std::sqrt(position_variance(f, 0));
    const double want = oracles::free_gaussian_sigma(1.0, 1.0, 1.0, 6.0);
    CHECK(std::abs(got - want) / want < 1e-6);
}

TEST_CASE("boosted packet drifts at p/m") {
    Grid g = grid_1d(1024, 64.0, 0.005);
    WaveField f = init_gaussian(g, {-8.0, 2.0, 1.0});
    f = evolve(f, 800);  // t = 4
    CHECK(std::abs(mean_position(f, 0) - (-8.0 + 2.0 * 4.0)) < 1e-8);
}

TEST_CASE("energy and norm are conserved") {
    Grid g = grid_1d(1024, 64.0, 0.01);
    WaveField f = init_gaussian(g, {-5.0, 1.0, 1.2});
    const double e0 = kinetic_energy(f);
    WaveField f1 = evolve(f, 1);
    CHECK(std::abs(f1.norm_l2() - 1.0) < 1e-10);
    WaveField fn = evolve(f, 1000);
    CHECK(std::abs(fn.norm_l2() - 1.0) < 1e-8);
    CHECK(std::abs(kinetic_energy(fn) - e0) / e0 < 1e-8);
}

TEST_CASE("evolve zero steps returns the field unchanged") {
    Grid g = grid_1d(256, 64.0, 0.01);
    WaveField f = init_gaussian(g, {1.0, 0.5, 2.0});
    WaveField same = evolve(f, 0);
    CHECK(l2_diff(f, same) == 0.0);
    CHECK_THROWS_AS(evolve(f, -1), std::invalid_argument);
}

TEST_CASE("superpose: weights, identity, overlap handling") {
    Grid g = grid_1d(1024, 64.0, 0.01);
    WaveField a = init_gaussian(g, {-8.0, 0.0, 1.0});
    WaveField b = init_gaussian(g, {8.0, 0.0, 1.0});
    {
        const SuperposeTerm terms[] = {{1.0, &a}, {1.0, &b}};
        double ov = -1.0;
        WaveField s = superpose(terms, &ov);
        CHECK(ov < 1e-10);  // disjoint branches
        double left = 0.0;
        for (int i = 0; i < g.nx() / 2; ++i) left += std::norm(s.amps[i]) * g.dx(0);
        CHECK(left == doctest::Approx(0.5).epsilon(1e-10));
    }
    {
        const SuperposeTerm terms[] = {{1.0, &a}, {0.0, &b}};
        WaveField s = superpose(terms);
        CHECK(l2_diff(s, a) < 1e-12);
    }
    {
        // two identical packets collapse back to one after renormalization
        const SuperposeTerm terms[] = {{1.0, &a}, {1.0, &a}};
        double ov = 0.0;
        WaveField s = superpose(terms, &ov);
        CHECK(ov == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(l2_diff(s, a) < 1e-10);
    }
    {
        Grid g2 = grid_1d(512, 64.0, 0.01);
        WaveField c = init_gaussian(g2, {0.0, 0.0, 1.0});
        const SuperposeTerm terms[] = {{1.0, &a}, {1.0, &c}};
        CHECK_THROWS_AS(superpose(terms), std::invalid_argument);
    }
}

TEST_CASE("split-step agrees with the Crank-Nicolson oracle (1D)") {
    Grid g = grid_1d(16384, 32.0, 5e-4);
    WaveField f = init_gaussian(g, {0.0, 0.25, 2.0});
    WaveField ss = evolve(f, 1000);
    WaveField cn = oracles::crank_nicolson_evolve(f, 1000);
    CHECK(std::abs(cn.norm_l2() - 1.0) < 1e-10);  // CN is unitary too
    CHECK(l2_diff(ss, cn) < 1e-5);
}

TEST_CASE("split-step agrees with the ADI Crank-Nicolson oracle (2D)") {
    // centered packets: an off-center packet's wrapped boundary tail
    // injects high-k modes whose finite-difference dispersion error
    // dominates the comparison
    Grid g = grid_2d(256, 32.0, 5e-4, 2.0);
    WaveField f = init_gaussian(g, {0.0, 0.0, 2.5}, {0.0, 0.0, 2.5});
    WaveField ss = evolve(f, 500);
    WaveField cn = oracles::crank_nicolson_adi_evolve(f, 500);
    CHECK(l2_diff(ss, cn) < 1e-5);
}

TEST_CASE("counter-propagating packets pass through each other (analytic oracle)") {
    Grid g = grid_1d(2048, 64.0, 0.005);
    WaveField a = init_gaussian(g, {-6.0, 3.0, 1.5});
    WaveField b = init_gaussian(g, {6.0, -3.0, 1.5});
    const SuperposeTerm terms[] = {{1.0, &a}, {1.0, &b}};
    WaveField s0 = superpose(terms);

    // oracle self-check: the closed form satisfies the Schrodinger
    // equation (finite-difference residual)
    {
        const PacketSpec p{-6.0, 3.0, 1.5};
        const double x = -4.3, t = 0.7, eps = 1e-4;
        const cplx dpsi_dt = (oracles::free_gaussian(p, 1, 1, x, t + eps) -
                              oracles::free_gaussian(p, 1, 1, x, t - eps)) /
                             (2.0 * eps);
        const cplx lap = (oracles::free_gaussian(p, 1, 1, x + eps, t) -
                          2.0 * oracles::free_gaussian(p, 1, 1, x, t) +
                          oracles::free_gaussian(p, 1, 1, x - eps, t)) /
                         (eps * eps);
        const cplx residual = cplx(0, 1) * dpsi_dt + 0.5 * lap;
        CHECK(std::abs(residual) < 1e-5);
    }

    const double t = 4.0;  // packets have swapped sides
    WaveField st = evolve(s0, 800);
    // analytic superposition with the same normalization as the grid state
    double raw = 0.0;
    for (int i = 0; i < g.nx(); ++i) {
        const double x = g.coord(0, i);
        raw += std::norm(oracles::free_gaussian({-6.0, 3.0, 1.5}, 1, 1, x, 0.0) +
                         oracles::free_gaussian({6.0, -3.0, 1.5}, 1, 1, x, 0.0)) *
               g.dx(0);
    }
    const double w = 1.0 / std::sqrt(raw);
    double err2 = 0.0;
    for (int i = 0; i < g.nx(); ++i) {
        const double x = g.coord(0, i);
        const cplx expect = w * (oracles::free_gaussian({-6.0, 3.0, 1.5}, 1, 1, x, t) +
                                 oracles::free_gaussian({6.0, -3.0, 1.5}, 1, 1, x, t));
        err2 += std::norm(st.amps[i] - expect) * g.dx(0);
    }
    CHECK(std::sqrt(err2) < 1e-6);
}

TEST_CASE("spectral leakage is detected") {
    Grid g = grid_1d(256, 32.0, 0.01);
    WaveField f = init_gaussian(g, {0.0, 0.0, 1.0});
    // inject energy at the band edge
    for (int i = 0; i < g.nx(); ++i)
        f.amps[i] += 0.1 * std::exp(cplx(0, 1) * (g.nyquist(0) * 0.98 * g.coord(0, i)));
    f.normalize();
    CHECK_THROWS_AS(evolve(f, 1), PhysicsError);
}

TEST_CASE("apply_kick: null kick, momentum transfer, orthogonality") {
    Grid g = grid_2d(128, 32.0, 0.01);
    WaveField f = init_gaussian(g, {0.0, 0.0, 1.0}, {0.0, 0.0, 1.0});

    KickSpec null_kick{0.0, {{-16.0, 16.0}}, SignRule::plus_on_region, 0.0};
    WaveField same = apply_kick(f, null_kick);
    CHECK(l2_diff(f, same) == 0.0);

    // particle fully inside the region: pointer momentum shifts by k
    const double k = 4.0;
    KickSpec kick{k, {{-16.0, 16.0}}, SignRule::plus_on_region, 0.0};
    WaveField kicked = apply_kick(f, kick);
    CHECK(std::abs(kicked.norm_l2() - 1.0) < 1e-12);
    const double dk = 2.0 * std::numbers::pi / 32.0;
    CHECK(std::abs(mean_momentum(kicked, 1) - k) < dk);

    // k sigma_y / hbar = 4: pointer states overlap at the e^{-8} level
    cplx ov{0.0, 0.0};
    for (std::size_t i = 0; i < f.amps.size(); ++i)
        ov += std::conj(f.amps[i]) * kicked.amps[i];
    ov *= g.cell_volume();
    CHECK(std::abs(std::abs(ov) - std::exp(-8.0)) < 1e-6);

    Grid g1 = grid_1d(256, 32.0, 0.01);
    WaveField f1 = init_gaussian(g1, {0.0, 0.0, 1.0});
    CHECK_THROWS_AS(apply_kick(f1, kick), std::invalid_argument);

    KickSpec outside{1.0, {{-40.0, -20.0}}, SignRule::plus_on_region, 0.0};
    CHECK_THROWS_AS(apply_kick(f, outside), PhysicsError);
}

TEST_CASE("plus-minus split kick kicks the two arms in opposite directions") {
    Grid g = grid_2d(256, 64.0, 0.01);
    WaveField a = init_gaussian(g, {-8.0, 0.0, 1.0}, {0.0, 0.0, 1.0});
    WaveField b = init_gaussian(g, {8.0, 0.0, 1.0}, {0.0, 0.0, 1.0});
    const SuperposeTerm terms[] = {{1.0, &a}, {1.0, &b}};
    WaveField s = superpose(terms);
    KickSpec kick{2.0, {{-32.0, 0.0}, {0.0, 32.0}}, SignRule::plus_minus_split, 0.0};
    apply_kick_inplace(s, kick);
    // total <p_y> stays zero by symmetry; each branch carries +-k
    CHECK(std::abs(mean_momentum(s, 1)) < 1e-9);
    WaveField left_kicked =
        apply_kick(a, KickSpec{2.0, {{-32.0, 0.0}}, SignRule::plus_on_region, 0.0});
    CHECK(std::abs(mean_momentum(left_kicked, 1) - 2.0) < 0.2);
}

TEST_CASE("pointer separation time") {
    CHECK(pointer_separation_time(2.0, 1.0, 1.0) == doctest::Approx(0.5));
    CHECK(pointer_separation_time(2.0, 2.0, 1.0) == doctest::Approx(1.0));
    CHECK(std::isinf(pointer_separation_time(0.0, 1.0, 1.0)));
    CHECK_THROWS_AS(pointer_separation_time(1.0, -1.0, 1.0), std::invalid_argument);

    // displacement equals the spread after tau in a real evolution
    Grid g = grid_2d(128, 32.0, 0.01, 2.0);
    WaveField f = init_gaussian(g, {0.0, 0.0, 1.0}, {0.0, 0.0, 1.0});
    const double k = 2.0, tau = pointer_separation_time(k, 2.0, 1.0);  // tau = 1
    WaveField kicked = apply_kick(f, {k, {{-16.0, 16.0}}, SignRule::plus_on_region, 0.0});
    WaveField late = evolve(kicked, 100);  // t = tau
    CHECK(std::abs(mean_position(late, 1) - 1.0) < 0.05);
    CHECK(late.time == doctest::Approx(tau));
}

TEST_CASE("branch distinguishability") {
    Grid g = grid_2d(256, 64.0, 0.01, 4.0);
    WaveField f0 = init_gaussian(g, {-8.0, 0.0, 1.0}, {0.0, 0.0, 1.0});
    WaveField f1 = init_gaussian(g, {8.0, 0.0, 1.0}, {0.0, 0.0, 1.0});
    {
        // identical pointer marginals on both sides
        const SuperposeTerm terms[] = {{1.0, &f0}, {1.0, &f1}};
        WaveField s = superpose(terms);
        CHECK(branch_distinguishability(s, 0.0) < 1e-10);
        // a kick alone only changes the phase: still indistinguishable
        apply_kick_inplace(s, {3.0, {{-32.0, 0.0}}, SignRule::plus_on_region, 0.0});
        CHECK(branch_distinguishability(s, 0.0) < 0.05);
    }
    {
        // displaced pointer branch on one side
        WaveField moved = init_gaussian(g, {8.0, 0.0, 1.0}, {5.0, 0.0, 1.0});
        const SuperposeTerm terms[] = {{1.0, &f0}, {1.0, &moved}};
        WaveField s = superpose(terms);
        CHECK(branch_distinguishability(s, 0.0) > 0.95);
    }
    {
        WaveField lone = init_gaussian(g, {8.0, 0.0, 1.0}, {0.0, 0.0, 1.0});
        CHECK_THROWS_AS(branch_distinguishability(lone, -31.0), PhysicsError);
    }
}

TEST_CASE("kick commutes with particle-axis-only evolution") {
    // the packet must stay far from the region edge: the commutator
    // picks up exactly the amplitude that crosses it
    Grid g = grid_2d(256, 64.0, 0.01);
    WaveField f = init_gaussian(g, {-16.0, 0.2, 1.0}, {0.0, 0.0, 1.0});
    KickSpec kick{3.0, {{-32.0, 0.0}}, SignRule::plus_on_region, 0.0};

    // particle-axis-only propagator applied by hand in spectral space
    auto evolve_x_only = [&](const WaveField& in, int steps) {
        WaveField out = in;
        fft::forward_2d(out.amps.data(), g.nx(), g.ny());
        for (int ix = 0; ix < g.nx(); ++ix) {
            const double kx = g.wavenumber(0, ix);
            const cplx ph = std::exp(cplx(0, -1) * (0.5 * kx * kx * g.dt * steps));
            for (int iy = 0; iy < g.ny(); ++iy)
                out.amps[static_cast<std::size_t>(ix) * g.ny() + iy] *= ph;
        }
        fft::inverse_2d(out.amps.data(), g.nx(), g.ny());
        kernels::scale(out.amps.data(), 1.0 / static_cast<double>(g.size()), out.amps.size());
        return out;
    };

    WaveField a = apply_kick(evolve_x_only(f, 50), kick);
    WaveField b = evolve_x_only(apply_kick(f, kick), 50);
    CHECK(l2_diff(a, b) < 1e-10);

    // moving the packet against the region edge breaks the commutation:
    // the identity really is support-conditional
    WaveField edge = init_gaussian(g, {-2.0, 0.2, 1.0}, {0.0, 0.0, 1.0});
    WaveField ea = apply_kick(evolve_x_only(edge, 50), kick);
    WaveField eb = evolve_x_only(apply_kick(edge, kick), 50);
    CHECK(l2_diff(ea, eb) > 1e-6);
}
