#pragma once

#include <complex>
#include <span>
#include <vector>

#include "pwlab/fft.hpp"
#include "pwlab/grid.hpp"

namespace pwlab::wave {

using cplx = std::complex<double>;

struct WaveField {
    Grid grid;
    fft::avector<cplx> amps;  // row-major [ix*ny + iy]
    double time = 0.0;

    double norm_l2() const;  // sqrt(sum |a|^2 dV)
    void normalize();

    cplx& at(int ix, int iy = 0) { return amps[static_cast<std::size_t>(ix) * grid.ny() + iy]; }
    const cplx& at(int ix, int iy = 0) const {
        return amps[static_cast<std::size_t>(ix) * grid.ny() + iy];
    }
};

struct PacketSpec {
    double center = 0.0;
    double momentum = 0.0;
    double sigma = 1.0;  // position-space std dev of |psi|^2
};

// Normalized Gaussian exp(-(x-c)^2/(4 sigma^2) + i p (x-c)/hbar);
// 2D takes a per-axis spec and builds the product state. Throws
// PhysicsError if a packet is too narrow for the grid (sigma <= 2 dx)
// or its momentum support leaves the spectral band.
WaveField init_gaussian(const Grid& grid, const PacketSpec& x_spec);
WaveField init_gaussian(const Grid& grid, const PacketSpec& x_spec, const PacketSpec& y_spec);

struct SuperposeTerm {
    cplx weight;
    const WaveField* field;
};

// Weighted sum of same-grid fields, renormalized with the exact
// branch overlaps. Reports the largest pairwise |<i|j>| if asked.
WaveField superpose(std::span<const SuperposeTerm> terms, double* max_overlap = nullptr);

// --- observables ----------------------------------------------------

double mean_position(const WaveField& f, int ax);
double position_variance(const WaveField& f, int ax);
double mean_momentum(const WaveField& f, int ax);  // spectral
double kinetic_energy(const WaveField& f);         // <H> for V=0
// per-cell probability mass along one axis (sums to ~1)
std::vector<double> density_marginal(const WaveField& f, int ax);

// --- pointer coupling --------------------------------------------------

enum class SignRule { plus_on_region, plus_minus_split };

struct Interval {
    double lo = 0.0, hi = 0.0;
};

struct KickSpec {
    double strength = 0.0;          // momentum transferred to the pointer
    std::vector<Interval> region;   // particle-axis interval(s)
    SignRule rule = SignRule::plus_on_region;
    double t_apply = 0.0;
};

// Impulsive position-diagonal unitary:
//   amps(x,y) *= exp(i k y s(x) / hbar)
// s = 1 on region[0] (plus_on_region), or +1 on region[0] and -1 on
// region[1] (plus_minus_split), 0 elsewhere. 2D fields only.
void apply_kick_inplace(WaveField& f, const KickSpec& kick);
WaveField apply_kick(const WaveField& f, const KickSpec& kick);

// tau = M sigma_y / k: time for the kicked pointer branch to move by
// one spread. Returns +inf for k = 0 ("never").
double pointer_separation_time(double kick_strength, double pointer_mass, double sigma_y);

// Total-variation distance between the pointer-position marginals
// conditioned on the particle being left/right of split_x. In [0,1].
// Throws if either branch carries < 1e-9 probability.
double branch_distinguishability(const WaveField& f, double split_x);

// Scenario-level bandwidth guard: the spectral band must cover packet
// momentum plus kick with a 4x margin on each axis.
void check_bandwidth(const Grid& grid, std::span<const PacketSpec> x_packets,
                     double kick_strength);

}  // namespace pwlab::wave
