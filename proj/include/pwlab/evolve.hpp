#pragma once

#include <vector>

#include "pwlab/wavefield.hpp"

namespace pwlab::wave {

// Split-step spectral propagator for the free Hamiltonian per axis
// (optional external potential hook kept for completeness). With V = 0
// a step is kinetic-only and exact in time up to spectral truncation:
// forward FFT, multiply exp(-i hbar k^2 dt / 2m), inverse FFT. With a
// potential it runs Strang splitting V/2 - K - V/2.
class SplitStepEvolver {
  public:
    explicit SplitStepEvolver(WaveField initial, std::vector<double> potential = {});

    void step(int n = 1);

    // Scheduled impulsive kicks; applied at the step boundary nearest
    // each kick's t_apply.
    void add_kick(const KickSpec& kick);

    const WaveField& field() const { return field_; }
    WaveField& field() { return field_; }

    // Spectrum of the current field (cached after a kinetic-only step,
    // otherwise recomputed).
    const fft::avector<cplx>& spectrum();

    // Fraction of |psi_hat|^2 with |k| >= 0.9 nyquist on any axis.
    double spectral_leakage();

    long steps_taken() const { return steps_; }

  private:
    void apply_pending_kicks();
    void do_step();

    WaveField field_;
    std::vector<double> potential_;  // per grid point, empty = free
    fft::avector<cplx> spec_;
    bool spec_valid_ = false;
    fft::avector<cplx> kin_x_, kin_y_;    // per-axis kinetic phase for dt
    fft::avector<cplx> pot_half_;         // exp(-i V dt / 2 hbar)
    std::vector<KickSpec> pending_kicks_;
    long steps_ = 0;
};

// n steps of grid.dt; throws PhysicsError if spectral leakage exceeds
// 1e-6 afterwards (bandwidth violation).
WaveField evolve(const WaveField& f, int n_steps);

}  // namespace pwlab::wave
