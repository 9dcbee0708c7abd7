#pragma once

#include <array>

#include "pwlab/evolve.hpp"
#include "pwlab/wavefield.hpp"

namespace pwlab::traj {

using wave::cplx;
using wave::Grid;
using Point = std::array<double, 2>;  // [x, y]; y unused in 1D

// Frozen field snapshot with spectrally computed gradients, the data a
// guidance-velocity evaluation needs. Snapshots are immutable once
// built and safe to read from any number of threads.
struct VelocitySnapshot {
    double time = 0.0;
    Grid grid;
    fft::avector<cplx> psi;
    std::array<fft::avector<cplx>, 2> dpsi;  // per axis
    double max_abs2 = 0.0;

    // Cubic Lagrange interpolation (periodic) of psi and its gradient.
    struct Probe {
        cplx psi;
        std::array<cplx, 2> dpsi;
    };
    Probe probe(const Point& p) const;

    // Guidance law v_i = (hbar/m_i) Im(d_i psi / psi). Returns false
    // near a node (|psi|^2 < node_frac * max |psi|^2); v is not
    // written in that case.
    bool velocity(const Point& p, std::array<double, 2>& v, double node_frac = 1e-12) const;
};

// Builds a snapshot from the evolver's current field, reusing its
// cached spectrum for the gradients.
VelocitySnapshot make_snapshot(wave::SplitStepEvolver& ev);

}  // namespace pwlab::traj
