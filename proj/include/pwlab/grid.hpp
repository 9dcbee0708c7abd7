#pragma once

#include <array>
#include <cstddef>

namespace pwlab::wave {

struct AxisSpec {
    int n = 0;           // grid points, power of two, >= 64
    double extent = 0;   // physical length; coords run [-extent/2, extent/2)
    double mass = 1.0;   // mass of the degree of freedom on this axis

    bool operator==(const AxisSpec&) const = default;
};

// Uniform periodic grid hosting psi. Axis 0 is the particle, axis 1
// (2D only) the pointer's center of mass.
struct Grid {
    int dims = 1;
    std::array<AxisSpec, 2> axis{};
    double dt = 0;
    double hbar = 1.0;

    int nx() const { return axis[0].n; }
    int ny() const { return dims == 2 ? axis[1].n : 1; }
    std::size_t size() const { return static_cast<std::size_t>(nx()) * ny(); }

    double dx(int ax) const { return axis[ax].extent / axis[ax].n; }
    double origin(int ax) const { return -0.5 * axis[ax].extent; }
    double coord(int ax, int i) const { return origin(ax) + i * dx(ax); }

    // FFT-ordered signed wavenumber of bin i
    double wavenumber(int ax, int i) const;
    double nyquist(int ax) const;  // pi/dx
    // cell volume dx (1D) or dx*dy (2D)
    double cell_volume() const;

    bool operator==(const Grid&) const = default;

    void validate() const;  // throws PhysicsError on a bad discretization
};

}  // namespace pwlab::wave
