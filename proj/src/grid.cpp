#include "pwlab/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pwlab/errors.hpp"

namespace pwlab::wave {

double Grid::wavenumber(int ax, int i) const {
    const int n = axis[ax].n;
    const double dk = 2.0 * std::numbers::pi / axis[ax].extent;
    const int signed_i = (i <= n / 2) ? i : i - n;
    return dk * signed_i;
}

double Grid::nyquist(int ax) const { return std::numbers::pi / dx(ax); }

double Grid::cell_volume() const {
    double v = dx(0);
    if (dims == 2) v *= dx(1);
    return v;
}

void Grid::validate() const {
    if (dims != 1 && dims != 2) throw PhysicsError("grid: dims must be 1 or 2");
    if (!(dt > 0.0)) throw PhysicsError("grid: dt must be positive");
    if (!(hbar > 0.0)) throw PhysicsError("grid: hbar must be positive");
    for (int ax = 0; ax < dims; ++ax) {
        const AxisSpec& a = axis[ax];
        if (a.n < 64 || (a.n & (a.n - 1)) != 0)
            throw PhysicsError("grid: axis " + std::to_string(ax) +
                               " point count must be a power of two >= 64, got " +
                               std::to_string(a.n));
        if (!(a.extent > 0.0))
            throw PhysicsError("grid: axis " + std::to_string(ax) + " extent must be positive");
        if (!(a.mass > 0.0))
            throw PhysicsError("grid: axis " + std::to_string(ax) + " mass must be positive");
    }
}

}  // namespace pwlab::wave
