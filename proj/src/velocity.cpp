#include "pwlab/velocity.hpp"

#include <cmath>

#include "pwlab/kernels.hpp"

namespace pwlab::traj {

namespace {

// 4-point Lagrange weights at fractional offset t in [0,1) relative to
// the second node of the stencil.
inline void cubic_weights(double t, double w[4]) {
    const double t2 = t * t, t3 = t2 * t;
    w[0] = -(t3 - 3.0 * t2 + 2.0 * t) / 6.0;
    w[1] = (t3 - 2.0 * t2 - t + 2.0) / 2.0;
    w[2] = -(t3 - t2 - 2.0 * t) / 2.0;
    w[3] = (t3 - t) / 6.0;
}

inline int wrap(int i, int n) {
    i %= n;
    return i < 0 ? i + n : i;
}

}  // namespace

VelocitySnapshot::Probe VelocitySnapshot::probe(const Point& p) const {
    Probe out{};
    const int nx = grid.nx();
    const double ux = (p[0] - grid.origin(0)) / grid.dx(0);
    const int ix0 = static_cast<int>(std::floor(ux));
    double wx[4];
    cubic_weights(ux - ix0, wx);

    if (grid.dims == 1) {
        for (int a = 0; a < 4; ++a) {
            const int i = wrap(ix0 - 1 + a, nx);
            out.psi += wx[a] * psi[i];
            out.dpsi[0] += wx[a] * dpsi[0][i];
        }
        return out;
    }

    const int ny = grid.ny();
    const double uy = (p[1] - grid.origin(1)) / grid.dx(1);
    const int iy0 = static_cast<int>(std::floor(uy));
    double wy[4];
    cubic_weights(uy - iy0, wy);

    int cols[4];
    for (int b = 0; b < 4; ++b) cols[b] = wrap(iy0 - 1 + b, ny);
    for (int a = 0; a < 4; ++a) {
        const std::size_t row = static_cast<std::size_t>(wrap(ix0 - 1 + a, nx)) * ny;
        cplx s{}, sx{}, sy{};
        for (int b = 0; b < 4; ++b) {
            const std::size_t idx = row + cols[b];
            s += wy[b] * psi[idx];
            sx += wy[b] * dpsi[0][idx];
            sy += wy[b] * dpsi[1][idx];
        }
        out.psi += wx[a] * s;
        out.dpsi[0] += wx[a] * sx;
        out.dpsi[1] += wx[a] * sy;
    }
    return out;
}

bool VelocitySnapshot::velocity(const Point& p, std::array<double, 2>& v,
                                double node_frac) const {
    const Probe pr = probe(p);
    const double a2 = std::norm(pr.psi);
    if (a2 < node_frac * max_abs2) return false;
    for (int ax = 0; ax < grid.dims; ++ax) {
        // Im(dpsi/psi) = Im(dpsi * conj(psi)) / |psi|^2
        const double im = std::imag(pr.dpsi[ax] * std::conj(pr.psi));
        v[ax] = grid.hbar / grid.axis[ax].mass * im / a2;
    }
    if (grid.dims == 1) v[1] = 0.0;
    return true;
}

VelocitySnapshot make_snapshot(wave::SplitStepEvolver& ev) {
    VelocitySnapshot s;
    const wave::WaveField& f = ev.field();
    s.time = f.time;
    s.grid = f.grid;
    s.psi = f.amps;
    const auto& spec = ev.spectrum();
    const int nx = s.grid.nx(), ny = s.grid.ny();
    const std::size_t n = s.grid.size();
    const double inv_n = 1.0 / static_cast<double>(n);

    if (s.grid.dims == 1) {
        std::vector<double> kx(nx);
        for (int i = 0; i < nx; ++i) kx[i] = s.grid.wavenumber(0, i);
        s.dpsi[0].resize(n);
        kernels::spectral_deriv_1d(s.dpsi[0].data(), spec.data(), kx.data(), n);
        fft::inverse_1d(s.dpsi[0].data(), nx);
        kernels::scale(s.dpsi[0].data(), inv_n, n);
    } else {
        std::vector<double> kx(nx), ky(ny);
        for (int i = 0; i < nx; ++i) kx[i] = s.grid.wavenumber(0, i);
        for (int i = 0; i < ny; ++i) ky[i] = s.grid.wavenumber(1, i);
        s.dpsi[0].resize(n);
        kernels::spectral_deriv_2d_x(s.dpsi[0].data(), spec.data(), kx.data(), nx, ny);
        fft::inverse_2d(s.dpsi[0].data(), nx, ny);
        kernels::scale(s.dpsi[0].data(), inv_n, n);
        s.dpsi[1].resize(n);
        kernels::spectral_deriv_2d_y(s.dpsi[1].data(), spec.data(), ky.data(), nx, ny);
        fft::inverse_2d(s.dpsi[1].data(), nx, ny);
        kernels::scale(s.dpsi[1].data(), inv_n, n);
    }
    s.max_abs2 = kernels::max_abs2(s.psi.data(), n);
    return s;
}

}  // namespace pwlab::traj
