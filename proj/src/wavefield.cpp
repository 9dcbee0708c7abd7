#include "pwlab/wavefield.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pwlab/errors.hpp"
#include "pwlab/kernels.hpp"
#include "pwlab/parallel.hpp"

namespace pwlab::wave {

namespace {
constexpr cplx kI{0.0, 1.0};
}

double WaveField::norm_l2() const {
    return std::sqrt(kernels::sum_abs2(amps.data(), amps.size()) * grid.cell_volume());
}

void WaveField::normalize() {
    double n = norm_l2();
    if (n > 0.0) kernels::scale(amps.data(), 1.0 / n, amps.size());
}

namespace {

void check_packet(const Grid& grid, int ax, const PacketSpec& s) {
    const double dx = grid.dx(ax);
    if (!(s.sigma > 2.0 * dx))
        throw PhysicsError("packet too narrow for grid: sigma = " + std::to_string(s.sigma) +
                           " <= 2*dx = " + std::to_string(2.0 * dx) + " on axis " +
                           std::to_string(ax));
    const double k_need = std::abs(s.momentum) / grid.hbar + 2.0 / s.sigma;
    if (k_need > grid.nyquist(ax))
        throw PhysicsError("packet momentum out of spectral band on axis " + std::to_string(ax) +
                           ": |p|/hbar + 2/sigma = " + std::to_string(k_need) + " > pi/dx = " +
                           std::to_string(grid.nyquist(ax)));
    const double half = 0.5 * grid.axis[ax].extent;
    if (std::abs(s.center) + 4.0 * s.sigma > half)
        throw PhysicsError("packet within 4 sigma of the boundary on axis " + std::to_string(ax));
}

void fill_axis(const Grid& grid, int ax, const PacketSpec& s, std::vector<cplx>& out) {
    const int n = grid.axis[ax].n;
    out.resize(n);
    const double norm = std::pow(2.0 * std::numbers::pi * s.sigma * s.sigma, -0.25);
    for (int i = 0; i < n; ++i) {
        const double u = grid.coord(ax, i) - s.center;
        out[i] = norm * std::exp(-u * u / (4.0 * s.sigma * s.sigma)) *
                 std::exp(kI * (s.momentum * u / grid.hbar));
    }
}

}  // namespace

WaveField init_gaussian(const Grid& grid, const PacketSpec& x_spec) {
    grid.validate();
    if (grid.dims != 1) throw std::invalid_argument("init_gaussian: 1D overload on a 2D grid");
    check_packet(grid, 0, x_spec);
    WaveField f;
    f.grid = grid;
    std::vector<cplx> gx;
    fill_axis(grid, 0, x_spec, gx);
    f.amps.assign(gx.begin(), gx.end());
    f.normalize();
    return f;
}

WaveField init_gaussian(const Grid& grid, const PacketSpec& x_spec, const PacketSpec& y_spec) {
    grid.validate();
    if (grid.dims != 2) throw std::invalid_argument("init_gaussian: 2D overload on a 1D grid");
    check_packet(grid, 0, x_spec);
    check_packet(grid, 1, y_spec);
    WaveField f;
    f.grid = grid;
    std::vector<cplx> gx, gy;
    fill_axis(grid, 0, x_spec, gx);
    fill_axis(grid, 1, y_spec, gy);
    const int nx = grid.nx(), ny = grid.ny();
    f.amps.resize(grid.size());
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy)
            f.amps[static_cast<std::size_t>(ix) * ny + iy] = gx[ix] * gy[iy];
    f.normalize();
    return f;
}

WaveField superpose(std::span<const SuperposeTerm> terms, double* max_overlap) {
    if (terms.empty()) throw std::invalid_argument("superpose: no terms");
    const Grid& g = terms[0].field->grid;
    for (const auto& t : terms)
        if (!(t.field->grid == g)) throw std::invalid_argument("superpose: grid mismatch");

    WaveField out;
    out.grid = g;
    out.time = terms[0].field->time;
    out.amps.assign(g.size(), cplx{0.0, 0.0});
    for (const auto& t : terms)
        kernels::axpy(out.amps.data(), t.weight, t.field->amps.data(), out.amps.size());

    if (max_overlap) {
        double m = 0.0;
        const double dv = g.cell_volume();
        for (std::size_t i = 0; i < terms.size(); ++i) {
            for (std::size_t j = i + 1; j < terms.size(); ++j) {
                cplx ov{0.0, 0.0};
                const cplx* a = terms[i].field->amps.data();
                const cplx* b = terms[j].field->amps.data();
                for (std::size_t m2 = 0; m2 < g.size(); ++m2) ov += std::conj(a[m2]) * b[m2];
                m = std::max(m, std::abs(ov) * dv);
            }
        }
        *max_overlap = m;
    }
    out.normalize();
    return out;
}

// --- observables ------------------------------------------------------

double mean_position(const WaveField& f, int ax) {
    const int nx = f.grid.nx(), ny = f.grid.ny();
    double num = 0.0, den = 0.0;
    for (int ix = 0; ix < nx; ++ix) {
        for (int iy = 0; iy < ny; ++iy) {
            const double w = std::norm(f.at(ix, iy));
            num += w * f.grid.coord(ax, ax == 0 ? ix : iy);
            den += w;
        }
    }
    return num / den;
}

double position_variance(const WaveField& f, int ax) {
    const double mu = mean_position(f, ax);
    const int nx = f.grid.nx(), ny = f.grid.ny();
    double num = 0.0, den = 0.0;
    for (int ix = 0; ix < nx; ++ix) {
        for (int iy = 0; iy < ny; ++iy) {
            const double w = std::norm(f.at(ix, iy));
            const double u = f.grid.coord(ax, ax == 0 ? ix : iy) - mu;
            num += w * u * u;
            den += w;
        }
    }
    return num / den;
}

namespace {

fft::avector<cplx> spectrum_of(const WaveField& f) {
    fft::avector<cplx> spec = f.amps;
    if (f.grid.dims == 1)
        fft::forward_1d(spec.data(), f.grid.nx());
    else
        fft::forward_2d(spec.data(), f.grid.nx(), f.grid.ny());
    return spec;
}

}  // namespace

double mean_momentum(const WaveField& f, int ax) {
    fft::avector<cplx> spec = spectrum_of(f);
    const int nx = f.grid.nx(), ny = f.grid.ny();
    double num = 0.0, den = 0.0;
    for (int ix = 0; ix < nx; ++ix) {
        for (int iy = 0; iy < ny; ++iy) {
            const double w = std::norm(spec[static_cast<std::size_t>(ix) * ny + iy]);
            num += w * f.grid.wavenumber(ax, ax == 0 ? ix : iy);
            den += w;
        }
    }
    return f.grid.hbar * num / den;
}

double kinetic_energy(const WaveField& f) {
    fft::avector<cplx> spec = spectrum_of(f);
    const int nx = f.grid.nx(), ny = f.grid.ny();
    const double h2 = f.grid.hbar * f.grid.hbar;
    double num = 0.0, den = 0.0;
    for (int ix = 0; ix < nx; ++ix) {
        const double kx = f.grid.wavenumber(0, ix);
        double ex = h2 * kx * kx / (2.0 * f.grid.axis[0].mass);
        for (int iy = 0; iy < ny; ++iy) {
            double e = ex;
            if (f.grid.dims == 2) {
                const double ky = f.grid.wavenumber(1, iy);
                e += h2 * ky * ky / (2.0 * f.grid.axis[1].mass);
            }
            const double w = std::norm(spec[static_cast<std::size_t>(ix) * ny + iy]);
            num += w * e;
            den += w;
        }
    }
    return num / den;
}

std::vector<double> density_marginal(const WaveField& f, int ax) {
    const int nx = f.grid.nx(), ny = f.grid.ny();
    const double dv = f.grid.cell_volume();
    std::vector<double> m(ax == 0 ? nx : ny, 0.0);
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy)
            m[ax == 0 ? ix : iy] += std::norm(f.at(ix, iy)) * dv;
    return m;
}

// --- pointer coupling ----------------------------------------------------

namespace {

// s(x) per particle cell from the kick spec
std::vector<int> region_signs(const Grid& grid, const KickSpec& kick) {
    const double half = 0.5 * grid.axis[0].extent;
    if (kick.region.empty()) throw PhysicsError("kick: empty region");
    std::size_t need = kick.rule == SignRule::plus_minus_split ? 2 : 1;
    if (kick.region.size() < need)
        throw PhysicsError("kick: plus_minus_split needs two region intervals");
    for (std::size_t r = 0; r < need; ++r) {
        const Interval& iv = kick.region[r];
        if (!(iv.hi > iv.lo)) throw PhysicsError("kick: region interval is empty");
        if (iv.lo < -half || iv.hi > half)
            throw PhysicsError("kick: region not aligned to grid extent");
        if (iv.hi - iv.lo < grid.dx(0))
            throw PhysicsError("kick: region narrower than one grid cell");
    }
    std::vector<int> s(grid.nx(), 0);
    for (int ix = 0; ix < grid.nx(); ++ix) {
        const double x = grid.coord(0, ix);
        if (x >= kick.region[0].lo && x < kick.region[0].hi)
            s[ix] = 1;
        else if (kick.rule == SignRule::plus_minus_split && x >= kick.region[1].lo &&
                 x < kick.region[1].hi)
            s[ix] = -1;
    }
    return s;
}

}  // namespace

void apply_kick_inplace(WaveField& f, const KickSpec& kick) {
    if (f.grid.dims != 2)
        throw std::invalid_argument("apply_kick: needs a 2D (particle x pointer) field");
    if (kick.strength < 0.0) throw PhysicsError("kick: strength must be >= 0");
    if (kick.strength == 0.0) return;
    const std::vector<int> s = region_signs(f.grid, kick);
    const int nx = f.grid.nx(), ny = f.grid.ny();
    fft::avector<cplx> plus(ny), minus(ny);
    for (int iy = 0; iy < ny; ++iy) {
        plus[iy] = std::exp(kI * (kick.strength * f.grid.coord(1, iy) / f.grid.hbar));
        minus[iy] = std::conj(plus[iy]);
    }
#pragma omp parallel for schedule(static) if (pwlab::parallel_enabled())
    for (int ix = 0; ix < nx; ++ix) {
        if (s[ix] == 0) continue;
        cplx* row = f.amps.data() + static_cast<std::size_t>(ix) * ny;
        const cplx* ph = (s[ix] > 0 ? plus : minus).data();
        for (int iy = 0; iy < ny; ++iy) row[iy] *= ph[iy];
    }
}

WaveField apply_kick(const WaveField& f, const KickSpec& kick) {
    WaveField out = f;
    apply_kick_inplace(out, kick);
    return out;
}

double pointer_separation_time(double kick_strength, double pointer_mass, double sigma_y) {
    if (kick_strength < 0.0 || pointer_mass <= 0.0 || sigma_y <= 0.0)
        throw std::invalid_argument("pointer_separation_time: bad arguments");
    if (kick_strength == 0.0) return std::numeric_limits<double>::infinity();
    return pointer_mass * sigma_y / kick_strength;
}

double branch_distinguishability(const WaveField& f, double split_x) {
    if (f.grid.dims != 2)
        throw std::invalid_argument("branch_distinguishability: needs a 2D field");
    const int nx = f.grid.nx(), ny = f.grid.ny();
    std::vector<double> left(ny, 0.0), right(ny, 0.0);
    double wl = 0.0, wr = 0.0;
    for (int ix = 0; ix < nx; ++ix) {
        const bool is_left = f.grid.coord(0, ix) < split_x;
        for (int iy = 0; iy < ny; ++iy) {
            const double w = std::norm(f.at(ix, iy));
            (is_left ? left : right)[iy] += w;
            (is_left ? wl : wr) += w;
        }
    }
    if (wl * f.grid.cell_volume() < 1e-9 || wr * f.grid.cell_volume() < 1e-9)
        throw PhysicsError("branch_distinguishability: branch weight below 1e-9");
    double tv = 0.0;
    for (int iy = 0; iy < ny; ++iy) tv += std::abs(left[iy] / wl - right[iy] / wr);
    return 0.5 * tv;
}

void check_bandwidth(const Grid& grid, std::span<const PacketSpec> x_packets,
                     double kick_strength) {
    double pmax = 0.0;
    for (const auto& s : x_packets) pmax = std::max(pmax, std::abs(s.momentum));
    if (4.0 * pmax / grid.hbar > grid.nyquist(0))
        throw PhysicsError("grid bandwidth on particle axis below 4x packet momentum");
    if (grid.dims == 2 && 4.0 * std::abs(kick_strength) / grid.hbar > grid.nyquist(1))
        throw PhysicsError("grid bandwidth on pointer axis below 4x kick strength");
}

}  // namespace pwlab::wave
