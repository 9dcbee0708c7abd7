#include "pwlab/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "pwlab/errors.hpp"
#include "pwlab/rng.hpp"

namespace pwlab::traj {

namespace {

// Inverse CDF of a piecewise-constant cell density given the running
// cumulative sums: picks the cell, then places the point uniformly
// inside it.
double draw_from_cells(const double* cum, std::size_t n, double origin, double dx, double u) {
    const double total = cum[n - 1];
    const double target = u * total;
    auto it = std::upper_bound(cum, cum + n, target);
    std::size_t cell = std::min(static_cast<std::size_t>(it - cum), n - 1);
    const double lo = cell == 0 ? 0.0 : cum[cell - 1];
    const double mass = cum[cell] - lo;
    const double frac = mass > 0.0 ? (target - lo) / mass : 0.5;
    return origin + (static_cast<double>(cell) + frac) * dx;
}

}  // namespace

double ks_distance(std::vector<double> values, const std::vector<double>& cell_mass,
                   double origin, double dx) {
    std::sort(values.begin(), values.end());
    std::vector<double> cum(cell_mass.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < cell_mass.size(); ++i) {
        acc += cell_mass[i];
        cum[i] = acc;
    }
    const double total = acc;
    const long n = static_cast<long>(values.size());
    double d = 0.0;
    for (long j = 0; j < n; ++j) {
        const double u = (values[j] - origin) / dx;
        const long cell = std::clamp<long>(static_cast<long>(std::floor(u)), 0,
                                           static_cast<long>(cell_mass.size()) - 1);
        const double lo = cell == 0 ? 0.0 : cum[cell - 1];
        const double f = (lo + cell_mass[cell] * (u - cell)) / total;
        d = std::max(d, std::abs(f - static_cast<double>(j) / n));
        d = std::max(d, std::abs(f - static_cast<double>(j + 1) / n));
    }
    return d;
}

Ensemble sample_initial(const wave::WaveField& f, long n, std::uint64_t seed) {
    if (n < 1) throw PhysicsError("sample_initial: need n >= 1");
    const wave::Grid& g = f.grid;
    const int nx = g.nx(), ny = g.ny();

    // per-cell masses; x marginal and per-row cumulative tables
    std::vector<double> xmass(nx, 0.0);
    std::vector<double> row_cum;  // 2D only: [ix*ny + iy] cumulative within row
    if (g.dims == 2) row_cum.resize(g.size());
    for (int ix = 0; ix < nx; ++ix) {
        double acc = 0.0;
        for (int iy = 0; iy < ny; ++iy) {
            acc += std::norm(f.at(ix, iy));
            if (g.dims == 2) row_cum[static_cast<std::size_t>(ix) * ny + iy] = acc;
        }
        xmass[ix] = acc;
    }
    std::vector<double> xcum(nx);
    double total = 0.0;
    for (int ix = 0; ix < nx; ++ix) {
        total += xmass[ix];
        xcum[ix] = total;
    }

    Ensemble e;
    e.seed = seed;
    e.dims = g.dims;
    e.position.resize(n);
    e.flags.resize(n);

    // Stratified quantiles: sample i draws its x quantile from stratum
    // i and (2D) its conditional-y quantile from a randomly permuted
    // stratum (Latin hypercube). Keeps the empirical CDFs within O(1/n)
    // of the law instead of O(1/sqrt n), so equivariance checks measure
    // transport error, not sampling noise.
    std::vector<std::uint32_t> y_stratum(n);
    if (g.dims == 2) {
        for (long i = 0; i < n; ++i) y_stratum[i] = static_cast<std::uint32_t>(i);
        std::mt19937_64 shuffler = substream(seed, 0x9e3779b97f4a7c15ull);
        for (long i = n - 1; i > 0; --i) {
            const long j = static_cast<long>(shuffler() % static_cast<std::uint64_t>(i + 1));
            std::swap(y_stratum[i], y_stratum[j]);
        }
    }

    for (long i = 0; i < n; ++i) {
        std::mt19937_64 gen = substream(seed, static_cast<std::uint64_t>(i));
        const double ux = (static_cast<double>(i) + u01(gen)) / static_cast<double>(n);
        Point p{};
        // x: locate the cell, uniform within it
        const double tx = ux * total;
        auto it = std::upper_bound(xcum.begin(), xcum.end(), tx);
        const int cx = std::min<int>(static_cast<int>(it - xcum.begin()), nx - 1);
        const double xlo = cx == 0 ? 0.0 : xcum[cx - 1];
        const double fx = xmass[cx] > 0.0 ? (tx - xlo) / xmass[cx] : 0.5;
        p[0] = g.origin(0) + (cx + fx) * g.dx(0);
        if (g.dims == 2) {
            // y: conditional inverse CDF within row cx
            const double uy =
                (static_cast<double>(y_stratum[i]) + u01(gen)) / static_cast<double>(n);
            const double* rc = row_cum.data() + static_cast<std::size_t>(cx) * ny;
            p[1] = draw_from_cells(rc, ny, g.origin(1), g.dx(1), uy);
        }
        e.position[i] = p;
    }

    // flag exact duplicate starts (possible only for duplicate uniforms)
    std::map<std::pair<double, double>, long> seen;
    for (long i = 0; i < n; ++i) {
        auto key = std::make_pair(e.position[i][0], e.position[i][1]);
        auto it = seen.find(key);
        if (it != seen.end()) {
            e.flags[i].duplicate_start = true;
            e.flags[it->second].duplicate_start = true;
        } else {
            seen[key] = i;
        }
    }

    // construction-time KS check at the 99% level
    const double limit = 1.63 / std::sqrt(static_cast<double>(n));
    {
        std::vector<double> xs(n), m = wave::density_marginal(f, 0);
        for (long i = 0; i < n; ++i) xs[i] = e.position[i][0];
        e.ks_initial[0] = ks_distance(std::move(xs), m, g.origin(0), g.dx(0));
    }
    if (g.dims == 2) {
        std::vector<double> ys(n), m = wave::density_marginal(f, 1);
        for (long i = 0; i < n; ++i) ys[i] = e.position[i][1];
        e.ks_initial[1] = ks_distance(std::move(ys), m, g.origin(1), g.dx(1));
    }
    if (n >= 100) {
        for (int ax = 0; ax < g.dims; ++ax)
            if (e.ks_initial[ax] > limit)
                throw PhysicsError("sample_initial: construction KS check failed on axis " +
                                   std::to_string(ax) + " (" + std::to_string(e.ks_initial[ax]) +
                                   " > " + std::to_string(limit) + ")");
    }
    return e;
}

}  // namespace pwlab::traj
