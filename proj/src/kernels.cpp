#include "pwlab/kernels.hpp"

#include <algorithm>
#include <vector>

#include "pwlab/parallel.hpp"

namespace pwlab::kernels {

namespace {
// Reduction block count, fixed so partial-sum association never
// depends on the thread count.
constexpr std::size_t kBlocks = 256;

inline std::size_t block_lo(std::size_t n, std::size_t b) { return n * b / kBlocks; }
}  // namespace

// --- cmul -----------------------------------------------------------

void cmul_serial(cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= b[i];
}

void cmul_omp(cplx* a, const cplx* b, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) a[i] *= b[i];
}

void cmul(cplx* a, const cplx* b, std::size_t n) {
    if (parallel_enabled() && n >= 4096)
        cmul_omp(a, b, n);
    else
        cmul_serial(a, b, n);
}

// --- scale ----------------------------------------------------------

void scale_serial(cplx* a, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= s;
}

void scale_omp(cplx* a, double s, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) a[i] *= s;
}

void scale(cplx* a, double s, std::size_t n) {
    if (parallel_enabled() && n >= 4096)
        scale_omp(a, s, n);
    else
        scale_serial(a, s, n);
}

// --- separable 2D phase ----------------------------------------------

void phase2d_serial(cplx* a, const cplx* px, const cplx* py, int nx, int ny) {
    for (int ix = 0; ix < nx; ++ix) {
        cplx* row = a + static_cast<std::size_t>(ix) * ny;
        const cplx fx = px[ix];
        for (int iy = 0; iy < ny; ++iy) row[iy] *= fx * py[iy];
    }
}

void phase2d_omp(cplx* a, const cplx* px, const cplx* py, int nx, int ny) {
#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < nx; ++ix) {
        cplx* row = a + static_cast<std::size_t>(ix) * ny;
        const cplx fx = px[ix];
        for (int iy = 0; iy < ny; ++iy) row[iy] *= fx * py[iy];
    }
}

void phase2d(cplx* a, const cplx* px, const cplx* py, int nx, int ny) {
    if (parallel_enabled() && static_cast<std::size_t>(nx) * ny >= 4096)
        phase2d_omp(a, px, py, nx, ny);
    else
        phase2d_serial(a, px, py, nx, ny);
}

// --- reductions -------------------------------------------------------

double sum_abs2_serial(const cplx* a, std::size_t n) {
    // same fixed blocking as the parallel path
    double blocks[kBlocks];
    std::size_t nb = std::min(kBlocks, n ? n : 1);
    for (std::size_t b = 0; b < nb; ++b) {
        double s = 0.0;
        const std::size_t lo = block_lo(n, b), hi = block_lo(n, b + 1);
        for (std::size_t i = lo; i < hi; ++i) s += std::norm(a[i]);
        blocks[b] = s;
    }
    double total = 0.0;
    for (std::size_t b = 0; b < nb; ++b) total += blocks[b];
    return total;
}

double sum_abs2_omp(const cplx* a, std::size_t n) {
    double blocks[kBlocks];
    std::size_t nb = std::min(kBlocks, n ? n : 1);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b) {
        double s = 0.0;
        const std::size_t lo = block_lo(n, b), hi = block_lo(n, b + 1);
        for (std::size_t i = lo; i < hi; ++i) s += std::norm(a[i]);
        blocks[b] = s;
    }
    double total = 0.0;
    for (std::size_t b = 0; b < nb; ++b) total += blocks[b];
    return total;
}

double sum_abs2(const cplx* a, std::size_t n) {
    return (parallel_enabled() && n >= 65536) ? sum_abs2_omp(a, n) : sum_abs2_serial(a, n);
}

double max_abs2_serial(const cplx* a, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::norm(a[i]));
    return m;
}

double max_abs2_omp(const cplx* a, std::size_t n) {
    double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        m = std::max(m, std::norm(a[i]));
    return m;
}

double max_abs2(const cplx* a, std::size_t n) {
    return (parallel_enabled() && n >= 65536) ? max_abs2_omp(a, n) : max_abs2_serial(a, n);
}

// --- spectral derivatives ---------------------------------------------

void spectral_deriv_1d(cplx* g, const cplx* spec, const double* k, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) g[i] = cplx(0.0, k[i]) * spec[i];
}

void spectral_deriv_2d_x_serial(cplx* g, const cplx* spec, const double* kx, int nx, int ny) {
    for (int ix = 0; ix < nx; ++ix) {
        const cplx ik(0.0, kx[ix]);
        const std::size_t off = static_cast<std::size_t>(ix) * ny;
        for (int iy = 0; iy < ny; ++iy) g[off + iy] = ik * spec[off + iy];
    }
}

void spectral_deriv_2d_x_omp(cplx* g, const cplx* spec, const double* kx, int nx, int ny) {
#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < nx; ++ix) {
        const cplx ik(0.0, kx[ix]);
        const std::size_t off = static_cast<std::size_t>(ix) * ny;
        for (int iy = 0; iy < ny; ++iy) g[off + iy] = ik * spec[off + iy];
    }
}

void spectral_deriv_2d_x(cplx* g, const cplx* spec, const double* kx, int nx, int ny) {
    if (parallel_enabled() && static_cast<std::size_t>(nx) * ny >= 4096)
        spectral_deriv_2d_x_omp(g, spec, kx, nx, ny);
    else
        spectral_deriv_2d_x_serial(g, spec, kx, nx, ny);
}

void spectral_deriv_2d_y_serial(cplx* g, const cplx* spec, const double* ky, int nx, int ny) {
    for (int ix = 0; ix < nx; ++ix) {
        const std::size_t off = static_cast<std::size_t>(ix) * ny;
        for (int iy = 0; iy < ny; ++iy) g[off + iy] = cplx(0.0, ky[iy]) * spec[off + iy];
    }
}

void spectral_deriv_2d_y_omp(cplx* g, const cplx* spec, const double* ky, int nx, int ny) {
#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < nx; ++ix) {
        const std::size_t off = static_cast<std::size_t>(ix) * ny;
        for (int iy = 0; iy < ny; ++iy) g[off + iy] = cplx(0.0, ky[iy]) * spec[off + iy];
    }
}

void spectral_deriv_2d_y(cplx* g, const cplx* spec, const double* ky, int nx, int ny) {
    if (parallel_enabled() && static_cast<std::size_t>(nx) * ny >= 4096)
        spectral_deriv_2d_y_omp(g, spec, ky, nx, ny);
    else
        spectral_deriv_2d_y_serial(g, spec, ky, nx, ny);
}

// --- axpy --------------------------------------------------------------

void axpy_serial(cplx* a, cplx w, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] += w * b[i];
}

void axpy_omp(cplx* a, cplx w, const cplx* b, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) a[i] += w * b[i];
}

void axpy(cplx* a, cplx w, const cplx* b, std::size_t n) {
    if (parallel_enabled() && n >= 4096)
        axpy_omp(a, w, b, n);
    else
        axpy_serial(a, w, b, n);
}

}  // namespace pwlab::kernels
