#pragma once

#include <complex>
#include <cstddef>

namespace pwlab::kernels {

using cplx = std::complex<double>;

// Hot inner loops of the field stepper. Every kernel has a serial
// reference implementation and an OpenMP one; the bare name dispatches
// on the configured thread count. The _omp variants use fixed-size
// blocking for reductions so results are bit-identical to the serial
// path regardless of the thread count.

// a[i] *= b[i]
void cmul_serial(cplx* a, const cplx* b, std::size_t n);
void cmul_omp(cplx* a, const cplx* b, std::size_t n);
void cmul(cplx* a, const cplx* b, std::size_t n);

// a[i] *= s
void scale_serial(cplx* a, double s, std::size_t n);
void scale_omp(cplx* a, double s, std::size_t n);
void scale(cplx* a, double s, std::size_t n);

// a[ix*ny+iy] *= px[ix] * py[iy]  (separable 2D phase table)
void phase2d_serial(cplx* a, const cplx* px, const cplx* py, int nx, int ny);
void phase2d_omp(cplx* a, const cplx* px, const cplx* py, int nx, int ny);
void phase2d(cplx* a, const cplx* px, const cplx* py, int nx, int ny);

// sum_i |a[i]|^2, fixed-block deterministic reduction
double sum_abs2_serial(const cplx* a, std::size_t n);
double sum_abs2_omp(const cplx* a, std::size_t n);
double sum_abs2(const cplx* a, std::size_t n);

double max_abs2_serial(const cplx* a, std::size_t n);
double max_abs2_omp(const cplx* a, std::size_t n);
double max_abs2(const cplx* a, std::size_t n);

// g[i] = i * k[i] * spec[i]       (1D spectral derivative, k indexed by i)
void spectral_deriv_1d(cplx* g, const cplx* spec, const double* k, std::size_t n);
// g[ix*ny+iy] = i * kx[ix] * spec[ix*ny+iy]
void spectral_deriv_2d_x_serial(cplx* g, const cplx* spec, const double* kx, int nx, int ny);
void spectral_deriv_2d_x_omp(cplx* g, const cplx* spec, const double* kx, int nx, int ny);
void spectral_deriv_2d_x(cplx* g, const cplx* spec, const double* kx, int nx, int ny);
// g[ix*ny+iy] = i * ky[iy] * spec[ix*ny+iy]
void spectral_deriv_2d_y_serial(cplx* g, const cplx* spec, const double* ky, int nx, int ny);
void spectral_deriv_2d_y_omp(cplx* g, const cplx* spec, const double* ky, int nx, int ny);
void spectral_deriv_2d_y(cplx* g, const cplx* spec, const double* ky, int nx, int ny);

// a[i] += w * b[i]
void axpy_serial(cplx* a, cplx w, const cplx* b, std::size_t n);
void axpy_omp(cplx* a, cplx w, const cplx* b, std::size_t n);
void axpy(cplx* a, cplx w, const cplx* b, std::size_t n);

}  // namespace pwlab::kernels
