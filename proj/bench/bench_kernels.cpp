// Timing comparison of the serial reference kernels against the OpenMP
// paths, plus the two 2D FFT strategies. Build target: pwlab_bench.

#include <chrono>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>

#include "pwlab/ensemble.hpp"
#include "pwlab/evolve.hpp"
#include "pwlab/fft.hpp"
#include "pwlab/integrate.hpp"
#include "pwlab/kernels.hpp"
#include "pwlab/parallel.hpp"
#include "pwlab/rng.hpp"
#include "pwlab/velocity.hpp"

using namespace pwlab;
using cplx = std::complex<double>;

namespace {

double time_of(const std::function<void()>& fn, int reps) {
    fn();  // warm up (plans, caches)
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-34s %10.3f ms %10.3f ms %8.2fx\n", name, serial * 1e3, parallel * 1e3,
                serial / parallel);
}

}  // namespace

int main() {
    const int nx = 1024, ny = 512;
    const std::size_t n = static_cast<std::size_t>(nx) * ny;
    std::printf("threads: %d, array: %d x %d\n", threads(), nx, ny);
    std::printf("%-34s %13s %13s %9s\n", "kernel", "serial", "omp", "speedup");

    std::mt19937_64 g(1);
    fft::avector<cplx> a(n), b(n), out(n);
    for (auto& v : a) v = {u01(g) - 0.5, u01(g) - 0.5};
    for (auto& v : b) v = {u01(g) - 0.5, u01(g) - 0.5};
    fft::avector<cplx> px(nx), py(ny);
    for (auto& v : px) v = std::exp(cplx(0, u01(g)));
    for (auto& v : py) v = std::exp(cplx(0, u01(g)));
    std::vector<double> kx(nx);
    for (int i = 0; i < nx; ++i) kx[i] = 0.01 * i;

    row("cmul",
        time_of([&] { kernels::cmul_serial(a.data(), b.data(), n); }, 20),
        time_of([&] { kernels::cmul_omp(a.data(), b.data(), n); }, 20));
    row("phase2d (separable tables)",
        time_of([&] { kernels::phase2d_serial(a.data(), px.data(), py.data(), nx, ny); }, 20),
        time_of([&] { kernels::phase2d_omp(a.data(), px.data(), py.data(), nx, ny); }, 20));
    row("axpy",
        time_of([&] { kernels::axpy_serial(a.data(), {0.3, 0.1}, b.data(), n); }, 20),
        time_of([&] { kernels::axpy_omp(a.data(), {0.3, 0.1}, b.data(), n); }, 20));
    row("sum_abs2 (blocked reduction)",
        time_of([&] { (void)kernels::sum_abs2_serial(a.data(), n); }, 20),
        time_of([&] { (void)kernels::sum_abs2_omp(a.data(), n); }, 20));
    row("spectral_deriv_2d_x",
        time_of([&] { kernels::spectral_deriv_2d_x_serial(out.data(), a.data(), kx.data(), nx, ny); },
                20),
        time_of([&] { kernels::spectral_deriv_2d_x_omp(out.data(), a.data(), kx.data(), nx, ny); },
                20));
    row("fft2d (whole-plan vs chunked)",
        time_of([&] { fft::forward_2d_serial(a.data(), nx, ny); }, 10),
        time_of([&] { fft::forward_2d(a.data(), nx, ny); }, 10));

    // one full trajectory step at production scale: field step + snapshot
    // build + RK4 over the ensemble
    {
        wave::Grid grid;
        grid.dims = 2;
        grid.axis[0] = {nx, 96.0, 1.0};
        grid.axis[1] = {ny, 24.0, 5.0};
        grid.dt = 0.005;
        wave::WaveField f0 = wave::init_gaussian(grid, {-5.0, 4.0, 1.0}, {0.0, 0.0, 0.8});
        wave::WaveField f1 = wave::init_gaussian(grid, {5.0, -4.0, 1.0}, {0.0, 0.0, 0.8});
        const wave::SuperposeTerm terms[] = {{1.0, &f0}, {1.0, &f1}};
        wave::WaveField s = wave::superpose(terms);
        traj::Ensemble e = traj::sample_initial(s, 5000, 1);

        auto step_once = [&](int nthreads) {
            set_threads(nthreads);
            wave::SplitStepEvolver ev(s);
            traj::IntegrateOptions opts;
            opts.t_final = s.time + 10 * 2 * grid.dt;
            opts.record_stride = 100;
            traj::Ensemble e2 = e;
            const auto t0 = std::chrono::steady_clock::now();
            traj::integrate(e2, ev, opts);
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() /
                   10.0;
        };
        step_once(default_threads());  // warm up plans
        const double serial = step_once(1);
        const double par = step_once(default_threads());
        row("trajectory step (field+RK4 x5000)", serial, par);
    }
    return 0;
}
