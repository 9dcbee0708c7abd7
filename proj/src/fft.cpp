#include "pwlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "pwlab/parallel.hpp"

namespace pwlab::fft {

namespace {

// Plan creation is not thread-safe in FFTW; executions of a cached
// plan on distinct arrays are.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

// --- 1D plans ------------------------------------------------------

fftw_plan get_plan_1d(int n, int sign) {
    static std::map<std::pair<int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex());
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    avector<cplx> scratch(n);
    fftw_plan p = fftw_plan_dft_1d(n, as_fftw(scratch.data()), as_fftw(scratch.data()), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache[key] = p;
    return p;
}

// --- whole-2D serial plans ----------------------------------------

fftw_plan get_plan_2d(int nx, int ny, int sign) {
    static std::map<std::tuple<int, int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex());
    auto key = std::make_tuple(nx, ny, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    avector<cplx> scratch(static_cast<std::size_t>(nx) * ny);
    fftw_plan p = fftw_plan_dft_2d(nx, ny, as_fftw(scratch.data()), as_fftw(scratch.data()), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache[key] = p;
    return p;
}

// --- chunked row/column plans for the parallel path ----------------

// Fixed chunk count independent of the thread count so the arithmetic
// (and therefore the output bits) never depends on --threads.
constexpr int kChunks = 16;

struct ManyKey {
    int n, howmany, stride, dist, sign;
    bool operator<(const ManyKey& o) const {
        return std::tie(n, howmany, stride, dist, sign) <
               std::tie(o.n, o.howmany, o.stride, o.dist, o.sign);
    }
};

fftw_plan get_plan_many(int n, int howmany, int stride, int dist, int sign) {
    static std::map<ManyKey, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex());
    ManyKey key{n, howmany, stride, dist, sign};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    avector<cplx> scratch(static_cast<std::size_t>(n) * stride + static_cast<std::size_t>(howmany) * dist + 16);
    int nn[1] = {n};
    fftw_plan p = fftw_plan_many_dft(1, nn, howmany, as_fftw(scratch.data()), nullptr, stride,
                                     dist, as_fftw(scratch.data()), nullptr, stride, dist, sign,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache[key] = p;
    return p;
}

void transform_2d(cplx* data, int nx, int ny, int sign) {
    // row pass: nx contiguous transforms of length ny
    const int row_chunk = nx / kChunks;
    if (row_chunk >= 1 && nx % kChunks == 0) {
        fftw_plan p = get_plan_many(ny, row_chunk, 1, ny, sign);
#pragma omp parallel for schedule(static) if (pwlab::parallel_enabled())
        for (int c = 0; c < kChunks; ++c) {
            cplx* base = data + static_cast<std::size_t>(c) * row_chunk * ny;
            fftw_execute_dft(p, as_fftw(base), as_fftw(base));
        }
    } else {
        fftw_plan p = get_plan_many(ny, nx, 1, ny, sign);
        fftw_execute_dft(p, as_fftw(data), as_fftw(data));
    }

    // column pass: ny strided transforms of length nx
    const int col_chunk = ny / kChunks;
    if (col_chunk >= 1 && ny % kChunks == 0) {
        fftw_plan p = get_plan_many(nx, col_chunk, ny, 1, sign);
#pragma omp parallel for schedule(static) if (pwlab::parallel_enabled())
        for (int c = 0; c < kChunks; ++c) {
            cplx* base = data + static_cast<std::size_t>(c) * col_chunk;
            fftw_execute_dft(p, as_fftw(base), as_fftw(base));
        }
    } else {
        fftw_plan p = get_plan_many(nx, ny, ny, 1, sign);
        fftw_execute_dft(p, as_fftw(data), as_fftw(data));
    }
}

}  // namespace

void forward_1d(cplx* data, int n) {
    fftw_execute_dft(get_plan_1d(n, FFTW_FORWARD), as_fftw(data), as_fftw(data));
}

void inverse_1d(cplx* data, int n) {
    fftw_execute_dft(get_plan_1d(n, FFTW_BACKWARD), as_fftw(data), as_fftw(data));
}

void forward_2d(cplx* data, int nx, int ny) { transform_2d(data, nx, ny, FFTW_FORWARD); }
void inverse_2d(cplx* data, int nx, int ny) { transform_2d(data, nx, ny, FFTW_BACKWARD); }

void forward_2d_serial(cplx* data, int nx, int ny) {
    fftw_execute_dft(get_plan_2d(nx, ny, FFTW_FORWARD), as_fftw(data), as_fftw(data));
}

void inverse_2d_serial(cplx* data, int nx, int ny) {
    fftw_execute_dft(get_plan_2d(nx, ny, FFTW_BACKWARD), as_fftw(data), as_fftw(data));
}

}  // namespace pwlab::fft
