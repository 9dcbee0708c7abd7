#pragma once

#include <complex>
#include <cstddef>
#include <cstdlib>
#include <new>
#include <vector>

namespace pwlab::fft {

using cplx = std::complex<double>;

// 64-byte aligned allocator: keeps every field buffer in one FFTW
// alignment class so cached plans can execute on any of them.
template <class T>
struct AlignedAlloc {
    using value_type = T;
    AlignedAlloc() = default;
    template <class U>
    AlignedAlloc(const AlignedAlloc<U>&) {}
    T* allocate(std::size_t n) {
        void* p = std::aligned_alloc(64, ((n * sizeof(T) + 63) / 64) * 64);
        if (!p) throw std::bad_alloc();
        return static_cast<T*>(p);
    }
    void deallocate(T* p, std::size_t) { std::free(p); }
    template <class U>
    bool operator==(const AlignedAlloc<U>&) const {
        return true;
    }
};

template <class T>
using avector = std::vector<T, AlignedAlloc<T>>;

// In-place complex DFTs, unnormalized (round trip scales by n).
void forward_1d(cplx* data, int n);
void inverse_1d(cplx* data, int n);

// 2D transforms on row-major data [ix*ny + iy]. The default entry
// points run a row/column pass split into fixed chunks across OpenMP
// threads (chunking does not depend on the thread count, so results
// are bit-identical for any --threads). The *_serial variants execute
// FFTW's own whole-2D plan and are kept as the reference path.
void forward_2d(cplx* data, int nx, int ny);
void inverse_2d(cplx* data, int nx, int ny);
void forward_2d_serial(cplx* data, int nx, int ny);
void inverse_2d_serial(cplx* data, int nx, int ny);

}  // namespace pwlab::fft
