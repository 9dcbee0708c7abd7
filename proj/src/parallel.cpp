#include "pwlab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pwlab {

namespace {
std::atomic<int> g_threads{0};  // 0 = not yet initialized
}

int default_threads() {
    if (const char* env = std::getenv("PWLAB_THREADS")) {
        try {
            int n = std::stoi(env);
            if (n >= 1) return n;
        } catch (...) {
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void set_threads(int n) {
    if (n < 1) n = 1;
    g_threads.store(n);
#ifdef _OPENMP
    omp_set_num_threads(n);
#endif
}

int threads() {
    int n = g_threads.load();
    if (n == 0) {
        set_threads(default_threads());
        n = g_threads.load();
    }
    return n;
}

}  // namespace pwlab
