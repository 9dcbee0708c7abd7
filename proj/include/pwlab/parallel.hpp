#pragma once

#include <cstddef>

namespace pwlab {

// Process-wide worker count for the OpenMP kernels. 1 disables the
// parallel paths entirely (serial reference kernels run instead).
void set_threads(int n);
int threads();

// Resolves the startup default: PWLAB_THREADS env var if set, else the
// hardware count.
int default_threads();

inline bool parallel_enabled() { return threads() > 1; }

}  // namespace pwlab
