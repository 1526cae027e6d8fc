#pragma once

#include <cstdint>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spvote {

// 1 forces the serial reference path, 0 uses the hardware default.
void set_max_threads(int n);
int max_threads();
int resolved_threads();

// Deterministic parallel map over [0, n): body(i) must touch only state owned
// by index i (output slot i, RNG stream derived from i). Under that contract
// the parallel result is bit-identical to the serial one.
template <typename F>
void parallel_for(int64_t n, F&& body) {
#ifdef _OPENMP
  const int threads = resolved_threads();
  if (threads != 1 && n > 1) {
    std::exception_ptr err;
#pragma omp parallel for schedule(static) num_threads(threads)
    for (int64_t i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    return;
  }
#endif
  for (int64_t i = 0; i < n; ++i) body(i);
}

}  // namespace spvote
