#pragma once
// OpenMP-backed parallel loop with a serial fallback. Callers index into
// preallocated output slots, so results are identical regardless of thread
// count or schedule; the serial path is the reference the tests compare
// against.

#include <cstddef>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tfts {

struct ExecPolicy {
  bool parallel = true;
  int max_threads = 0;  // 0 = library default

  static ExecPolicy serial() { return {false, 0}; }
  static ExecPolicy threads(int n) { return {true, n}; }
};

template <typename Body>
void parallel_for_index(std::size_t n, const ExecPolicy& policy, Body&& body) {
  if (n == 0) return;
#ifdef _OPENMP
  if (policy.parallel) {
    std::exception_ptr first_error = nullptr;
    int threads = policy.max_threads > 0 ? policy.max_threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(tfts_parallel_error)
        {
          if (!first_error) first_error = std::current_exception();
        }
      }
    }
    if (first_error) std::rethrow_exception(first_error);
    return;
  }
#else
  (void)policy;
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace tfts
