#pragma once

#include <atomic>
#include <cstddef>
#include <exception>

#include <omp.h>

namespace rsn {

enum class Execution { Serial, Parallel };

/// Sets the OpenMP worker count; n <= 0 leaves the runtime default.
inline void set_worker_count(int n) {
  if (n > 0) omp_set_num_threads(n);
}

inline int worker_count() { return omp_get_max_threads(); }

/// Calls f(i) for i in [0, n). Each call must touch only its own outputs, so
/// the result is independent of scheduling. If calls throw, the exception of
/// the lowest failing index among those that ran is rethrown after the loop.
template <class F>
void for_each_replicate(std::size_t n, Execution exec, F&& f) {
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr error;
  std::size_t error_index = n;
  std::atomic<bool> stop{false};
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < count; ++i) {
    if (stop.load(std::memory_order_relaxed)) continue;
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(rsn_replicate_error)
      {
        if (static_cast<std::size_t>(i) < error_index) {
          error = std::current_exception();
          error_index = static_cast<std::size_t>(i);
        }
      }
      stop.store(true, std::memory_order_relaxed);
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace rsn
