#pragma once

#include <exception>
#include <mutex>

namespace ptqw::detail {

/// Runs body(i) for i in [0, n) across OpenMP threads. The first exception
/// thrown by any iteration is rethrown on the calling thread once the loop
/// has drained. Iterations must write to disjoint outputs.
template <typename Body>
void parallel_for(int n, Body&& body) {
  std::exception_ptr failure;
  std::mutex guard;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    {
      std::lock_guard lock(guard);
      if (failure) continue;
    }
    try {
      body(i);
    } catch (...) {
      std::lock_guard lock(guard);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace ptqw::detail
