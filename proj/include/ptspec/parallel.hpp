#pragma once

#include <cstddef>
#include <exception>

#include <omp.h>

namespace ptspec::parallel {

/// Worker count used when a kernel is called with jobs = 0.
int default_jobs();
void set_default_jobs(int jobs);
int resolve_jobs(int jobs);

/// Runs fn(i) for i in [0, n) on an OpenMP team. The first exception thrown by
/// any iteration is rethrown after the loop.
template <typename Fn>
void for_each_index(std::size_t n, Fn&& fn, int jobs = 0) {
  std::exception_ptr failure;
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4) num_threads(resolve_jobs(jobs))
  for (long long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(ptspec_parallel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace ptspec::parallel
