#include "ptspec/parallel.hpp"

#include <atomic>

namespace ptspec::parallel {

namespace {
std::atomic<int> g_jobs{0};
}

int default_jobs() {
  const int j = g_jobs.load();
  return j > 0 ? j : omp_get_max_threads();
}

void set_default_jobs(int jobs) { g_jobs.store(jobs > 0 ? jobs : 0); }

int resolve_jobs(int jobs) { return jobs > 0 ? jobs : default_jobs(); }

}  // namespace ptspec::parallel
