#pragma once

#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ufg {

enum class Exec { Serial, Parallel };

/// Thread budget for parallel sweeps: UNITARY_FINSLER_THREADS caps the OpenMP
/// default when set.
inline int sweep_threads() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("UNITARY_FINSLER_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
  }
  return n;
#else
  return 1;
#endif
}

/// Runs fn(trial) for trial = 0..n_trials-1 and collects results in trial
/// order. The parallel kernel writes each result into its own slot and all
/// aggregation happens on the ordered vector afterwards, so both execution
/// policies produce identical output; the serial path is the reference the
/// tests compare against. fn must not throw (catch inside and report through
/// the result type).
template <class Result, class Fn>
std::vector<Result> run_trials(int n_trials, Exec exec, Fn&& fn) {
  std::vector<Result> out(static_cast<std::size_t>(n_trials));
#ifdef _OPENMP
  if (exec == Exec::Parallel) {
    const int threads = sweep_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int i = 0; i < n_trials; ++i) out[static_cast<std::size_t>(i)] = fn(i);
    return out;
  }
#else
  (void)exec;
#endif
  for (int i = 0; i < n_trials; ++i) out[static_cast<std::size_t>(i)] = fn(i);
  return out;
}

}  // namespace ufg
