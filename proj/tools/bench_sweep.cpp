// Compares the serial reference sweep against the OpenMP kernel on the
// convexity and lifting workloads and reports speedups per thread count.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ufg/suites.hpp"

namespace {

double now() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return static_cast<double>(clock()) / CLOCKS_PER_SEC;
#endif
}

template <class Fn>
double timed(Fn&& fn) {
  const double t0 = now();
  fn();
  return now() - t0;
}

}  // namespace

int main(int argc, char** argv) {
  int trials = 64;
  if (argc > 1) trials = std::atoi(argv[1]);

  ufg::suites::ConvexityConfig ccfg;
  ccfg.seed = 7;
  ccfg.dims = {4, 5, 6};
  ccfg.trials = trials;
  ccfg.norm = ufg::FinslerNorm::schatten(4);
  ccfg.gridsize = 48;

  ufg::suites::LiftingConfig lcfg;
  lcfg.seed = 7;
  lcfg.dims = {5};
  lcfg.trials = trials / 2;
  lcfg.probe_dirs = 32;

  ccfg.exec = ufg::Exec::Serial;
  lcfg.exec = ufg::Exec::Serial;
  const double conv_serial = timed([&] { ufg::suites::run_convexity(ccfg); });
  const double lift_serial = timed([&] { ufg::suites::run_lifting(lcfg); });
  std::printf("serial            convexity %7.3fs   lifting %7.3fs\n", conv_serial,
              lift_serial);

#ifdef _OPENMP
  ccfg.exec = ufg::Exec::Parallel;
  lcfg.exec = ufg::Exec::Parallel;
  const int hw = ufg::sweep_threads();
  for (int threads = 1; threads <= hw; threads *= 2) {
    omp_set_num_threads(threads);
    const double conv = timed([&] { ufg::suites::run_convexity(ccfg); });
    const double lift = timed([&] { ufg::suites::run_lifting(lcfg); });
    std::printf("omp %2d thread%s   convexity %7.3fs (x%4.2f)   lifting %7.3fs (x%4.2f)\n",
                threads, threads == 1 ? " " : "s", conv, conv_serial / conv, lift,
                lift_serial / lift);
  }
#else
  std::printf("built without OpenMP; serial only\n");
#endif
  return 0;
}
