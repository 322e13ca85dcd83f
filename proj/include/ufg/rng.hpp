#pragma once

#include <cstdint>

#include "ufg/types.hpp"

namespace ufg {

/// Counter-based generator: output k is a fixed mix of (key, k), so a trial's
/// stream depends only on (master seed XOR trial index) and never on how other
/// trials interleave. That keeps parallel sweeps bit-identical to serial ones.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  static CounterRng for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
    return CounterRng(master_seed ^ trial_index);
  }

  std::uint64_t next_u64();
  double uniform01();                     // in [0, 1)
  double uniform(double a, double b);
  double normal();                        // Box-Muller, no cached spare
  Complex complex_normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

Matrix random_complex_gaussian(CounterRng& rng, Eigen::Index n);
HermMatrix random_herm(CounterRng& rng, Eigen::Index n);
AntiHermMatrix random_antiherm(CounterRng& rng, Eigen::Index n);
/// Anti-Hermitian with operator norm exactly `target`.
AntiHermMatrix random_antiherm_opnorm(CounterRng& rng, Eigen::Index n, double target);
UnitaryMatrix random_unitary(CounterRng& rng, Eigen::Index n);

}  // namespace ufg
