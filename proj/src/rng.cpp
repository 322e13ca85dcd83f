#include "ufg/rng.hpp"

#include <cmath>
#include <numbers>

#include "ufg/linalg.hpp"

namespace ufg {

namespace {

// splitmix64 finalizer; statistically solid on counter inputs.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t CounterRng::next_u64() {
  return mix64(mix64(key_) + 0x9E3779B97F4A7C15ULL * ++counter_);
}

double CounterRng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform(double a, double b) { return a + (b - a) * uniform01(); }

double CounterRng::normal() {
  double u1 = uniform01();
  const double u2 = uniform01();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex CounterRng::complex_normal() {
  // one Box-Muller pair gives both components
  double u1 = uniform01();
  const double u2 = uniform01();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(angle), r * std::sin(angle)};
}

Matrix random_complex_gaussian(CounterRng& rng, Eigen::Index n) {
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rng.complex_normal();
  return m;
}

HermMatrix random_herm(CounterRng& rng, Eigen::Index n) {
  const Matrix g = random_complex_gaussian(rng, n);
  return HermMatrix(0.5 * (g + g.adjoint()));
}

AntiHermMatrix random_antiherm(CounterRng& rng, Eigen::Index n) {
  const Matrix g = random_complex_gaussian(rng, n);
  return AntiHermMatrix(0.5 * (g - g.adjoint()));
}

AntiHermMatrix random_antiherm_opnorm(CounterRng& rng, Eigen::Index n, double target) {
  AntiHermMatrix x = random_antiherm(rng, n);
  const double nrm = operator_norm(x.mat());
  if (nrm == 0.0) {
    Matrix e = Matrix::Zero(n, n);
    e(0, 0) = Complex{0.0, target};
    return AntiHermMatrix(e);
  }
  return AntiHermMatrix(x.mat() * (target / nrm));
}

UnitaryMatrix random_unitary(CounterRng& rng, Eigen::Index n) {
  const double angle = rng.uniform(0.2, 2.8);
  const AntiHermMatrix x = random_antiherm_opnorm(rng, n, angle);
  return UnitaryMatrix(mat_exp(x.mat()));
}

}  // namespace ufg
