#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "oracles.hpp"
#include "ufg/linalg.hpp"
#include "ufg/rng.hpp"

using namespace ufg;

namespace {
constexpr double kPi = std::numbers::pi;

Matrix planar(double theta) {
  Matrix j(2, 2);
  j << 0.0, -theta, theta, 0.0;
  return j;
}
}  // namespace

TEST_CASE("mat_exp: identity and planar rotation") {
  CHECK((mat_exp(Matrix::Zero(3, 3)) - Matrix::Identity(3, 3)).norm() == doctest::Approx(0.0));
  const Matrix r = mat_exp(planar(kPi / 2.0));
  Matrix expect(2, 2);
  expect << 0.0, -1.0, 1.0, 0.0;
  CHECK((r - expect).norm() < 1e-14);
}

TEST_CASE("mat_exp: anti-Hermitian input gives a unitary, matches the power series") {
  CounterRng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const AntiHermMatrix x = random_antiherm_opnorm(rng, 6, rng.uniform(0.1, 2.5));
    const Matrix u = mat_exp(x.mat());
    CHECK(operator_norm(u.adjoint() * u - Matrix::Identity(6, 6)) < 1e-12);
    CHECK((u - oracle::series_exp(x.mat())).norm() < 1e-12);
  }
}

TEST_CASE("mat_exp: non-normal fallback still matches the series") {
  CounterRng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix g = 0.7 * random_complex_gaussian(rng, 5);
    CHECK((mat_exp(g) - oracle::series_exp(g)).norm() < 1e-11 * std::max(1.0, g.norm()));
  }
}

TEST_CASE("mat_exp: non-finite entries rejected") {
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(mat_exp(bad), NonFiniteInput);
}

TEST_CASE("principal_log_unitary: diagonal cases") {
  CHECK(principal_log_unitary(UnitaryMatrix::identity(4)).mat().norm() < 1e-14);
  Matrix u = Matrix::Identity(2, 2);
  u(0, 0) = std::exp(Complex{0.0, 1.2});
  Matrix expect = Matrix::Zero(2, 2);
  expect(0, 0) = Complex{0.0, 1.2};
  CHECK((principal_log_unitary(UnitaryMatrix(u)).mat() - expect).norm() < 1e-14);
}

TEST_CASE("principal_log_unitary: eigenvalue at -1 is the branch error") {
  Matrix u = Matrix::Identity(3, 3);
  u(0, 0) = -1.0;
  CHECK_THROWS_AS(principal_log_unitary(UnitaryMatrix(u)), EigenvalueAtMinusOne);
}

TEST_CASE("exp/log round trip across dims 2..10") {
  CounterRng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index dim = 2 + trial % 9;
    const AntiHermMatrix x = random_antiherm_opnorm(rng, dim, rng.uniform(0.05, kPi - 0.01));
    const AntiHermMatrix back = principal_log_unitary(mat_exp(x));
    CHECK(operator_norm(back.mat() - x.mat()) < 1e-8);
  }
}

TEST_CASE("dexp_transport: degenerate cases pass wdot through") {
  CounterRng rng(14);
  const AntiHermMatrix wdot = random_antiherm(rng, 4);
  CHECK((dexp_transport(AntiHermMatrix::zero(4), wdot).mat() - wdot.mat()).norm() < 1e-13);
  // commuting pair: conjugation acts trivially
  Eigen::VectorXd th(4);
  th << 0.3, 0.3, -0.2, 1.0;
  const Matrix w = Complex{0.0, 1.0} * th.cast<Complex>().asDiagonal().toDenseMatrix();
  Matrix d = Matrix::Zero(4, 4);
  d(0, 1) = Complex{0.2, 0.4};  // couples only the repeated angles
  d(1, 0) = -std::conj(d(0, 1));
  d(2, 2) = Complex{0.0, -0.7};
  const AntiHermMatrix wd(d);
  CHECK((dexp_transport(AntiHermMatrix(w), wd).mat() - wd.mat()).norm() < 1e-13);
}

TEST_CASE("dexp_transport matches composite-Simpson quadrature") {
  CounterRng rng(15);
  for (int trial = 0; trial < 8; ++trial) {
    const AntiHermMatrix w = random_antiherm_opnorm(rng, 5, rng.uniform(0.2, 2.0));
    const AntiHermMatrix wdot = random_antiherm_opnorm(rng, 5, rng.uniform(0.2, 1.5));
    const Matrix got = dexp_transport(w, wdot).mat();
    const Matrix ref = oracle::simpson_transport(w.mat(), wdot.mat(), 10000);
    CHECK((got - ref).norm() < 1e-9);
  }
}

TEST_CASE("dexp_inverse: identity cases and round trip") {
  CounterRng rng(16);
  const AntiHermMatrix z = random_antiherm(rng, 5);
  CHECK((dexp_inverse(AntiHermMatrix::zero(5), z).mat() - z.mat()).norm() < 1e-13);
  for (int trial = 0; trial < 20; ++trial) {
    const AntiHermMatrix w = random_antiherm_opnorm(rng, 5, rng.uniform(0.1, 2.8));
    const AntiHermMatrix zz = random_antiherm_opnorm(rng, 5, rng.uniform(0.1, 2.0));
    const AntiHermMatrix wdot = dexp_inverse(w, zz);
    CHECK((dexp_transport(w, wdot).mat() - zz.mat()).norm() < 1e-9);
  }
}

TEST_CASE("dexp_inverse: vanishing multiplier raises SingularTransport") {
  Matrix w = Matrix::Zero(2, 2);
  w(0, 0) = Complex{0.0, kPi};
  w(1, 1) = Complex{0.0, -kPi};  // spread exactly 2 pi
  Matrix z = Matrix::Zero(2, 2);
  z(0, 1) = Complex{0.3, 0.1};
  z(1, 0) = -std::conj(z(0, 1));
  CHECK_THROWS_AS(dexp_inverse(AntiHermMatrix(w), AntiHermMatrix(z)), SingularTransport);
}

TEST_CASE("polar_unitary_part: fixed points and reconstruction") {
  CounterRng rng(17);
  const UnitaryMatrix u = random_unitary(rng, 4);
  CHECK((polar_unitary_part(u.mat()).mat() - u.mat()).norm() < 1e-12);
  CHECK((polar_unitary_part((2.5 * Matrix::Identity(3, 3)).eval()).mat() -
         Matrix::Identity(3, 3))
            .norm() < 1e-13);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix g =
        random_complex_gaussian(rng, 6) + 4.0 * Matrix::Identity(6, 6);  // far from singular
    const UnitaryMatrix om = polar_unitary_part(g);
    CHECK(operator_norm(om.mat().adjoint() * om.mat() - Matrix::Identity(6, 6)) < 1e-12);
    Eigen::SelfAdjointEigenSolver<Matrix> es((g.adjoint() * g).eval());
    const Matrix absg = es.eigenvectors() *
                        es.eigenvalues().cwiseSqrt().cast<Complex>().asDiagonal() *
                        es.eigenvectors().adjoint();
    CHECK(operator_norm(om.mat() * absg - g) < 1e-10);
  }
}

TEST_CASE("polar_unitary_part: invariance under commuting positive factors") {
  CounterRng rng(18);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix g = random_complex_gaussian(rng, 5) + 4.0 * Matrix::Identity(5, 5);
    Eigen::SelfAdjointEigenSolver<Matrix> es((g.adjoint() * g).eval());
    const Matrix sqrt_gg = es.eigenvectors() *
                           es.eigenvalues().cwiseSqrt().cast<Complex>().asDiagonal() *
                           es.eigenvectors().adjoint();
    CHECK((polar_unitary_part(g * sqrt_gg).mat() - polar_unitary_part(g).mat()).norm() < 1e-10);
  }
}

TEST_CASE("polar_unitary_part: singular input rejected") {
  Matrix g = Matrix::Zero(3, 3);
  g(0, 0) = 1.0;
  CHECK_THROWS_AS(polar_unitary_part(g), SingularMatrix);
}

TEST_CASE("functional_calculus: identity, cosine, arccos-cos round trip") {
  CounterRng rng(19);
  const HermMatrix a = random_herm(rng, 4);
  CHECK((functional_calculus(a, [](double t) { return t; }).mat() - a.mat()).norm() < 1e-12);

  Matrix d = Matrix::Zero(2, 2);
  d(1, 1) = 1.0;
  const HermMatrix diag01(d);
  const Matrix got = functional_calculus(diag01, [](double t) { return std::cos(t); }).mat();
  CHECK(std::abs(got(0, 0).real() - 1.0) < 1e-14);
  CHECK(std::abs(got(1, 1).real() - std::cos(1.0)) < 1e-14);

  // spectrum remapped into [0.05, pi/2 - 0.05], then arccos(cos(.)) recovers
  Eigen::SelfAdjointEigenSolver<Matrix> es(random_herm(rng, 5).mat());
  Eigen::VectorXd lam = es.eigenvalues();
  const double lo = lam.minCoeff(), hi = lam.maxCoeff();
  Eigen::VectorXcd remapped(5);
  for (int i = 0; i < 5; ++i)
    remapped(i) = 0.05 + (lam(i) - lo) / std::max(hi - lo, 1.0) * (kPi / 2.0 - 0.1);
  const HermMatrix b(es.eigenvectors() * remapped.asDiagonal() * es.eigenvectors().adjoint());
  const HermMatrix back = functional_calculus(
      functional_calculus(b, [](double t) { return std::cos(t); }),
      [](double t) { return std::acos(t); });
  CHECK(operator_norm(back.mat() - b.mat()) < 1e-10);
}

TEST_CASE("functional_calculus: undefined value raises DomainError") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = -1.0;
  d(1, 1) = 1.0;
  CHECK_THROWS_AS(functional_calculus(HermMatrix(d), [](double t) { return std::sqrt(t); }),
                  DomainError);
}

TEST_CASE("typed wrappers: tolerance policy") {
  CounterRng rng(20);
  Matrix almost = random_antiherm(rng, 3).mat();
  almost(0, 1) += Complex{1e-14, 0.0};
  const AntiHermMatrix cleaned(almost);
  CHECK((cleaned.mat() + cleaned.mat().adjoint()).norm() == 0.0);
  CHECK_THROWS_AS(AntiHermMatrix(random_herm(rng, 3).mat() + Matrix::Identity(3, 3)),
                  SymmetryViolation);
  CHECK_THROWS_AS(HermMatrix(random_antiherm(rng, 3).mat() +
                             Complex{0.0, 1.0} * Matrix::Identity(3, 3)),
                  SymmetryViolation);
  CHECK_THROWS_AS(UnitaryMatrix((2.0 * Matrix::Identity(3, 3)).eval()), Error);
}
