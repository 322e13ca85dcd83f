#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ufg/geodesics.hpp"
#include "ufg/suites.hpp"

using namespace ufg;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("geodesic_point: endpoints and group law") {
  CounterRng rng(31);
  const UnitaryMatrix u = random_unitary(rng, 4);
  const AntiHermMatrix z = random_antiherm_opnorm(rng, 4, 0.8);
  CHECK((geodesic_point(u, z, 0.0).mat() - u.mat()).norm() < 1e-14);

  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = Complex{0.0, kPi};
  const UnitaryMatrix flip = geodesic_point(UnitaryMatrix::identity(2), AntiHermMatrix(diag), 1.0);
  CHECK(std::abs(flip.mat()(0, 0).real() + 1.0) < 1e-14);
  CHECK(std::abs(flip.mat()(1, 1).real() - 1.0) < 1e-14);

  const double s = 0.37, t = 0.41;
  const Matrix lhs = geodesic_point(u, z, s + t).mat();
  const Matrix rhs = geodesic_point(u, z, s).mat() * mat_exp((t * z.mat()).eval());
  CHECK((lhs - rhs).norm() < 1e-12);
}

TEST_CASE("rectifiable_distance: zero, diagonal value, left invariance, triangle") {
  CounterRng rng(32);
  const UnitaryMatrix u = random_unitary(rng, 4);
  CHECK(rectifiable_distance(u, u, FinslerNorm::op()) < 1e-12);

  Matrix d = Matrix::Identity(2, 2);
  d(0, 0) = std::exp(Complex{0.0, 0.9});
  CHECK(rectifiable_distance(UnitaryMatrix::identity(2), UnitaryMatrix(d), FinslerNorm::op()) ==
        doctest::Approx(0.9).epsilon(1e-12));

  const FinslerNorm norms[] = {FinslerNorm::op(), FinslerNorm::schatten(4),
                               FinslerNorm::normalized_schatten(4)};
  for (int trial = 0; trial < 10; ++trial) {
    const UnitaryMatrix w = random_unitary(rng, 4);
    const UnitaryMatrix u1(mat_exp(random_antiherm_opnorm(rng, 4, 0.7).mat()));
    const UnitaryMatrix u2(mat_exp(random_antiherm_opnorm(rng, 4, 0.9).mat()));
    for (const FinslerNorm& nf : norms) {
      const double base = rectifiable_distance(u1, u2, nf);
      CHECK(std::abs(rectifiable_distance(UnitaryMatrix(w.mat() * u1.mat()),
                                          UnitaryMatrix(w.mat() * u2.mat()), nf) -
                     base) < 1e-10);
    }
  }
  // triangle inequality on branch-safe triples
  for (int trial = 0; trial < 30; ++trial) {
    const UnitaryMatrix a(mat_exp(random_antiherm_opnorm(rng, 5, 0.6).mat()));
    const UnitaryMatrix b(mat_exp(random_antiherm_opnorm(rng, 5, 0.6).mat()));
    const UnitaryMatrix c(mat_exp(random_antiherm_opnorm(rng, 5, 0.6).mat()));
    for (const FinslerNorm& nf : norms)
      CHECK(rectifiable_distance(a, c, nf) <=
            rectifiable_distance(a, b, nf) + rectifiable_distance(b, c, nf) + 1e-9);
  }
}

TEST_CASE("log_curve: s = 0, commuting case, finite-difference velocity") {
  CounterRng rng(33);
  const AntiHermMatrix v = random_antiherm_opnorm(rng, 4, 0.5);
  const AntiHermMatrix z = random_antiherm_opnorm(rng, 4, 0.4);
  const GeodesicProbe probe(v, z);

  const LogCurvePoint p0 = log_curve(probe, 0.0);
  CHECK((p0.w.mat() - v.mat()).norm() < 1e-10);
  CHECK((p0.wdot.mat() - dexp_inverse(v, z).mat()).norm() < 1e-9);

  // commuting v, z: w_s = v + s z exactly
  Matrix vd = Matrix::Zero(3, 3), zd = Matrix::Zero(3, 3);
  vd(0, 0) = Complex{0.0, 0.4};
  vd(1, 1) = Complex{0.0, -0.2};
  zd(0, 0) = Complex{0.0, -0.3};
  zd(1, 1) = Complex{0.0, 0.25};
  const GeodesicProbe cprobe{AntiHermMatrix(vd), AntiHermMatrix(zd)};
  const LogCurvePoint pc = log_curve(cprobe, 0.7);
  CHECK((pc.w.mat() - (vd + 0.7 * zd)).norm() < 1e-12);
  CHECK((pc.wdot.mat() - zd).norm() < 1e-10);

  // velocity against central differences of the log itself
  const double h = 1e-5;
  const LogCurvePoint mid = log_curve(probe, 0.5);
  const Matrix fd =
      (log_curve(probe, 0.5 + h).w.mat() - log_curve(probe, 0.5 - h).w.mat()) / (2.0 * h);
  CHECK((mid.wdot.mat() - fd).norm() < 1e-7);
}

TEST_CASE("f_p_derivatives: constant probe and finite differences") {
  CounterRng rng(34);
  const AntiHermMatrix v = random_antiherm_opnorm(rng, 4, 0.5);
  const GeodesicProbe constant(v, AntiHermMatrix::zero(4));
  const FpDerivatives dc = f_p_derivatives(constant, 0.3, 4);
  CHECK(std::abs(dc.fprime) < 1e-12);
  CHECK(std::abs(dc.fsecond) < 1e-12);

  for (bool normalized : {false, true}) {
    for (int trial = 0; trial < 6; ++trial) {
      const GeodesicProbe probe = suites::random_probe(
          rng, 4, normalized ? FinslerNorm::normalized_schatten(4) : FinslerNorm::schatten(4),
          convexity_radius(4).conservative);
      const FpDerivatives d = f_p_derivatives(probe, 0.5, 4, normalized);
      auto f = [&](double s) { return f_p_derivatives(probe, s, 4, normalized).f; };
      CHECK(std::abs(d.fprime - oracle::central_diff1(f, 0.5, 1e-5)) <
            1e-6 * std::max(1.0, std::abs(d.fprime)));
      CHECK(std::abs(d.fsecond - oracle::central_diff2(f, 0.5, 1e-4)) <
            1e-4 * std::max(1.0, std::abs(d.fsecond)));
    }
  }
}

TEST_CASE("GeodesicProbe: branch validity flag") {
  CounterRng rng(30);
  const GeodesicProbe inside = suites::random_probe(rng, 4, FinslerNorm::op(), 1.2);
  CHECK(inside.within_branch());
  Matrix big = Matrix::Zero(2, 2);
  big(0, 0) = Complex{0.0, kPi - 0.002};
  const GeodesicProbe outside{AntiHermMatrix(big), AntiHermMatrix::zero(2)};
  CHECK_FALSE(outside.within_branch());
}

TEST_CASE("sinc and its inverse") {
  CHECK(sinc_inverse(1.0) == 0.0);
  CHECK(sinc_inverse(2.0 / kPi) == doctest::Approx(kPi / 2.0).epsilon(1e-11));
  CounterRng rng(35);
  for (int i = 0; i < 100; ++i) {
    const double y = rng.uniform(1e-6, 1.0);
    CHECK(std::abs(sinc(sinc_inverse(y)) - y) < 1e-10);
  }
  CHECK_THROWS_AS(sinc_inverse(0.0), DomainError);
  CHECK_THROWS_AS(sinc_inverse(1.5), DomainError);
}

TEST_CASE("convexity_radius: frozen value, monotonicity, conservative cap") {
  const ConvexityRadius r4 = convexity_radius(4);
  // independent bisection for sinc(r) = 1/3
  double lo = 0.0, hi = kPi;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (std::sin(mid) / mid > 1.0 / 3.0 ? lo : hi) = mid;
  }
  CHECK(r4.r_p == doctest::Approx(0.5 * lo).epsilon(1e-10));
  CHECK(r4.r_p > 1.1393);
  CHECK(r4.r_p < 1.1396);
  CHECK(r4.conservative == doctest::Approx(kPi / 4.0 - 1e-6));

  double prev = r4.r_p;
  for (int p : {6, 8, 10, 12}) {
    const double rp = convexity_radius(p).r_p;
    CHECK(rp > prev);
    prev = rp;
  }
}

TEST_CASE("verify_theorem23: domain guards and the chain on random probes") {
  CounterRng rng(36);
  const AntiHermMatrix v = random_antiherm_opnorm(rng, 4, 0.4);
  CHECK_THROWS_AS(verify_theorem23(GeodesicProbe(v, AntiHermMatrix::zero(4)), 0.5, 4),
                  OutOfDomain);
  // aligned commuting probe: the base point sits on the prolongation
  CHECK_THROWS_AS(
      verify_theorem23(GeodesicProbe(v, AntiHermMatrix((-0.5 * v.mat()).eval())), 0.5, 4),
      OutOfDomain);

  for (int trial = 0; trial < 40; ++trial) {
    const GeodesicProbe probe =
        suites::random_probe(rng, 4, FinslerNorm::schatten(4), convexity_radius(4).conservative);
    const Theorem23Slack s = verify_theorem23(probe, rng.uniform(0.0, 1.0), 4);
    const double tol = 1e-8 * std::max({std::abs(s.lhs), std::abs(s.mid), std::abs(s.rhs), 1.0});
    CHECK(s.lhs <= s.mid + tol);
    CHECK(s.mid <= s.rhs + tol);
  }
}

TEST_CASE("convexity_probe: operator norm stays convex, Schatten strictly convex") {
  CounterRng rng(37);
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::Index dim = 3 + trial % 5;
    const GeodesicProbe probe =
        suites::random_probe(rng, dim, FinslerNorm::op(), kPi / 2.0 - 0.05);
    const ConvexityReport rep =
        convexity_probe(UnitaryMatrix::identity(dim), probe, FinslerNorm::op(), 64);
    CHECK(rep.verdict != ConvexityVerdict::Violated);
    CHECK(rep.min_second_difference > -1e-7);
  }
  for (int trial = 0; trial < 15; ++trial) {
    const GeodesicProbe probe =
        suites::random_probe(rng, 4, FinslerNorm::schatten(4), convexity_radius(4).conservative);
    const ConvexityReport rep =
        convexity_probe(UnitaryMatrix::identity(4), probe, FinslerNorm::schatten(4), 64);
    CHECK(rep.min_second_difference > -1e-7);
    CHECK(rep.strictness_failures <= 1);
  }
}

TEST_CASE("convexity_probe: normalized-trace mode (finite-trace algebra)") {
  CounterRng rng(43);
  const FinslerNorm tau4 = FinslerNorm::normalized_schatten(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index dim = 3 + trial % 4;
    // the ball hypothesis for the trace variant is measured uniformly
    const GeodesicProbe probe =
        suites::random_probe(rng, dim, tau4, convexity_radius(4).conservative);
    const ConvexityReport rep =
        convexity_probe(UnitaryMatrix::identity(dim), probe, tau4, 48);
    CHECK(rep.min_second_difference > -1e-7);
    CHECK(rep.strictness_failures <= 1);
    for (const Theorem23Slack& s : rep.inequality_slacks) {
      const double tol =
          1e-8 * std::max({std::abs(s.lhs), std::abs(s.mid), std::abs(s.rhs), 1.0});
      CHECK(s.lhs <= s.mid + tol);
      CHECK(s.mid <= s.rhs + tol);
    }
  }
}

TEST_CASE("convexity_probe: commuting probe under the operator norm is convex") {
  Matrix vd = Matrix::Zero(3, 3), zd = Matrix::Zero(3, 3);
  vd(0, 0) = Complex{0.0, 0.5};
  vd(1, 1) = Complex{0.0, -0.3};
  zd(0, 0) = Complex{0.0, -0.4};
  zd(1, 1) = Complex{0.0, 0.6};
  zd(2, 2) = Complex{0.0, 0.2};
  const GeodesicProbe probe{AntiHermMatrix(vd), AntiHermMatrix(zd)};
  const ConvexityReport rep =
      convexity_probe(UnitaryMatrix::identity(3), probe, FinslerNorm::op(), 64);
  CHECK(rep.verdict != ConvexityVerdict::Violated);
}

TEST_CASE("convexity_probe: out-of-domain probes are rejected") {
  Matrix vd = Matrix::Zero(2, 2);
  vd(0, 0) = Complex{0.0, 2.0};  // ||v|| = 2 > pi/2
  Matrix zd = Matrix::Zero(2, 2);
  zd(1, 1) = Complex{0.0, 0.5};
  CHECK_THROWS_AS(convexity_probe(UnitaryMatrix::identity(2),
                                  GeodesicProbe{AntiHermMatrix(vd), AntiHermMatrix(zd)},
                                  FinslerNorm::op(), 16),
                  OutOfDomain);
}

TEST_CASE("Cor 2.6 derivative identity for g_p") {
  CounterRng rng(38);
  const int p = 4;
  for (int trial = 0; trial < 8; ++trial) {
    const GeodesicProbe probe =
        suites::random_probe(rng, 4, FinslerNorm::schatten(p), convexity_radius(p).conservative);
    auto g = [&](double s) {
      return std::pow(f_p_derivatives(probe, s, p).f, 1.0 / p);
    };
    const FpDerivatives d = f_p_derivatives(probe, 0.5, p);
    const double expected = (1.0 / (p * p)) * std::pow(d.f, 1.0 / p - 2.0) *
                            (p * d.f * d.fsecond - (p - 1) * d.fprime * d.fprime);
    CHECK(std::abs(oracle::central_diff2(g, 0.5, 1e-4) - expected) <
          1e-4 * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("probe_g2: commuting and affine cases report convex") {
  Matrix vd = Matrix::Zero(3, 3), zd = Matrix::Zero(3, 3);
  vd(0, 0) = Complex{0.0, 0.4};
  zd(0, 0) = Complex{0.0, -0.5};
  zd(1, 1) = Complex{0.0, 0.3};
  const ConvexityReport commuting =
      probe_g2(GeodesicProbe{AntiHermMatrix(vd), AntiHermMatrix(zd)}, 48);
  CHECK(commuting.verdict != ConvexityVerdict::Violated);

  CounterRng rng(39);
  const AntiHermMatrix z = random_antiherm_opnorm(rng, 4, 0.7);
  const ConvexityReport affine = probe_g2(GeodesicProbe{AntiHermMatrix::zero(4), z}, 48);
  CHECK(affine.verdict != ConvexityVerdict::Violated);

  // non-commuting probes: data gathered, never asserted
  for (int trial = 0; trial < 5; ++trial) {
    const GeodesicProbe probe = suites::random_probe(rng, 4, FinslerNorm::schatten(2), 0.6);
    const ConvexityReport rep = probe_g2(probe, 48);
    CHECK(rep.g_values.size() == 48);
  }
}

TEST_CASE("compression_limit_probe: exact at full rank, ordered across p") {
  CounterRng rng(40);
  const GeodesicProbe probe = suites::random_probe(rng, 10, FinslerNorm::op(), 1.2);
  const std::vector<int> ranks = {2, 4, 6, 8, 10};
  const std::vector<int> ps = {4, 16, 64};
  const auto table = compression_limit_probe(probe, ranks, ps, 1.0);
  CHECK(table.size() == 5);
  CHECK(table.back().gap_to_full < 1e-12);
  for (const auto& row : table) {
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ps.size(); ++i) {
      CHECK(row.p_norms[i] <= prev + 1e-12);
      CHECK(row.p_norms[i] >= row.op_norm - 1e-12);
      CHECK(row.p_norms[i] <=
            std::pow(10.0, 1.0 / ps[i]) * row.op_norm + 1e-12);
      prev = row.p_norms[i];
    }
  }
  // diagonal probes: the table is constant once the support is covered
  Matrix vd = Matrix::Zero(6, 6), zd = Matrix::Zero(6, 6);
  vd(0, 0) = Complex{0.0, 0.4};
  vd(1, 1) = Complex{0.0, -0.3};
  zd(0, 0) = Complex{0.0, 0.2};
  const GeodesicProbe dprobe{AntiHermMatrix(vd), AntiHermMatrix(zd)};
  const auto dtable = compression_limit_probe(dprobe, {2, 4, 6}, {4}, 1.0);
  CHECK(std::abs(dtable[0].op_norm - dtable[2].op_norm) < 1e-13);
  CHECK(std::abs(dtable[0].p_norms[0] - dtable[2].p_norms[0]) < 1e-13);
}

TEST_CASE("path_length: geodesics have constant-speed length") {
  CounterRng rng(41);
  const AntiHermMatrix z = random_antiherm_opnorm(rng, 4, 1.3);
  std::vector<UnitaryMatrix> samples;
  const int n = 1000;
  for (int i = 0; i <= n; ++i)
    samples.push_back(UnitaryMatrix(mat_exp((z.mat() * (static_cast<double>(i) / n)).eval())));
  CHECK(std::abs(path_length(samples, FinslerNorm::op()) - 1.3) < 1e-4);
  CHECK(std::abs(path_length(samples, FinslerNorm::schatten(4)) -
                 schatten_norm(z.mat(), FinslerNorm::schatten(4))) < 1e-4);
}

TEST_CASE("pi/4 balls are convexity balls: 500 random configurations") {
  // u and both geodesic endpoints inside a common ball of radius pi/4 - eps;
  // the distance from u along the geodesic must never report a violation
  CounterRng rng(44);
  const double radius = kPi / 4.0 - 0.05;
  for (int trial = 0; trial < 500; ++trial) {
    const Eigen::Index dim = 3 + trial % 3;
    const AntiHermMatrix a = random_antiherm_opnorm(rng, dim, rng.uniform(0.05, radius));
    const AntiHermMatrix b0 = random_antiherm_opnorm(rng, dim, rng.uniform(0.05, radius));
    const AntiHermMatrix b1 = random_antiherm_opnorm(rng, dim, rng.uniform(0.05, radius));
    const UnitaryMatrix u(mat_exp(a.mat()));
    const AntiHermMatrix z = principal_log_unitary(
        UnitaryMatrix(mat_exp((-b0.mat()).eval()) * mat_exp(b1.mat())));
    const GeodesicProbe probe(b0, z);
    const ConvexityReport rep = convexity_probe(u, probe, FinslerNorm::op(), 33);
    CHECK(rep.verdict != ConvexityVerdict::Violated);
  }
}

TEST_CASE("two-segment competitors never beat the geodesic") {
  CounterRng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index dim = 3 + trial % 4;
    for (const FinslerNorm& nf :
         {FinslerNorm::op(), FinslerNorm::normalized_schatten(2),
          FinslerNorm::normalized_schatten(4)}) {
      CHECK(suites::geodesic_competitor_slack(rng, dim, nf) >= -1e-6);
    }
  }
  // identical endpoints: competitor length is still nonnegative
  const UnitaryMatrix u = random_unitary(rng, 3);
  CHECK(random_competitor_length(u, u, FinslerNorm::op(), 0.3, rng) >= 0.0);
}
