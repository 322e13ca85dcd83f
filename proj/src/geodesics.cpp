#include "ufg/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ufg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kStrictTol = 1e-10;
constexpr double kConvexTol = -1e-7;

bool commuting(const Matrix& a, const Matrix& b) {
  const double scale = std::max(1.0, a.norm() * b.norm());
  return (a * b - b * a).norm() <= 1e-10 * scale;
}

// true when v is (numerically) a real multiple of z
bool aligned(const Matrix& v, const Matrix& z) {
  const double zz = z.squaredNorm();
  if (zz == 0.0) return true;
  const double c = (z.adjoint() * v).trace().real() / zz;
  return (v - c * z).norm() <= 1e-8 * std::max(1.0, v.norm());
}

}  // namespace

UnitaryMatrix GeodesicProbe::at(double s) const {
  return UnitaryMatrix(mat_exp(v.mat()) * mat_exp((s * z.mat()).eval()));
}

bool GeodesicProbe::within_branch(int samples) const {
  for (int i = 0; i < samples; ++i) {
    const double s = static_cast<double>(i) / (samples - 1);
    try {
      if (operator_norm(principal_log_unitary(at(s)).mat()) >= kPi - 0.01) return false;
    } catch (const EigenvalueAtMinusOne&) {
      return false;
    }
  }
  return true;
}

UnitaryMatrix geodesic_point(const UnitaryMatrix& u, const AntiHermMatrix& z, double t) {
  return UnitaryMatrix(u.mat() * mat_exp((t * z.mat()).eval()));
}

double rectifiable_distance(const UnitaryMatrix& u1, const UnitaryMatrix& u2,
                            const FinslerNorm& norm) {
  const UnitaryMatrix rel(u1.mat().adjoint() * u2.mat());
  return norm_of(principal_log_unitary(rel).mat(), norm);
}

LogCurvePoint log_curve(const GeodesicProbe& probe, double s) {
  const AntiHermMatrix w = principal_log_unitary(probe.at(s));
  return LogCurvePoint{w, dexp_inverse(w, probe.z)};
}

FpDerivatives f_p_derivatives(const GeodesicProbe& probe, double s, int p, bool normalized) {
  if (p < 4 || p % 2 != 0) throw ConfigError("f_p_derivatives: p must be even >= 4");
  const LogCurvePoint pt = log_curve(probe, s);
  const double tf = normalized ? 1.0 / static_cast<double>(probe.dim()) : 1.0;
  FpDerivatives d;
  const FinslerNorm fn = normalized ? FinslerNorm::normalized_schatten(p)
                                    : FinslerNorm::schatten(p);
  d.f = std::pow(schatten_norm(pt.w.mat(), fn), p);
  d.fprime = hessian_form(pt.w, pt.wdot, pt.w, p, tf) / (p - 1);
  d.fsecond = hessian_form(pt.w, pt.wdot, probe.z, p, tf);
  return d;
}

double sinc(double r) {
  if (std::abs(r) < 1e-8) return 1.0 - r * r / 6.0;
  return std::sin(r) / r;
}

double sinc_inverse(double y) {
  if (!(y > 0.0) || y > 1.0) throw DomainError("sinc_inverse: y must lie in (0, 1]");
  if (y == 1.0) return 0.0;
  double lo = 0.0, hi = kPi;
  while (hi - lo > 1e-12) {
    const double midpt = 0.5 * (lo + hi);
    (sinc(midpt) > y ? lo : hi) = midpt;
  }
  return 0.5 * (lo + hi);
}

ConvexityRadius convexity_radius(int p) {
  if (p < 4 || p % 2 != 0) throw ConfigError("convexity_radius: p must be even >= 4");
  const double rp = 0.5 * sinc_inverse(1.0 / (p - 1));
  return ConvexityRadius{rp, std::min(rp, kPi / 4.0 - 1e-6)};
}

Theorem23Slack verify_theorem23(const GeodesicProbe& probe, double s, int p, bool normalized) {
  if (operator_norm(probe.z.mat()) == 0.0)
    throw OutOfDomain("verify_theorem23: constant geodesic");
  if (commuting(probe.v.mat(), probe.z.mat()) && aligned(probe.v.mat(), probe.z.mat()))
    throw OutOfDomain("verify_theorem23: base point lies on a prolongation of the geodesic");
  const LogCurvePoint pt = log_curve(probe, s);
  const FinslerNorm fn = normalized ? FinslerNorm::normalized_schatten(p)
                                    : FinslerNorm::schatten(p);
  // Theorem 2.3 measures the ball with the p-norm; the finite-trace variant
  // measures it (and the sinc argument) with the uniform norm.
  const double ball_radius = normalized ? operator_norm(pt.w.mat())
                                        : schatten_norm(pt.w.mat(), fn);
  if (ball_radius >= convexity_radius(p).conservative)
    throw OutOfDomain("verify_theorem23: probe leaves the conservative ball");
  const FpDerivatives d = f_p_derivatives(probe, s, p, normalized);
  Theorem23Slack slack;
  slack.lhs = (p - 1) * d.fprime * d.fprime;
  slack.mid = p * d.f * d.fsecond / sinc(2.0 * ball_radius);
  slack.rhs = p * (p - 1) * d.f * d.fsecond;
  slack.fsecond = d.fsecond;
  return slack;
}

namespace {

ConvexityReport grid_probe(const GeodesicProbe& probe, const FinslerNorm& norm, int gridsize,
                           bool enforce_domain, bool with_slacks, int slack_p) {
  if (gridsize < 3) throw ConfigError("convexity probe: gridsize must be >= 3");
  ConvexityReport rep;
  rep.grid.resize(gridsize);
  rep.g_values.resize(gridsize);
  const double conservative =
      (norm.kind == NormKind::Operator || norm.p < 4) ? 0.0
                                                      : convexity_radius(norm.p).conservative;
  for (int i = 0; i < gridsize; ++i) {
    const double s = static_cast<double>(i) / (gridsize - 1);
    rep.grid[i] = s;
    const LogCurvePoint pt = log_curve(probe, s);
    if (enforce_domain) {
      if (norm.kind == NormKind::Operator) {
        if (operator_norm(pt.w.mat()) >= kPi / 2.0)
          throw OutOfDomain("convexity_probe: d(u, beta(s)) >= pi/2");
      } else if (norm.p >= 4) {
        const double r = norm.normalized() ? operator_norm(pt.w.mat())
                                           : schatten_norm(pt.w.mat(), norm);
        if (r >= conservative)
          throw OutOfDomain("convexity_probe: probe leaves the conservative ball");
      }
    }
    rep.g_values[i] = norm_of(pt.w.mat(), norm);
    if (with_slacks) rep.inequality_slacks.push_back(verify_theorem23(probe, s, slack_p,
                                                                      norm.normalized()));
  }
  rep.second_differences.resize(gridsize - 2);
  rep.min_second_difference = std::numeric_limits<double>::infinity();
  for (int i = 1; i + 1 < gridsize; ++i) {
    const double d2 = rep.g_values[i + 1] - 2.0 * rep.g_values[i] + rep.g_values[i - 1];
    rep.second_differences[i - 1] = d2;
    rep.min_second_difference = std::min(rep.min_second_difference, d2);
    if (d2 <= kStrictTol) ++rep.strictness_failures;
  }
  if (rep.min_second_difference < kConvexTol)
    rep.verdict = ConvexityVerdict::Violated;
  else if (rep.strictness_failures == 0)
    rep.verdict = ConvexityVerdict::StrictlyConvex;
  else
    rep.verdict = ConvexityVerdict::Convex;
  return rep;
}

}  // namespace

ConvexityReport convexity_probe(const UnitaryMatrix& u, const GeodesicProbe& probe,
                                const FinslerNorm& norm, int gridsize) {
  norm.validate();
  // left-translate so the reference point becomes the identity
  const UnitaryMatrix rel(u.mat().adjoint() * mat_exp(probe.v.mat()));
  const GeodesicProbe shifted(principal_log_unitary(rel), probe.z);
  const bool slacks = norm.kind != NormKind::Operator && norm.p >= 4;
  return grid_probe(shifted, norm, gridsize, /*enforce_domain=*/true, slacks, norm.p);
}

ConvexityReport probe_g2(const GeodesicProbe& probe, int gridsize) {
  return grid_probe(probe, FinslerNorm::schatten(2), gridsize, /*enforce_domain=*/false,
                    /*with_slacks=*/false, 0);
}

std::vector<CompressionRow> compression_limit_probe(const GeodesicProbe& probe,
                                                    const std::vector<int>& ranks,
                                                    const std::vector<int>& p_list, double s) {
  const Eigen::Index n = probe.dim();
  const AntiHermMatrix w_full = log_curve(probe, s).w;
  std::vector<CompressionRow> table;
  table.reserve(ranks.size());
  for (int r : ranks) {
    if (r < 1 || r > n) throw ConfigError("compression_limit_probe: rank out of range");
    Matrix q = Matrix::Zero(n, n);
    q.topLeftCorner(r, r) = Matrix::Identity(r, r);
    const GeodesicProbe compressed(AntiHermMatrix(q * probe.v.mat() * q),
                                   AntiHermMatrix(q * probe.z.mat() * q));
    const AntiHermMatrix w = log_curve(compressed, s).w;
    CompressionRow row;
    row.rank = r;
    row.op_norm = operator_norm(w.mat());
    for (int p : p_list) row.p_norms.push_back(schatten_norm(w.mat(), FinslerNorm::schatten(p)));
    row.gap_to_full = operator_norm(w.mat() - w_full.mat());
    table.push_back(std::move(row));
  }
  return table;
}

double path_length(const std::vector<UnitaryMatrix>& samples, const FinslerNorm& norm) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i)
    acc += rectifiable_distance(samples[i], samples[i + 1], norm);
  return acc;
}

double random_competitor_length(const UnitaryMatrix& u1, const UnitaryMatrix& u2,
                                const FinslerNorm& norm, double perturbation, CounterRng& rng) {
  const AntiHermMatrix half(0.5 * principal_log_unitary(UnitaryMatrix(u1.mat().adjoint() *
                                                                      u2.mat()))
                                      .mat());
  const AntiHermMatrix kick =
      random_antiherm_opnorm(rng, u1.dim(), perturbation * rng.uniform(0.1, 1.0));
  const UnitaryMatrix mid(u1.mat() * mat_exp(half.mat()) * mat_exp(kick.mat()));
  return rectifiable_distance(u1, mid, norm) + rectifiable_distance(mid, u2, norm);
}

}  // namespace ufg
