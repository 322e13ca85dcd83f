#pragma once

#include <vector>

#include "ufg/linalg.hpp"
#include "ufg/norms.hpp"
#include "ufg/rng.hpp"

namespace ufg {

/// Probe geodesic beta(s) = e^v e^{sz}, s in [0,1], measured from the
/// identity (a general base point is handled by left translation).
struct GeodesicProbe {
  AntiHermMatrix v;
  AntiHermMatrix z;

  GeodesicProbe(AntiHermMatrix v_, AntiHermMatrix z_) : v(std::move(v_)), z(std::move(z_)) {}
  Eigen::Index dim() const { return v.dim(); }
  UnitaryMatrix at(double s) const;
  /// True when max_s ||log beta(s)|| stays below the branch margin pi - 0.01.
  bool within_branch(int samples = 17) const;
};

UnitaryMatrix geodesic_point(const UnitaryMatrix& u, const AntiHermMatrix& z, double t);

/// Geodesic distance ||log(u1* u2)|| in the chosen norm. Throws
/// EigenvalueAtMinusOne at the cut locus (spec(u1* u2) touching -1).
double rectifiable_distance(const UnitaryMatrix& u1, const UnitaryMatrix& u2,
                            const FinslerNorm& norm);

struct LogCurvePoint {
  AntiHermMatrix w;     // log(beta(s))
  AntiHermMatrix wdot;  // d/ds log(beta(s)), recovered through the transport identity
};

LogCurvePoint log_curve(const GeodesicProbe& probe, double s);

struct FpDerivatives {
  double f = 0.0;        // ||w_s||_p^p
  double fprime = 0.0;   // H_w(wdot, w)/(p-1)
  double fsecond = 0.0;  // H_w(wdot, z)
};

FpDerivatives f_p_derivatives(const GeodesicProbe& probe, double s, int p,
                              bool normalized = false);

double sinc(double r);
/// Inverse of sinc on [0, pi], bisected to 1e-12; y must lie in (0, 1].
double sinc_inverse(double y);

struct ConvexityRadius {
  double r_p;           // (1/2) sinc^{-1}(1/(p-1))
  double conservative;  // min(r_p, pi/4 - 1e-6), the radius actually enforced
};

ConvexityRadius convexity_radius(int p);

/// The three members of the inequality chain
///   (p-1) f' ^2  <=  p f f'' / sinc(2 r)  <=  p (p-1) f f''
/// with r = ||w_s||_p (standard trace) or ||w_s|| (normalized-trace mode).
struct Theorem23Slack {
  double lhs = 0.0;
  double mid = 0.0;
  double rhs = 0.0;
  double fsecond = 0.0;  // carried for the equality-case diagnostics
};

Theorem23Slack verify_theorem23(const GeodesicProbe& probe, double s, int p,
                                bool normalized = false);

enum class ConvexityVerdict { Convex, StrictlyConvex, Violated, OutOfDomain };

struct ConvexityReport {
  std::vector<double> grid;
  std::vector<double> g_values;
  std::vector<double> second_differences;  // centered, at interior grid points
  double min_second_difference = 0.0;
  std::vector<Theorem23Slack> inequality_slacks;  // per grid point, Schatten p >= 4 only
  int strictness_failures = 0;  // interior points with second difference <= 1e-10
  ConvexityVerdict verdict = ConvexityVerdict::Convex;
};

/// Samples g(s) = d(u, beta(s)) on a uniform grid and classifies convexity
/// from centered second differences. Domain: d_infty(u, beta(s)) < pi/2 for
/// the operator norm, the conservative ball for Schatten norms. Throws
/// OutOfDomain when the hypothesis fails at some grid point.
ConvexityReport convexity_probe(const UnitaryMatrix& u, const GeodesicProbe& probe,
                                const FinslerNorm& norm, int gridsize);

/// Same sampling machinery at p = 2, where convexity of g_2 is an open
/// question: records the data, never asserts (only the log branch is checked).
ConvexityReport probe_g2(const GeodesicProbe& probe, int gridsize);

struct CompressionRow {
  int rank = 0;
  double op_norm = 0.0;
  std::vector<double> p_norms;    // aligned with the p_list argument
  double gap_to_full = 0.0;       // ||w_{r,s} - w_s|| (operator norm)
};

/// Compresses v, z by leading coordinate projections of the given ranks,
/// recomputes w_{r,s} and tabulates its Schatten norms across p_list next to
/// the operator norm (the finite-rank p -> infinity mechanism).
std::vector<CompressionRow> compression_limit_probe(const GeodesicProbe& probe,
                                                    const std::vector<int>& ranks,
                                                    const std::vector<int>& p_list, double s);

/// Rectifiable length of a sampled unitary path: consecutive samples are
/// joined by short geodesics and their lengths accumulated (left-translated
/// finite differences).
double path_length(const std::vector<UnitaryMatrix>& samples, const FinslerNorm& norm);

/// Length of a two-segment geodesic competitor through a randomly perturbed
/// midpoint between u1 and u2.
double random_competitor_length(const UnitaryMatrix& u1, const UnitaryMatrix& u2,
                                const FinslerNorm& norm, double perturbation, CounterRng& rng);

}  // namespace ufg
