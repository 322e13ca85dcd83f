#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ufg/linalg.hpp"
#include "ufg/norms.hpp"
#include "ufg/rng.hpp"

namespace ufg {

/// A = sum lambda_i p_i with pairwise distinct eigenvalues; each block keeps
/// an orthonormal column frame so compressions to block coordinates are cheap.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  std::vector<Matrix> frames;       // n x r_i, orthonormal columns
  std::vector<Matrix> projections;  // frames[i] * frames[i]^*
  Eigen::Index dim = 0;

  /// Clusters the spectrum of a Hermitian matrix (gap threshold cluster_tol)
  /// and aggregates eigenvectors per cluster.
  static SpectralDecomposition from_hermitian(const HermMatrix& a, double cluster_tol = 1e-8);
  /// Distinct eigenvalues with the given block ranks, blocks spanned by
  /// consecutive columns of `basis`.
  static SpectralDecomposition make(const std::vector<double>& lambdas,
                                    const std::vector<int>& ranks, const UnitaryMatrix& basis);

  Matrix reconstruct() const;
  int block_count() const { return static_cast<int>(eigenvalues.size()); }
  int block_rank(int i) const { return static_cast<int>(frames[static_cast<std::size_t>(i)].cols()); }
  /// Largest block (first on ties); plays the role of the kernel projection
  /// p_0 in the finite-rank completion pipeline.
  int distinguished_block() const;
  void validate(double tol = 1e-10) const;
};

/// Inner derivation delta_b(y) = y b - b y.
Matrix delta(const Matrix& b, const Matrix& y);

/// Conditional expectation onto the commutant: P_A(x) = sum p_i x p_i.
Matrix kernel_projection(const SpectralDecomposition& spec, const Matrix& x);

/// Tangency test: w lies in R(delta_A) iff every diagonal block vanishes.
bool range_membership(const SpectralDecomposition& spec, const Matrix& w);

/// C = min_{i != j} |lambda_i - lambda_j|, the constant in
/// C ||x - P_A(x)|| <= ||delta_A(x)||. Exact for the 2-norm; the operator-norm
/// constant is measured separately in the tests. Throws SingleEigenvalue when
/// the derivation vanishes identically.
double derivation_gap(const SpectralDecomposition& spec);

/// Local cross section theta(b) = u Omega(P_A(u*)) for b = u A u*; depends on
/// b only. Throws OutsideSection when P_A(u*) is numerically singular.
UnitaryMatrix cross_section_theta(const SpectralDecomposition& spec, const UnitaryMatrix& u);

struct DkwResult {
  HermMatrix Z;
  double mu = 0.0;  // row-block norm ||[X Y]||, the attained completion norm
};

/// Minimal-norm Hermitian completion of [[X, Y], [Y*, ?]]: the optimum equals
/// the row norm mu = ||[X Y]|| and is attained at the interval midpoint
/// Z = -Y* X (mu^2 - X^2)^+ Y, evaluated with a spectral pseudo-inverse
/// (shifted by 1e-10 mu^2 when mu^2 - X^2 is singular) and a scalar polish of
/// the level when the shift leaves residue.
DkwResult dkw_complete(const HermMatrix& X, const Matrix& Y);

/// Tangent vector x = delta_b(z) at b together with one known lifting z.
struct OrbitTangent {
  HermMatrix base;
  HermMatrix vector;
  AntiHermMatrix lifting;

  static OrbitTangent from_lifting(const SpectralDecomposition& spec_b,
                                   const AntiHermMatrix& z);
};

struct QuotientOptions {
  int restarts = 8;
  int max_ap_iters = 1500;
  double bisect_tol = 1e-9;       // relative to the instance scale
  double feasibility_tol = 1e-10;  // relative, Frobenius gap declaring the sets met
  std::uint64_t seed = 0x75EEDULL;
};

struct QuotientSolve {
  double value = 0.0;
  AntiHermMatrix minimizer;  // lifting in the affine set with ||.|| == value
  bool nonunique = false;    // two restarts met at equal norm but different points
  double lower_bound = 0.0;  // pairwise-compression bound
};

/// Operator-norm minimization over the affine set z + {block-diagonal
/// anti-Hermitian supported on free_blocks}: bisection on the norm level with
/// an alternating-projection feasibility subproblem and random restarts.
/// free_blocks empty means every block is free.
QuotientSolve quotient_norm_solve(const SpectralDecomposition& spec_b, const OrbitTangent& x,
                                  const std::vector<int>& free_blocks = {},
                                  const QuotientOptions& opts = {});

/// The quotient Finsler norm ||x||_b = inf ||y|| over liftings.
double quotient_norm(const SpectralDecomposition& spec_b, const OrbitTangent& x,
                     const QuotientOptions& opts = {});

struct MinimalLifting {
  AntiHermMatrix z_c;
  double quotient_norm = 0.0;
  bool nonunique = false;
};

/// Minimal lifting of x: general minimizer first, then the distinguished
/// block p_0 (largest) is stripped and completed back through dkw_complete,
/// reproducing the finite-rank pipeline.
MinimalLifting minimal_lifting(const SpectralDecomposition& spec_b, const OrbitTangent& x,
                               const QuotientOptions& opts = {});

struct MinimalityCertificate {
  std::vector<double> norm_slacks;  // min_t ||z + t d|| - ||z|| per sampled kernel direction
  std::vector<double> log_slacks;   // min_t ||log(e^z e^{td})|| - ||z|| per direction
  double worst_norm_slack = 0.0;
  double worst_log_slack = 0.0;
  bool passed = false;
};

/// Core certificate evaluation against explicit kernel directions: both the
/// norm inequality ||z + t d|| >= ||z|| and the distance function
/// f(t) = ||log(e^z e^{td})|| having its minimum at t = 0. Requires
/// ||z|| < pi/2 (NormTooLarge otherwise).
MinimalityCertificate minimality_probe_directions(const AntiHermMatrix& z_c,
                                                  const std::vector<Matrix>& kernel_dirs);

/// Samples `trials` random block-diagonal kernel directions (plus the
/// block-diagonal component of z itself, the deterministic descent candidate)
/// and runs the core certificate.
MinimalityCertificate minimality_probe(const SpectralDecomposition& spec_b,
                                       const AntiHermMatrix& z_c, int trials,
                                       std::uint64_t seed);

struct OrbitPathPoint {
  HermMatrix point;
  HermMatrix velocity;
  AntiHermMatrix lifting;  // any y with delta_point(y) = velocity
};

struct PiecewiseLiftResult {
  double length = 0.0;  // sum ||z_i|| dt
  double endpoint_error = 0.0;
  std::vector<double> lifting_norms;
  UnitaryMatrix endpoint;
};

/// Product-of-exponentials approximate lift of an orbit path from minimal
/// liftings at n uniform grid points; the endpoint mismatch decays like 1/n.
PiecewiseLiftResult piecewise_lift(const std::function<OrbitPathPoint(double)>& path,
                                   int n_segments, const QuotientOptions& opts = {});

struct CommutatorDecay {
  double value = 0.0;        // ||x_k A_0 - A_0 x_k||_2^2 from the matrices
  double closed_form = 0.0;  // (2/k^2) { k sum lambda^2 - (sum lambda)^2 }
  double bound = 0.0;        // (2/k) sum lambda^2
};

/// The rank-one-projection commutator computation: x_k has 1/k in the leading
/// k x k corner, A_0 = diag(lambdas).
CommutatorDecay commutator_decay(const std::vector<double>& lambdas, int k);

}  // namespace ufg
