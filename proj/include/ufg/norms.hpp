#pragma once

#include "ufg/types.hpp"

namespace ufg {

enum class NormKind { Operator, SchattenP, NormalizedSchattenP };

/// Norm selector used as the Finsler metric on anti-Hermitian tangents:
/// supremum norm, Schatten-p, or Schatten-p with the normalized trace Tr/n.
struct FinslerNorm {
  NormKind kind = NormKind::Operator;
  int p = 0;

  static FinslerNorm op() { return {NormKind::Operator, 0}; }
  static FinslerNorm schatten(int p) { return {NormKind::SchattenP, p}; }
  static FinslerNorm normalized_schatten(int p) { return {NormKind::NormalizedSchattenP, p}; }

  bool normalized() const { return kind == NormKind::NormalizedSchattenP; }
  double trace_factor(Eigen::Index dim) const {
    return normalized() ? 1.0 / static_cast<double>(dim) : 1.0;
  }
  void validate() const;
  std::string label() const;
};

double schatten_norm(const Matrix& x, const FinslerNorm& norm);

/// Norm of x under the selector (operator norm or Schatten).
double norm_of(const Matrix& x, const FinslerNorm& norm);

/// Hessian bilinear form of the p-norm powers at anti-Hermitian a:
///   H_a(b, c) = (-1)^{p/2} p sum_{k=0}^{p-2} tr(a^{p-2-k} b a^k c) * trace_factor.
/// The trace must come out real; an imaginary residue above 1e-8*scale signals
/// broken symmetry in the inputs and raises ImaginaryResidue.
double hessian_form(const AntiHermMatrix& a, const AntiHermMatrix& b, const AntiHermMatrix& c,
                    int p, double trace_factor = 1.0);

/// Q_a(b) = H_a(b, b).
double quadratic_form(const AntiHermMatrix& a, const AntiHermMatrix& b, int p,
                      double trace_factor = 1.0);

struct HessianReport {
  double H_value = 0.0;  // cross evaluation H_a([b,a], b)
  double Q_b = 0.0;
  double property1_lhs = 0.0;  // Q_a([b,a])
  double property1_rhs = 0.0;  // 4 ||a||^2 Q_a(b)
  double property2_lhs = 0.0;  // Q_a(b)
  double property2_rhs = 0.0;  // p ||b a^{p/2-1}||_2^2 + (p/2) sum_{l+m=p/2-2} ||a^l(ab+ba)a^m||_2^2
};

/// Evaluates both proved properties of the Hessian quadratic form. The inner
/// sum of property 2 runs over l+m = p/2-2 (the index that makes the identity
/// match second-derivative data; see the finite-difference tests).
HessianReport check_hessian_properties(const AntiHermMatrix& a, const AntiHermMatrix& b, int p);

}  // namespace ufg
