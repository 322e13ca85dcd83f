#include "ufg/norms.hpp"

#include <cmath>
#include <vector>

namespace ufg {

void FinslerNorm::validate() const {
  if (kind == NormKind::Operator) return;
  if (p < 2 || p % 2 != 0) throw ConfigError("FinslerNorm: p must be an even integer >= 2");
}

std::string FinslerNorm::label() const {
  switch (kind) {
    case NormKind::Operator: return "operator";
    case NormKind::SchattenP: return "p" + std::to_string(p);
    case NormKind::NormalizedSchattenP: return "p" + std::to_string(p) + "-normalized";
  }
  return "?";
}

double schatten_norm(const Matrix& x, const FinslerNorm& norm) {
  norm.validate();
  if (norm.kind == NormKind::Operator)
    throw ConfigError("schatten_norm: operator kind not allowed here");
  Eigen::JacobiSVD<Matrix> svd(x);
  const auto& sv = svd.singularValues();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) acc += std::pow(sv(i), norm.p);
  acc *= norm.trace_factor(x.rows());
  return std::pow(acc, 1.0 / norm.p);
}

double norm_of(const Matrix& x, const FinslerNorm& norm) {
  if (norm.kind == NormKind::Operator) return operator_norm(x);
  return schatten_norm(x, norm);
}

namespace {

// powers a^0 .. a^{maxpow}
std::vector<Matrix> power_table(const Matrix& a, int maxpow) {
  std::vector<Matrix> pows;
  pows.reserve(maxpow + 1);
  pows.push_back(Matrix::Identity(a.rows(), a.cols()));
  for (int k = 1; k <= maxpow; ++k) pows.push_back(pows.back() * a);
  return pows;
}

double sign_factor(int p) { return (p / 2) % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

double hessian_form(const AntiHermMatrix& a, const AntiHermMatrix& b, const AntiHermMatrix& c,
                    int p, double trace_factor) {
  if (p < 4 || p % 2 != 0) throw ConfigError("hessian_form: p must be even, p >= 4");
  if (a.dim() != b.dim() || a.dim() != c.dim())
    throw Error("hessian_form: dimension mismatch");
  const auto pows = power_table(a.mat(), p - 2);
  Complex acc{0.0, 0.0};
  double scale = 0.0;
  for (int k = 0; k <= p - 2; ++k) {
    const Complex term = (pows[p - 2 - k] * b.mat() * pows[k] * c.mat()).trace();
    acc += term;
    scale += std::abs(term);
  }
  const double pref = sign_factor(p) * p * trace_factor;
  scale = std::abs(pref) * scale + 1.0;
  const double residue = std::abs(pref * acc.imag());
  if (residue > 1e-8 * scale)
    throw ImaginaryResidue("hessian_form: imaginary residue above tolerance");
  return pref * acc.real();
}

double quadratic_form(const AntiHermMatrix& a, const AntiHermMatrix& b, int p,
                      double trace_factor) {
  return hessian_form(a, b, b, p, trace_factor);
}

HessianReport check_hessian_properties(const AntiHermMatrix& a, const AntiHermMatrix& b, int p) {
  HessianReport rep;
  const Matrix commutator = b.mat() * a.mat() - a.mat() * b.mat();
  const AntiHermMatrix ba(commutator);
  rep.H_value = hessian_form(a, ba, b, p);
  rep.Q_b = quadratic_form(a, b, p);
  rep.property1_lhs = quadratic_form(a, ba, p);
  const double anorm = operator_norm(a.mat());
  rep.property1_rhs = 4.0 * anorm * anorm * rep.Q_b;

  rep.property2_lhs = rep.Q_b;
  const int half = p / 2;
  const auto pows = power_table(a.mat(), std::max(half - 1, 1));
  const Matrix anticomm = a.mat() * b.mat() + b.mat() * a.mat();
  double rhs = p * (b.mat() * pows[half - 1]).squaredNorm();
  for (int l = 0; l + 2 <= half; ++l) {
    const int m = half - 2 - l;
    rhs += 0.5 * p * (pows[l] * anticomm * pows[m]).squaredNorm();
  }
  rep.property2_rhs = rhs;
  return rep;
}

}  // namespace ufg
