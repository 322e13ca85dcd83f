#include "ufg/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace ufg {

namespace {

constexpr Complex kI{0.0, 1.0};

double frob(const Matrix& m) { return m.norm(); }

// phi(d) = (1 - e^{-id})/(id), the eigenbasis multiplier of the transport
// integral. Series fallback below |d| = 1e-6 avoids the cancellation in
// 1 - e^{-id}.
Complex phi(double d) {
  if (std::abs(d) < 1e-6) {
    const Complex t = -kI * d;
    Complex term{1.0, 0.0};
    Complex acc{1.0, 0.0};
    double fact = 1.0;
    for (int k = 1; k <= 5; ++k) {
      term *= t;
      fact *= static_cast<double>(k + 1);
      acc += term / fact;
    }
    return acc;
  }
  const Complex denom = kI * d;
  return (1.0 - std::exp(-kI * d)) / denom;
}

bool is_antihermitian(const Matrix& m, double tol) {
  return frob(m + m.adjoint()) <= tol || operator_norm(m + m.adjoint()) <= tol;
}

bool is_normal(const Matrix& m) {
  const double scale = std::max(1.0, frob(m) * frob(m));
  return frob(m * m.adjoint() - m.adjoint() * m) <= 1e-13 * scale;
}

}  // namespace

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

double operator_norm(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

HermMatrix::HermMatrix(Matrix m) {
  if (m.rows() != m.cols()) throw SymmetryViolation("HermMatrix: not square");
  if (!all_finite(m)) throw NonFiniteInput("HermMatrix: non-finite entries");
  const double tol = symmetry_tol(m.rows());
  const Matrix dev = m - m.adjoint();
  if (frob(dev) > tol && operator_norm(dev) > tol)
    throw SymmetryViolation("HermMatrix: deviation above symmetry tolerance");
  m_ = 0.5 * (m + m.adjoint());
}

AntiHermMatrix::AntiHermMatrix(Matrix m) {
  if (m.rows() != m.cols()) throw SymmetryViolation("AntiHermMatrix: not square");
  if (!all_finite(m)) throw NonFiniteInput("AntiHermMatrix: non-finite entries");
  const double tol = symmetry_tol(m.rows());
  const Matrix dev = m + m.adjoint();
  if (frob(dev) > tol && operator_norm(dev) > tol)
    throw SymmetryViolation("AntiHermMatrix: deviation above symmetry tolerance");
  m_ = 0.5 * (m - m.adjoint());
}

UnitaryMatrix::UnitaryMatrix(Matrix u) {
  if (u.rows() != u.cols()) throw Error("UnitaryMatrix: not square");
  if (!all_finite(u)) throw NonFiniteInput("UnitaryMatrix: non-finite entries");
  const double tol = unitarity_tol(u.rows());
  const Matrix dev = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  if (frob(dev) > tol && operator_norm(dev) > tol)
    throw Error("UnitaryMatrix: u*u - 1 above unitarity tolerance");
  u_ = std::move(u);
}

Matrix mat_exp(const Matrix& x) {
  if (!all_finite(x)) throw NonFiniteInput("mat_exp: non-finite entries");
  const Eigen::Index n = x.rows();
  if (x.rows() != x.cols()) throw Error("mat_exp: not square");
  if (n == 0) return x;

  if (is_antihermitian(x, symmetry_tol(n))) {
    Eigen::SelfAdjointEigenSolver<Matrix> es((-kI * x).eval());
    Eigen::VectorXcd d(n);
    for (Eigen::Index j = 0; j < n; ++j) d(j) = std::exp(kI * es.eigenvalues()(j));
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
  }
  if (is_normal(x)) {
    Eigen::ComplexSchur<Matrix> schur(x);
    Eigen::VectorXcd d(n);
    for (Eigen::Index j = 0; j < n; ++j) d(j) = std::exp(schur.matrixT()(j, j));
    return schur.matrixU() * d.asDiagonal() * schur.matrixU().adjoint();
  }
  return x.exp();  // scaling-and-squaring
}

AntiHermMatrix principal_log_unitary(const UnitaryMatrix& u) {
  const Eigen::Index n = u.dim();
  Eigen::ComplexSchur<Matrix> schur(u.mat());
  Eigen::VectorXcd logd(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex lambda = schur.matrixT()(j, j);
    if (std::abs(lambda + 1.0) < 1e-10)
      throw EigenvalueAtMinusOne("principal_log_unitary: eigenvalue at -1");
    logd(j) = kI * std::atan2(lambda.imag(), lambda.real());
  }
  const Matrix w = schur.matrixU() * logd.asDiagonal() * schur.matrixU().adjoint();
  return AntiHermMatrix(w);
}

EigenAngles antiherm_eigensystem(const AntiHermMatrix& w) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((-kI * w.mat()).eval());
  return EigenAngles{es.eigenvalues(), es.eigenvectors()};
}

AntiHermMatrix dexp_transport(const AntiHermMatrix& w, const AntiHermMatrix& wdot) {
  if (w.dim() != wdot.dim()) throw Error("dexp_transport: dimension mismatch");
  const EigenAngles sys = antiherm_eigensystem(w);
  Matrix e = sys.basis.adjoint() * wdot.mat() * sys.basis;
  for (Eigen::Index j = 0; j < e.rows(); ++j)
    for (Eigen::Index k = 0; k < e.cols(); ++k) e(j, k) *= phi(sys.theta(j) - sys.theta(k));
  return AntiHermMatrix(sys.basis * e * sys.basis.adjoint());
}

AntiHermMatrix dexp_inverse(const AntiHermMatrix& w, const AntiHermMatrix& z) {
  if (w.dim() != z.dim()) throw Error("dexp_inverse: dimension mismatch");
  const EigenAngles sys = antiherm_eigensystem(w);
  Matrix e = sys.basis.adjoint() * z.mat() * sys.basis;
  for (Eigen::Index j = 0; j < e.rows(); ++j)
    for (Eigen::Index k = 0; k < e.cols(); ++k) {
      const Complex f = phi(sys.theta(j) - sys.theta(k));
      if (std::abs(f) < 1e-12)
        throw SingularTransport("dexp_inverse: vanishing transport multiplier");
      e(j, k) /= f;
    }
  return AntiHermMatrix(sys.basis * e * sys.basis.adjoint());
}

UnitaryMatrix polar_unitary_part(const Matrix& g) {
  if (!all_finite(g)) throw NonFiniteInput("polar_unitary_part: non-finite entries");
  Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= 1e-12 * sv(0))
    throw SingularMatrix("polar_unitary_part: matrix numerically singular");
  return UnitaryMatrix(svd.matrixU() * svd.matrixV().adjoint());
}

HermMatrix functional_calculus(const HermMatrix& a, const std::function<double(double)>& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.mat());
  Eigen::VectorXd d(a.dim());
  for (Eigen::Index j = 0; j < a.dim(); ++j) {
    d(j) = f(es.eigenvalues()(j));
    if (!std::isfinite(d(j)))
      throw DomainError("functional_calculus: f undefined at an eigenvalue");
  }
  return HermMatrix(es.eigenvectors() * d.asDiagonal().toDenseMatrix().cast<Complex>() *
                    es.eigenvectors().adjoint());
}

}  // namespace ufg
