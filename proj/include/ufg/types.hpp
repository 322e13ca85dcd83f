#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace ufg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonFiniteInput : Error { using Error::Error; };
struct SymmetryViolation : Error { using Error::Error; };
struct EigenvalueAtMinusOne : Error { using Error::Error; };
struct SingularTransport : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct ImaginaryResidue : Error { using Error::Error; };
struct OutOfDomain : Error { using Error::Error; };
struct NotTangent : Error { using Error::Error; };
struct SingleEigenvalue : Error { using Error::Error; };
struct OutsideSection : Error { using Error::Error; };
struct NormTooLarge : Error { using Error::Error; };
struct NotProjection : Error { using Error::Error; };
struct NormOne : Error { using Error::Error; };
struct ComponentMismatch : Error { using Error::Error; };
struct NotInSection : Error { using Error::Error; };
struct NotOrbitShape : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

inline double symmetry_tol(Eigen::Index dim) { return 1e-12 * static_cast<double>(dim); }
inline double unitarity_tol(Eigen::Index dim) { return 1e-10 * static_cast<double>(dim); }

bool all_finite(const Matrix& m);

/// Largest singular value. Lives here so the typed wrappers can validate
/// themselves; re-exported by norms.hpp as the operator-norm Finsler metric.
double operator_norm(const Matrix& m);

/// Hermitian matrix: validated to symmetry_tol, then re-symmetrized so the
/// stored entries satisfy m == m.adjoint() exactly up to rounding.
class HermMatrix {
 public:
  HermMatrix() = default;  // empty 0x0
  explicit HermMatrix(Matrix m);
  static HermMatrix zero(Eigen::Index n) { return HermMatrix(Matrix::Zero(n, n)); }

  const Matrix& mat() const& { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

/// Anti-Hermitian matrix (m* = -m); same validate-then-clean policy.
class AntiHermMatrix {
 public:
  AntiHermMatrix() = default;  // empty 0x0
  explicit AntiHermMatrix(Matrix m);
  static AntiHermMatrix zero(Eigen::Index n) { return AntiHermMatrix(Matrix::Zero(n, n)); }

  const Matrix& mat() const& { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

/// Unitary matrix, validated to unitarity_tol (no re-orthogonalization: the
/// producers here are exponentials and polar factors, unitary by construction).
class UnitaryMatrix {
 public:
  UnitaryMatrix() = default;  // empty 0x0
  explicit UnitaryMatrix(Matrix u);
  static UnitaryMatrix identity(Eigen::Index n) { return UnitaryMatrix(Matrix::Identity(n, n)); }

  const Matrix& mat() const& { return u_; }
  Eigen::Index dim() const { return u_.rows(); }
  UnitaryMatrix adjoint() const { return UnitaryMatrix(u_.adjoint()); }

 private:
  Matrix u_;
};

inline UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  return UnitaryMatrix(a.mat() * b.mat());
}

}  // namespace ufg
