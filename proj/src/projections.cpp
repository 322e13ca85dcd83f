#include "ufg/projections.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace ufg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kClusterTol = 1e-8;

// columns of the eigenvectors of a Hermitian matrix whose eigenvalue lies
// within tol of target
Matrix eigenspace(const Matrix& h, double target, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  std::vector<Eigen::Index> idx;
  for (Eigen::Index j = 0; j < h.rows(); ++j)
    if (std::abs(es.eigenvalues()(j) - target) <= tol) idx.push_back(j);
  Matrix frame(h.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) frame.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(idx[c]);
  return frame;
}

Matrix herm_sqrt_pinv(const Matrix& a) {
  // pseudo-inverse of the PSD matrix a^{1/2}(1-a)^{1/2} computed from a's spectrum
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  Eigen::VectorXcd w(a.rows());
  for (Eigen::Index j = 0; j < a.rows(); ++j) {
    const double al = std::clamp(es.eigenvalues()(j), 0.0, 1.0);
    const double cs = std::sqrt(al * (1.0 - al));
    w(j) = cs > 1e-12 ? 1.0 / cs : 0.0;
  }
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

bool is_projection(const HermMatrix& p, double tol) {
  return operator_norm(p.mat() * p.mat() - p.mat()) <= tol;
}

HalmosDecomposition halmos_decompose(const HermMatrix& p0, const HermMatrix& p1) {
  if (p0.dim() != p1.dim()) throw NotProjection("halmos_decompose: dimension mismatch");
  if (!is_projection(p0) || !is_projection(p1))
    throw NotProjection("halmos_decompose: input is not an orthogonal projection");
  const Eigen::Index n = p0.dim();

  HalmosDecomposition h;
  h.dim = n;
  const Matrix sum = p0.mat() + p1.mat();
  const Matrix diff = p0.mat() - p1.mat();
  h.h00 = eigenspace(sum, 0.0, kClusterTol);
  h.h11 = eigenspace(sum, 2.0, kClusterTol);
  h.h10 = eigenspace(diff, 1.0, kClusterTol);
  h.h01 = eigenspace(diff, -1.0, kClusterTol);

  Matrix corners = Matrix::Zero(n, n);
  for (const Matrix* f : {&h.h00, &h.h01, &h.h10, &h.h11})
    if (f->cols() > 0) corners += (*f) * f->adjoint();
  const Matrix generic_basis = eigenspace(Matrix::Identity(n, n) - corners, 1.0, 0.5);
  const Eigen::Index g = generic_basis.cols();

  if (g == 0) {
    h.generic_range = Matrix(n, 0);
    h.generic_kernel = Matrix(n, 0);
    h.angle = Matrix(0, 0);
    return h;
  }

  // split the generic part along p0
  const Matrix p0c = generic_basis.adjoint() * p0.mat() * generic_basis;
  const Matrix e0 = eigenspace(p0c, 1.0, 0.5);
  const Matrix f0 = eigenspace(p0c, 0.0, 0.5);
  if (e0.cols() != f0.cols() || e0.cols() + f0.cols() != g)
    throw NotProjection("halmos_decompose: generic part failed to split evenly");
  const Matrix E = generic_basis * e0;
  const Matrix F = generic_basis * f0;
  const Eigen::Index m = E.cols();

  const Matrix a = E.adjoint() * p1.mat() * E;  // cos^2 of the angle operator
  Eigen::SelfAdjointEigenSolver<Matrix> ea(a);
  Eigen::VectorXcd angles(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double al = std::clamp(ea.eigenvalues()(j), 0.0, 1.0);
    const double theta = std::acos(std::sqrt(al));
    angles(j) = theta;
    if (std::abs(theta - kPi / 2.0) < 1e-6) h.near_halfpi = true;
  }
  h.angle = ea.eigenvectors() * angles.asDiagonal() * ea.eigenvectors().adjoint();

  // match the kernel-side frame so the off-diagonal block becomes cs exactly
  const Matrix b = E.adjoint() * p1.mat() * F;
  const Matrix v0 = herm_sqrt_pinv(a) * b;
  Eigen::JacobiSVD<Matrix> svd(v0, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix v = svd.matrixU() * svd.matrixV().adjoint();
  h.generic_range = E;
  h.generic_kernel = F * v.adjoint();
  return h;
}

AntiHermMatrix direct_rotation(const HermMatrix& p0, const HermMatrix& p1) {
  if (!is_projection(p0) || !is_projection(p1))
    throw NotProjection("direct_rotation: input is not an orthogonal projection");
  if (operator_norm(p0.mat() - p1.mat()) >= 1.0 - 1e-10)
    throw NormOne("direct_rotation: ||p0 - p1|| = 1, use assemble_minimal_z");
  const Matrix eps0 = 2.0 * p0.mat() - Matrix::Identity(p0.dim(), p0.dim());
  const Matrix eps1 = 2.0 * p1.mat() - Matrix::Identity(p1.dim(), p1.dim());
  const AntiHermMatrix lg = principal_log_unitary(UnitaryMatrix(eps1 * eps0));
  return AntiHermMatrix(0.5 * lg.mat());
}

AntiHermMatrix assemble_minimal_z(const HermMatrix& p0, const HermMatrix& p1) {
  const HalmosDecomposition h = halmos_decompose(p0, p1);
  if (h.h01.cols() != h.h10.cols())
    throw ComponentMismatch("assemble_minimal_z: dim h01 != dim h10");
  Matrix z = Matrix::Zero(h.dim, h.dim);
  if (h.generic_dim() > 0) {
    const Matrix& E = h.generic_range;
    const Matrix& F = h.generic_kernel;
    z += F * h.angle * E.adjoint() - E * h.angle * F.adjoint();
  }
  if (h.h01.cols() > 0) {
    const Matrix v_op = h.h01 * h.h10.adjoint();  // frame-matching isometry h10 -> h01
    z += (kPi / 2.0) * (v_op - v_op.adjoint());
  }
  return AntiHermMatrix(z);
}

bool verify_codiagonal(const HermMatrix& p, const AntiHermMatrix& z) {
  const double zn = operator_norm(z.mat());
  if (zn == 0.0) return true;
  const Matrix q = Matrix::Identity(p.dim(), p.dim()) - p.mat();
  return operator_norm(p.mat() * z.mat() * p.mat()) <= 1e-9 * zn &&
         operator_norm(q * z.mat() * q) <= 1e-9 * zn;
}

}  // namespace ufg
