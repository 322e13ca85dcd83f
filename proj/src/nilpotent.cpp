#include "ufg/nilpotent.hpp"

#include <algorithm>
#include <cmath>

namespace ufg {

namespace {

constexpr double kBlockTol = 1e-9;

struct Blocks {
  Matrix b00, b01, b10, b11;
};

Blocks split(const NilpotentContext& ctx, const Matrix& m) {
  const Eigen::Index n = ctx.half;
  if (m.rows() != 2 * n || m.cols() != 2 * n)
    throw Error("nilpotent: matrix does not match context dimension");
  return Blocks{m.topLeftCorner(n, n), m.topRightCorner(n, n), m.bottomLeftCorner(n, n),
                m.bottomRightCorner(n, n)};
}

Matrix assemble(const Matrix& b00, const Matrix& b01, const Matrix& b10, const Matrix& b11) {
  const Eigen::Index n = b00.rows();
  Matrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = b00;
  m.topRightCorner(n, n) = b01;
  m.bottomLeftCorner(n, n) = b10;
  m.bottomRightCorner(n, n) = b11;
  return m;
}

double scale_of(const Matrix& m) { return std::max(1.0, operator_norm(m)); }

}  // namespace

NilpotentContext NilpotentContext::make(Eigen::Index n) {
  if (n < 1) throw ConfigError("NilpotentContext: n must be >= 1");
  Matrix nil = Matrix::Zero(2 * n, 2 * n);
  nil.topRightCorner(n, n) = Matrix::Identity(n, n);
  return NilpotentContext{n, std::move(nil)};
}

bool kernel_membership(const NilpotentContext& ctx, const Matrix& y) {
  const Blocks b = split(ctx, y);
  const double s = scale_of(y);
  return b.b01.norm() <= kBlockTol * s && b.b10.norm() <= kBlockTol * s &&
         (b.b00 - b.b11).norm() <= kBlockTol * s &&
         (b.b00 + b.b00.adjoint()).norm() <= kBlockTol * s;
}

bool range_membership_N(const NilpotentContext& ctx, const Matrix& w) {
  const Blocks b = split(ctx, w);
  const double s = scale_of(w);
  return b.b10.norm() <= kBlockTol * s && (b.b00 + b.b11).norm() <= kBlockTol * s &&
         (b.b01 + b.b01.adjoint()).norm() <= kBlockTol * s;
}

bool supplement_membership(const NilpotentContext& ctx, const Matrix& w) {
  const Blocks b = split(ctx, w);
  const double s = scale_of(w);
  return (b.b00 - b.b11).norm() <= kBlockTol * s &&
         (b.b01 - b.b01.adjoint()).norm() <= kBlockTol * s;
}

RangeSupplementSplit split_range_supplement(const NilpotentContext& ctx, const Matrix& w) {
  const Blocks b = split(ctx, w);
  const Matrix a = 0.5 * (b.b00 - b.b11);
  const Matrix aprime = 0.5 * (b.b00 + b.b11);
  const Matrix bah = 0.5 * (b.b01 - b.b01.adjoint());
  const Matrix bh = 0.5 * (b.b01 + b.b01.adjoint());
  const Eigen::Index n = ctx.half;
  RangeSupplementSplit out;
  out.range_part = assemble(a, bah, Matrix::Zero(n, n), -a);
  out.supplement_part = assemble(aprime, bh, b.b10, aprime);
  out.residual = (w - out.range_part - out.supplement_part).norm();
  return out;
}

UnitaryMatrix nilpotent_cross_section(const NilpotentContext& ctx, const Matrix& b) {
  const double s = scale_of(b);
  if (operator_norm(b * b) > 1e-9 * s * s || operator_norm(b * b.adjoint() * b - b) > 1e-9 * s)
    throw NotOrbitShape("nilpotent_cross_section: b^2 = 0, b b* b = b violated");
  const Matrix nnstar = ctx.N * ctx.N.adjoint();
  const Matrix section = b * b.adjoint() * nnstar + b.adjoint() * ctx.N;
  Eigen::JacobiSVD<Matrix> svd(section);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-10 * std::max(1.0, sv(0)))
    throw NotInSection("nilpotent_cross_section: s(b) numerically singular");
  return polar_unitary_part(section);
}

AntiHermMatrix antisymmetric_minimal_lifting(const NilpotentContext& ctx,
                                             const AntiHermMatrix& z11,
                                             const AntiHermMatrix& z12,
                                             const AntiHermMatrix& z22) {
  const Eigen::Index n = ctx.half;
  if (z11.dim() != n || z12.dim() != n || z22.dim() != n)
    throw Error("antisymmetric_minimal_lifting: block dimension mismatch");
  if ((z12.mat() + z12.mat().adjoint()).norm() > symmetry_tol(n))
    throw SymmetryViolation("antisymmetric_minimal_lifting: z12 must be anti-Hermitian");
  const Matrix d = 0.5 * (z11.mat() - z22.mat());
  return AntiHermMatrix(assemble(d, z12.mat(), z12.mat(), -d));
}

bool antisymmetry_check(const NilpotentContext& ctx, const Matrix& b, const Matrix& x) {
  const UnitaryMatrix mu = nilpotent_cross_section(ctx, b);
  const Matrix pulled = mu.mat().adjoint() * x * mu.mat();
  const Blocks blk = split(ctx, pulled);
  const double s = scale_of(pulled);
  const double tol = 1e-8 * s;
  const bool tangent_shape = blk.b10.norm() <= tol && (blk.b00 + blk.b11).norm() <= tol &&
                             (blk.b01 + blk.b01.adjoint()).norm() <= tol;
  const bool x0_antiherm = (blk.b00 + blk.b00.adjoint()).norm() <= tol;
  return tangent_shape && x0_antiherm;
}

MinimalityCertificate nilpotent_minimality_probe(const NilpotentContext& ctx,
                                                 const AntiHermMatrix& z0, int trials,
                                                 std::uint64_t seed) {
  CounterRng rng(seed);
  const double radius = 2.0 * std::max(operator_norm(z0.mat()), 0.05);
  std::vector<Matrix> dirs;
  dirs.reserve(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    const Matrix y0 = random_antiherm(rng, ctx.half).mat();
    const double nrm = operator_norm(y0);
    if (nrm < 1e-14) continue;
    const Matrix scaled = y0 * (rng.uniform(0.05, 1.0) * radius / nrm);
    dirs.push_back(assemble(scaled, Matrix::Zero(ctx.half, ctx.half),
                            Matrix::Zero(ctx.half, ctx.half), scaled));
  }
  return minimality_probe_directions(z0, dirs);
}

}  // namespace ufg
