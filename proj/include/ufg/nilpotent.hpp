#pragma once

#include "ufg/linalg.hpp"
#include "ufg/orbit.hpp"

namespace ufg {

/// The order-two nilpotent N = [[0, I], [0, 0]] on H0 x H0; NN* + N*N = 1.
struct NilpotentContext {
  Eigen::Index half = 0;
  Matrix N;

  static NilpotentContext make(Eigen::Index n);
  Eigen::Index dim() const { return 2 * half; }
};

/// ker delta_N: block matrices diag(y0, y0) with y0 anti-Hermitian.
bool kernel_membership(const NilpotentContext& ctx, const Matrix& y);
/// R(delta_N): [[a, b], [0, -a]] with b anti-Hermitian.
bool range_membership_N(const NilpotentContext& ctx, const Matrix& w);
/// The chosen supplement: [[a', b'], [c', a']] with b' Hermitian.
bool supplement_membership(const NilpotentContext& ctx, const Matrix& w);

struct RangeSupplementSplit {
  Matrix range_part;
  Matrix supplement_part;
  double residual = 0.0;  // ||w - range - supplement||, zero by construction
};

/// The direct sum K(H) = R(delta_N) + S, split blockwise (unique).
RangeSupplementSplit split_range_supplement(const NilpotentContext& ctx, const Matrix& w);

/// Algebraic cross section mu(b) = polar unitary part of s(b) = b b* N N* + b* N,
/// satisfying mu(b) N mu(b)* = b. Throws NotOrbitShape unless b^2 = 0 and
/// b b* b = b; NotInSection when s(b) is numerically singular.
UnitaryMatrix nilpotent_cross_section(const NilpotentContext& ctx, const Matrix& b);

/// Closed-form minimal lifting of the anti-symmetric tangent delta_N(z),
/// z = [[z11, z12], [z12, z22]] with every block anti-Hermitian:
///   z0 = [[D, z12], [z12, -D]],  D = (z11 - z22)/2.
/// The spectrum of -i z0 then pairs as +/- lambda, which is what forces
/// minimality against the kernel.
AntiHermMatrix antisymmetric_minimal_lifting(const NilpotentContext& ctx,
                                             const AntiHermMatrix& z11,
                                             const AntiHermMatrix& z12,
                                             const AntiHermMatrix& z22);

/// Pulls a tangent vector at b back through the cross section and tests the
/// anti-symmetric block pattern; the verdict does not depend on which unitary
/// conjugates N to b.
bool antisymmetry_check(const NilpotentContext& ctx, const Matrix& b, const Matrix& x);

/// Kernel directions diag(y0, y0) sampled on the ball of radius 2||z0||, fed
/// to the shared minimality certificate.
MinimalityCertificate nilpotent_minimality_probe(const NilpotentContext& ctx,
                                                 const AntiHermMatrix& z0, int trials,
                                                 std::uint64_t seed);

}  // namespace ufg
