#pragma once

#include "ufg/linalg.hpp"

namespace ufg {

/// Five-fold splitting induced by two orthogonal projections: the four
/// intersection corners plus the generic part, where the pair acts as a
/// rotation by the angle operator.
struct HalmosDecomposition {
  Eigen::Index dim = 0;
  Matrix h00;  // frame of ker p0 ^ ker p1
  Matrix h01;  // frame of ker p0 ^ R(p1)
  Matrix h10;  // frame of R(p0) ^ ker p1
  Matrix h11;  // frame of R(p0) ^ R(p1)
  // Generic part, in matched frames: E spans R(p0) ^ H0, F spans ker p0 ^ H0,
  // chosen so that the compression of p1 is [[c^2, cs], [cs, s^2]] with
  // c = cos(angle), s = sin(angle).
  Matrix generic_range;   // E, n x m
  Matrix generic_kernel;  // F, n x m
  Matrix angle;           // Hermitian m x m, spectrum in [0, pi/2]
  bool near_halfpi = false;  // some angle within 1e-6 of pi/2: splitting at tolerance

  Eigen::Index generic_dim() const { return generic_range.cols(); }
};

bool is_projection(const HermMatrix& p, double tol = 1e-10);

/// Corners from the eigenspaces of p0 + p1 (eigenvalues 0 and 2) and p0 - p1
/// (eigenvalues +1 and -1), clustering tolerance 1e-8; the rest is the
/// generic part. Throws NotProjection on non-idempotent input.
HalmosDecomposition halmos_decompose(const HermMatrix& p0, const HermMatrix& p1);

/// z = (1/2) log(eps1 eps0) with eps_i = 2 p_i - 1; requires ||p0 - p1|| < 1
/// (NormOne otherwise). e^z conjugates p0 to p1, z is p0 co-diagonal,
/// ||z|| <= pi/2.
AntiHermMatrix direct_rotation(const HermMatrix& p0, const HermMatrix& p1);

/// Full minimal-geodesic generator, valid also at ||p0 - p1|| = 1: rotation by
/// the angle operator on the generic part, a pi/2 swap on h01 + h10 through a
/// frame-matching isometry, zero on the coinciding corners. Throws
/// ComponentMismatch when dim h01 != dim h10.
AntiHermMatrix assemble_minimal_z(const HermMatrix& p0, const HermMatrix& p1);

/// True iff p z p and (1-p) z (1-p) both vanish to 1e-9 ||z||.
bool verify_codiagonal(const HermMatrix& p, const AntiHermMatrix& z);

}  // namespace ufg
