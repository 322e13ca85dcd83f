#pragma once

#include <functional>

#include "ufg/types.hpp"

namespace ufg {

/// e^x. Normal inputs (in particular anti-Hermitian ones) go through an
/// eigendecomposition so the result of exponentiating a Lie-algebra element
/// is unitary to machine precision; everything else falls back to
/// scaling-and-squaring.
Matrix mat_exp(const Matrix& x);

inline UnitaryMatrix mat_exp(const AntiHermMatrix& x) { return UnitaryMatrix(mat_exp(x.mat())); }

/// Principal anti-Hermitian logarithm of a unitary: eigen-angles in (-pi, pi).
/// Throws EigenvalueAtMinusOne when spec(u) touches -1 (branch undefined).
AntiHermMatrix principal_log_unitary(const UnitaryMatrix& u);

/// Closed form of the transport integral z = \int_0^1 e^{-tw} wdot e^{tw} dt:
/// in an eigenbasis of w with eigenvalues i*theta_j, entry (j,k) of wdot picks
/// up the factor phi(theta_j - theta_k), phi(d) = (1 - e^{-id})/(id).
AntiHermMatrix dexp_transport(const AntiHermMatrix& w, const AntiHermMatrix& wdot);

/// Inverse of dexp_transport in its second argument; requires the spectrum
/// spread of w below 2*pi so no phi factor vanishes (else SingularTransport).
AntiHermMatrix dexp_inverse(const AntiHermMatrix& w, const AntiHermMatrix& z);

/// Unitary part of the polar decomposition g = omega(g)|g|, for invertible g.
UnitaryMatrix polar_unitary_part(const Matrix& g);

/// f applied on the spectrum of a Hermitian matrix in its eigenbasis.
HermMatrix functional_calculus(const HermMatrix& a, const std::function<double(double)>& f);

struct EigenAngles {
  Eigen::VectorXd theta;  // real angles; the matrix is V diag(i*theta) V*
  Matrix basis;           // unitary V
};

/// Eigenstructure of an anti-Hermitian matrix via the Hermitian matrix -i*w.
EigenAngles antiherm_eigensystem(const AntiHermMatrix& w);

}  // namespace ufg
