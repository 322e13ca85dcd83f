#pragma once

// Test-only oracles, deliberately independent of the library's computation
// paths: power iteration instead of SVD, raw power series instead of the
// eigenbasis exponential, quadrature instead of the closed-form transport,
// vectorized least squares instead of block characterizations, brute-force
// search instead of the completion formula.

#include <cstdint>
#include <functional>

#include "ufg/orbit.hpp"
#include "ufg/rng.hpp"
#include "ufg/types.hpp"

namespace ufg::oracle {

double power_iteration_norm(const Matrix& m, int iters = 3000, std::uint64_t seed = 7);

/// Termwise power series for e^x (no scaling, no eigen route); accurate to
/// machine precision for moderate ||x||.
Matrix series_exp(const Matrix& x);

/// Composite-Simpson quadrature of int_0^1 e^{-tw} wdot e^{tw} dt.
Matrix simpson_transport(const Matrix& w, const Matrix& wdot, int panels);

double central_diff1(const std::function<double(double)>& f, double s, double h);
double central_diff2(const std::function<double(double)>& f, double s, double h);

/// Best completion norm found by random search plus coordinate descent over
/// Hermitian Z; lower values would contradict the DKW optimum.
double dkw_bruteforce_best(const Matrix& X, const Matrix& Y, const Matrix& z_start,
                           int samples, std::uint64_t seed);

/// Residual of the least-squares solve of delta_A(y) = w over all complex y
/// (vectorized Sylvester system).
double delta_least_squares_residual(const SpectralDecomposition& spec, const Matrix& w);

/// Smallest nonzero singular value of the vectorized derivation map.
double delta_smallest_nonzero_singular(const SpectralDecomposition& spec);

}  // namespace ufg::oracle
