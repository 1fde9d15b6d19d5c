#pragma once

#include <optional>
#include <vector>

#include "core/types.hpp"

namespace symloc {

// Principal square root of a Hermitian positive semidefinite matrix.
Mat hermitian_sqrt(const Mat& m);

// Condition number via singular values; infinity-safe (returns huge for singular).
double cond_number(const Mat& m);

bool is_unitary(const Mat& m, double tol = kPropTol);

// Largest eigenvalue of G^{-1} H for Hermitian positive G, H (real, via the
// symmetric reduction G^{-1/2} H G^{-1/2}).
double max_gen_eigenvalue(const Mat& g, const Mat& h);

// Nullspace basis (columns) of m, thresholded at tol * sigma_max.
Mat nullspace(const Mat& m, double tol = kPropTol);

// Roots of the polynomial sum_k coeffs[k] z^k via the companion matrix of the
// monic normalization. coeffs.back() must be nonzero.
std::vector<Cplx> poly_roots(const std::vector<Cplx>& coeffs);

// Whether m is diagonalizable within tolerance, decided by the eigenvector
// matrix condition number (< 1/tol). Defective and near-defective matrices
// report false.
bool diagonalizable(const Mat& m, double tol = kDiagGateTol);

Mat kron(const Mat& a, const Mat& b);

}  // namespace symloc
