// SPDX-License-Identifier: Apache-2.0

#ifndef IRSCOV_LINALG_HPP
#define IRSCOV_LINALG_HPP

#include "irscov/types.hpp"

namespace irscov {

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
struct HermitianEigen {
  RVector values;
  CMatrix vectors;
};

/// Only the lower triangle of `m` is read. Throws SolverError on failure.
HermitianEigen hermitian_eigen(const CMatrix& m);

/// (X + X^H) / 2
CMatrix hermitian_part(const CMatrix& x);

/// Frobenius-nearest PSD matrix: Hermitian part with negative eigenvalues clipped.
CMatrix project_psd(const CMatrix& x);

/// Largest eigenvalue of a Hermitian matrix (spectral norm for PSD input).
double max_eigenvalue(const CMatrix& m);

double min_eigenvalue(const CMatrix& m);

/// Number of eigenvalues above rel_tol * max |eigenvalue|.
Index numerical_rank(const CMatrix& hermitian, double rel_tol);

/// Relative Frobenius distance ||a - b|| / ||b||; returns ||a|| when b = 0.
double relative_error(const CMatrix& a, const CMatrix& b);

/// Column-stacking vec().
CVector vec(const CMatrix& m);

/// Kronecker product a (x) b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

}  // namespace irscov

#endif  // IRSCOV_LINALG_HPP
