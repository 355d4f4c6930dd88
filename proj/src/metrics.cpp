// SPDX-License-Identifier: Apache-2.0

#include "irscov/metrics.hpp"

#include <string>

#include "irscov/errors.hpp"
#include "irscov/linalg.hpp"

namespace irscov {

CMatrix dominant_subspace(const CMatrix& hermitian, Index r) {
  if (r < 1 || r > hermitian.rows())
    throw DimensionError("dominant_subspace: r = " + std::to_string(r) + " outside [1, " +
                         std::to_string(hermitian.rows()) + "]");
  auto eig = hermitian_eigen(hermitian_part(hermitian));
  return eig.vectors.rightCols(r).rowwise().reverse();
}

double rem_metric(const CMatrix& rh_true, const CMatrix& rh_est, Index r) {
  if (rh_true.rows() != rh_est.rows() || rh_true.cols() != rh_est.cols() || rh_true.rows() != rh_true.cols())
    throw DimensionError("rem_metric: covariances differ in size");
  const CMatrix u1 = dominant_subspace(rh_est, r);
  const CMatrix u2 = dominant_subspace(rh_true, r);
  const double num = (u1.adjoint() * rh_true * u1).trace().real();
  const double den = (u2.adjoint() * rh_true * u2).trace().real();
  if (!(den > 0.0)) throw DegenerateInputError("rem_metric: true covariance has no energy");
  return num / den;
}

}  // namespace irscov
