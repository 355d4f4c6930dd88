// SPDX-License-Identifier: Apache-2.0

#ifndef IRSCOV_METRICS_HPP
#define IRSCOV_METRICS_HPP

#include "irscov/types.hpp"

namespace irscov {

/// Relative efficiency metric: energy of rh_true captured by the top-r
/// eigenvectors of rh_est, over the energy captured by its own top-r eigenvectors.
double rem_metric(const CMatrix& rh_true, const CMatrix& rh_est, Index r);

/// Top-r eigenvectors (largest eigenvalues first) of a Hermitian matrix.
CMatrix dominant_subspace(const CMatrix& hermitian, Index r);

}  // namespace irscov

#endif  // IRSCOV_METRICS_HPP
