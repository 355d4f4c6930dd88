// SPDX-License-Identifier: Apache-2.0

#ifndef IRSCOV_TYPES_HPP
#define IRSCOV_TYPES_HPP

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace irscov {

using Index = Eigen::Index;
using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kJ{0.0, 1.0};

}  // namespace irscov

#endif  // IRSCOV_TYPES_HPP
