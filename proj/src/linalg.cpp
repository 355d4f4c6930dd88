// SPDX-License-Identifier: Apache-2.0

#include "irscov/linalg.hpp"

#include <limits>
#include <string>
#include <vector>

#include <lapacke.h>

#include "irscov/errors.hpp"

namespace irscov {

HermitianEigen hermitian_eigen(const CMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("hermitian_eigen: matrix is not square");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw SolverError("hermitian_eigen: eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

CMatrix hermitian_part(const CMatrix& x) { return (x + x.adjoint()) * 0.5; }

namespace {

lapack_complex_double* lp(CMatrix& m) { return reinterpret_cast<lapack_complex_double*>(m.data()); }

// Number of positive eigenvalues, read off the block-diagonal factor of a
// Bunch-Kaufman LDL^H factorization (Sylvester's law of inertia).
Index positive_inertia(CMatrix h) {
  const auto n = static_cast<lapack_int>(h.rows());
  std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
  const lapack_int info = LAPACKE_zhetrf(LAPACK_COL_MAJOR, 'L', n, lp(h), n, ipiv.data());
  if (info < 0) throw SolverError("project_psd: zhetrf failed with info " + std::to_string(info));
  Index positive = 0;
  for (lapack_int k = 0; k < n; ++k) {
    if (ipiv[static_cast<std::size_t>(k)] > 0) {
      if (h(k, k).real() > 0.0) ++positive;
      continue;
    }
    const double a = h(k, k).real(), c = h(k + 1, k + 1).real();
    const double det = a * c - std::norm(h(k + 1, k));
    if (det < 0.0) {
      ++positive;
    } else if (a + c > 0.0) {
      positive += 2;
    }
    ++k;
  }
  return positive;
}

// Eigenpairs of a Hermitian matrix (lower triangle used) with eigenvalues in (lo, hi].
Index eigen_range(CMatrix h, double lo, double hi, RVector& w, CMatrix& z) {
  const auto n = static_cast<lapack_int>(h.rows());
  w.resize(n);
  z.resize(n, n);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'V', 'L', n, lp(h), n, lo, hi, 0, 0, 0.0, &found,
                                         w.data(), lp(z), n, support.data());
  if (info != 0) throw SolverError("project_psd: zheevr failed with info " + std::to_string(info));
  return found;
}

// All eigenpairs by divide and conquer; eigenvalues ascending.
void eigen_all(CMatrix h, RVector& w, CMatrix& z) {
  const auto n = static_cast<lapack_int>(h.rows());
  w.resize(n);
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, lp(h), n, w.data());
  if (info != 0) throw SolverError("project_psd: zheevd failed with info " + std::to_string(info));
  z = std::move(h);
}

}  // namespace

CMatrix project_psd(const CMatrix& x) {
  if (x.rows() != x.cols()) throw DimensionError("project_psd: matrix is not square");
  const Index n = x.rows();
  if (n == 0) return x;
  // Reconstruct from whichever side of zero holds fewer eigenvalues. zheevr
  // pays per returned eigenvector, so it wins while that side is small; past
  // about n/4 a full divide-and-conquer solve is cheaper. The choice depends
  // only on x, which keeps the result reproducible.
  const CMatrix h = hermitian_part(x);
  const Index positive = positive_inertia(h);
  const bool from_negative = 2 * positive > n;
  const Index side = from_negative ? n - positive : positive;
  RVector w;
  CMatrix z;
  Index first = 0, count = 0;
  if (4 * side <= n) {
    const double big = std::numeric_limits<double>::max();
    count = from_negative ? eigen_range(h, -big, 0.0, w, z) : eigen_range(h, 0.0, big, w, z);
  } else {
    eigen_all(h, w, z);
    const Index positive_w = (w.array() > 0.0).count();
    count = from_negative ? n - positive_w : positive_w;
    first = from_negative ? 0 : n - positive_w;
  }
  CMatrix out = from_negative ? h : CMatrix::Zero(n, n);
  if (count == 0) return out;
  const auto u = z.middleCols(first, count);
  const auto lam = w.segment(first, count);
  if (from_negative) {
    out.noalias() -= u * lam.asDiagonal() * u.adjoint();
  } else {
    out.noalias() = u * lam.asDiagonal() * u.adjoint();
  }
  return hermitian_part(out);
}

double max_eigenvalue(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SolverError("max_eigenvalue: eigensolver did not converge");
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

double min_eigenvalue(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SolverError("min_eigenvalue: eigensolver did not converge");
  return es.eigenvalues()(0);
}

Index numerical_rank(const CMatrix& hermitian, double rel_tol) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SolverError("numerical_rank: eigensolver did not converge");
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  if (top == 0.0) return 0;
  return (es.eigenvalues().array().abs() > rel_tol * top).count();
}

double relative_error(const CMatrix& a, const CMatrix& b) {
  const double nb = b.norm();
  const double diff = (a - b).norm();
  return nb > 0.0 ? diff / nb : diff;
}

CVector vec(const CMatrix& m) { return Eigen::Map<const CVector>(m.data(), m.size()); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace irscov
