// SPDX-License-Identifier: Apache-2.0

// Reference implementations used only by the tests. Each one is written from the
// defining formula with plain loops or dense algebra, sharing no code with the
// library beyond the basic matrix types.

#ifndef IRSCOV_TESTS_ORACLES_HPP
#define IRSCOV_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "irscov/rng.hpp"
#include "irscov/types.hpp"

namespace oracle {

using irscov::cplx;
using irscov::CMatrix;
using irscov::CVector;
using irscov::Index;
using irscov::RMatrix;
using irscov::RVector;

using LagFn = std::function<cplx(const std::vector<Index>&)>;

/// Multi-level Toeplitz matrix by the block recursion: level d is a
/// k_d x k_d block array whose (i, j) block is the level-(d+1) matrix for
/// lag j - i at this level.
inline CMatrix block_toeplitz(const std::vector<Index>& sizes, const LagFn& value, std::vector<Index> prefix = {}) {
  const std::size_t level = prefix.size();
  if (level == sizes.size()) {
    CMatrix one(1, 1);
    one(0, 0) = value(prefix);
    return one;
  }
  const Index k = sizes[level];
  Index inner = 1;
  for (std::size_t d = level + 1; d < sizes.size(); ++d) inner *= sizes[d];
  CMatrix out(k * inner, k * inner);
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) {
      std::vector<Index> p = prefix;
      p.push_back(j - i);
      out.block(i * inner, j * inner, inner, inner) = block_toeplitz(sizes, value, p);
    }
  }
  return out;
}

/// Flat generator position: lag-major, first level slowest, lag -(k-1) first.
inline Index flat_position(const std::vector<Index>& sizes, const std::vector<Index>& lags) {
  Index f = 0;
  for (std::size_t d = 0; d < sizes.size(); ++d) f = f * (2 * sizes[d] - 1) + (lags[d] + sizes[d] - 1);
  return f;
}

inline Index generator_length(const std::vector<Index>& sizes) {
  Index g = 1;
  for (Index k : sizes) g *= 2 * k - 1;
  return g;
}

inline CMatrix block_toeplitz_from(const std::vector<Index>& sizes, const CVector& gen) {
  return block_toeplitz(sizes, [&](const std::vector<Index>& lags) { return gen(flat_position(sizes, lags)); });
}

/// Column g holds vec(T(e_g)).
inline CMatrix toeplitz_basis(const std::vector<Index>& sizes) {
  const Index g = generator_length(sizes);
  CMatrix first = block_toeplitz_from(sizes, CVector::Unit(g, 0));
  const Index n2 = first.size();
  CMatrix basis(n2, g);
  for (Index c = 0; c < g; ++c) {
    const CMatrix t = block_toeplitz_from(sizes, CVector::Unit(g, c));
    basis.col(c) = Eigen::Map<const CVector>(t.data(), n2);
  }
  return basis;
}

/// Generator minimising ||T(V) - M||_F, by least squares on the basis.
inline CVector toeplitz_least_squares(const std::vector<Index>& sizes, const CMatrix& m) {
  const CMatrix basis = toeplitz_basis(sizes);
  const CVector target = Eigen::Map<const CVector>(m.data(), m.size());
  return basis.colPivHouseholderQr().solve(target);
}

/// Transforming matrix column by column: column g is vec(W T(e_g) W^H).
inline CMatrix transforming_matrix(const CMatrix& w, const std::vector<Index>& sizes) {
  const Index g = generator_length(sizes);
  CMatrix out(w.rows() * w.rows(), g);
  for (Index c = 0; c < g; ++c) {
    const CMatrix y = w * block_toeplitz_from(sizes, CVector::Unit(g, c)) * w.adjoint();
    out.col(c) = Eigen::Map<const CVector>(y.data(), y.size());
  }
  return out;
}

/// Solves Xi A Xi^H + kappa A = C with the Kronecker-vectorised system.
inline CMatrix kronecker_solve(const CMatrix& xi, double kappa, const CMatrix& c) {
  const Index n = xi.rows();
  // vec(Xi A Xi^H) = (conj(Xi) (x) Xi) vec(A)
  CMatrix big(n * n, n * n);
  const CMatrix xc = xi.conjugate();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) big.block(i * n, j * n, n, n) = xc(i, j) * xi;
  big.diagonal().array() += kappa;
  const CVector a = big.partialPivLu().solve(Eigen::Map<const CVector>(c.data(), c.size()));
  return Eigen::Map<const CMatrix>(a.data(), n, n);
}

/// PSD projection through the real symmetric embedding [Re -Im; Im Re].
inline CMatrix psd_projection_real_embedding(const CMatrix& x) {
  const CMatrix h = (x + x.adjoint()) / 2.0;
  const Index n = h.rows();
  RMatrix big(2 * n, 2 * n);
  big << h.real(), -h.imag(), h.imag(), h.real();
  Eigen::SelfAdjointEigenSolver<RMatrix> es(big);
  const RVector lam = es.eigenvalues().cwiseMax(0.0);
  const RMatrix p = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
  CMatrix out(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) out(i, j) = cplx(p(i, j), p(n + i, j));
  return out;
}

inline CMatrix random_complex(Index rows, Index cols, irscov::Rng& rng) {
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = irscov::complex_normal(rng, 1.0);
  return m;
}

inline CMatrix random_hermitian(Index n, irscov::Rng& rng) {
  const CMatrix g = random_complex(n, n, rng);
  return (g + g.adjoint()) / 2.0;
}

inline CVector steering(double nu, Index d) {
  CVector a(d);
  for (Index i = 0; i < d; ++i) a(i) = std::exp(cplx(0.0, nu * static_cast<double>(i)));
  return a;
}

// max over psi of psi^T R psi^*, with psi_0 = 1 and every other phase on a
// grid of `levels` points. Exhaustive: levels^(M-1) candidates.
inline double quantized_phase_optimum(const CMatrix& r, int levels = 64) {
  const Index m = r.rows();
  std::vector<cplx> table(static_cast<std::size_t>(levels));
  for (int q = 0; q < levels; ++q) table[static_cast<std::size_t>(q)] = std::polar(1.0, 2.0 * irscov::kPi * q / levels);
  std::vector<int> digit(static_cast<std::size_t>(m), 0);
  CVector psi = CVector::Ones(m);
  double best = -std::numeric_limits<double>::infinity();
  for (;;) {
    for (Index i = 1; i < m; ++i) psi(i) = table[static_cast<std::size_t>(digit[static_cast<std::size_t>(i)])];
    double v = 0.0;
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j) v += (psi(i) * r(i, j) * std::conj(psi(j))).real();
    best = std::max(best, v);
    Index k = 1;
    while (k < m && ++digit[static_cast<std::size_t>(k)] == levels) digit[static_cast<std::size_t>(k++)] = 0;
    if (k >= m) break;
  }
  return best;
}

}  // namespace oracle

#endif  // IRSCOV_TESTS_ORACLES_HPP
