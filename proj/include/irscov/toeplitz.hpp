// SPDX-License-Identifier: Apache-2.0

// Multi-level Toeplitz matrices (d <= 3).
//
// Layout conventions used throughout the library:
//  * A d-level matrix over level sizes (k_1, ..., k_d) has dimension
//    k_1 * ... * k_d. Row/column indices decompose with level 1 slowest and
//    level d fastest, matching the Kronecker order a(N) (x) a(Mv) (x) a(Mh).
//  * Entry (i, j) carries the per-level lag vector (j_1 - i_1, ..., j_d - i_d).
//  * The generator has extents (2k_1 - 1) x ... x (2k_d - 1) and is stored as a
//    flat vector, lag-major, level 1 slowest; lag -(k-1) comes first.

#ifndef IRSCOV_TOEPLITZ_HPP
#define IRSCOV_TOEPLITZ_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "irscov/types.hpp"

namespace irscov {

class LevelDims {
 public:
  static constexpr Index kMaxLevels = 3;
  /// Largest supported matrix dimension (cell indices are 32-bit).
  static constexpr Index kMaxMatrixSize = 46340;

  explicit LevelDims(std::vector<Index> sizes);
  static LevelDims three(Index n, Index mv, Index mh) { return LevelDims({n, mv, mh}); }

  Index levels() const { return static_cast<Index>(sizes_.size()); }
  Index size(Index level) const { return sizes_[static_cast<std::size_t>(level)]; }
  Index extent(Index level) const { return 2 * size(level) - 1; }
  Index matrix_size() const { return matrix_size_; }
  Index generator_size() const { return generator_size_; }
  const std::vector<Index>& sizes() const { return sizes_; }

  /// Flat generator position of a lag vector (one lag per level).
  Index flat_lag(std::span<const Index> lags) const;
  /// Inverse of flat_lag.
  std::vector<Index> lags_of(Index flat) const;
  /// Flat generator position of the lag carried by matrix entry (i, j).
  Index lag_of_entry(Index i, Index j) const;

  bool operator==(const LevelDims& other) const { return sizes_ == other.sizes_; }

 private:
  std::vector<Index> sizes_;
  Index matrix_size_ = 1;
  Index generator_size_ = 1;
};

/// Generator tensor of a multi-level Toeplitz matrix.
class ToeplitzGenerator {
 public:
  explicit ToeplitzGenerator(LevelDims dims);
  ToeplitzGenerator(LevelDims dims, CVector data);

  const LevelDims& dims() const { return dims_; }
  const CVector& data() const { return data_; }
  CVector& data() { return data_; }

  cplx& at(std::span<const Index> lags) { return data_(dims_.flat_lag(lags)); }
  cplx at(std::span<const Index> lags) const { return data_(dims_.flat_lag(lags)); }
  cplx& at(Index l1, Index l2, Index l3) { return at(std::array<Index, 3>{l1, l2, l3}); }
  cplx at(Index l1, Index l2, Index l3) const { return at(std::array<Index, 3>{l1, l2, l3}); }

  /// data(-l) == conj(data(l)) for every lag, within `tol` (absolute).
  bool is_conjugate_symmetric(double tol) const;

 private:
  LevelDims dims_;
  CVector data_;
};

/// For every generator lag, the matrix cells that carry it.
class LagIndexSets {
 public:
  explicit LagIndexSets(LevelDims dims);

  const LevelDims& dims() const { return dims_; }
  Index matrix_size() const { return dims_.matrix_size(); }
  Index lag_count() const { return dims_.generator_size(); }

  /// Generator position carried by cell (i, j).
  Index lag_of(Index i, Index j) const {
    return cell_lag_[static_cast<std::size_t>(i + j * matrix_size())];
  }
  Index cardinality(Index lag) const {
    return offsets_[static_cast<std::size_t>(lag) + 1] - offsets_[static_cast<std::size_t>(lag)];
  }
  /// Cells of one set as column-major flat indices (i + j * n).
  std::span<const std::int32_t> cells(Index lag) const;
  /// Column-major map cell -> lag, length n^2.
  std::span<const std::int32_t> cell_lags() const { return cell_lag_; }

 private:
  LevelDims dims_;
  std::vector<std::int32_t> cell_lag_;
  std::vector<std::int32_t> offsets_;
  std::vector<std::int32_t> cells_;
};

/// Shared, cached index sets for `dims`. Thread-safe.
std::shared_ptr<const LagIndexSets> lag_index_sets(const LevelDims& dims);

/// k x k Toeplitz matrix from the 2k-1 lags u(-(k-1)) ... u(k-1); entry (i, j) = u(j - i).
CMatrix toeplitz1(const CVector& u);

/// Multi-level Toeplitz matrix of a generator.
CMatrix toeplitz_d(const ToeplitzGenerator& gen);
/// Same, with index sets already at hand (they must match gen.dims()).
CMatrix toeplitz_d(const ToeplitzGenerator& gen, const LagIndexSets& sets);

/// Orthogonal projection onto the Toeplitz subspace, expressed as a generator:
/// each lag gets the mean of the cells that carry it.
ToeplitzGenerator toeplitz_adjoint_average(const CMatrix& m, const LagIndexSets& sets);

/// Largest within-set spread max |M(c) - mean_set| over all lag sets.
double max_lag_spread(const CMatrix& m, const LagIndexSets& sets);

/// Default cap on the number of entries of a materialized transforming matrix.
inline constexpr Index kTransformingMatrixEntryCap = Index{1} << 27;

/// Matrix W_check with W_check * vec(gen) == vec(W T(gen) W^H).
/// Column l sums the columns of conj(W) (x) W whose cells share lag l.
CMatrix transforming_matrix(const CMatrix& w, const LagIndexSets& sets,
                             Index max_entries = kTransformingMatrixEntryCap);

}  // namespace irscov

#endif  // IRSCOV_TOEPLITZ_HPP
