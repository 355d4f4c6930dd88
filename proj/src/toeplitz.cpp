// SPDX-License-Identifier: Apache-2.0

#include "irscov/toeplitz.hpp"

#include <map>
#include <mutex>
#include <string>

#include "irscov/errors.hpp"

namespace irscov {

LevelDims::LevelDims(std::vector<Index> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty() || levels() > kMaxLevels)
    throw StructuralError("LevelDims: between 1 and 3 levels are supported, got " +
                          std::to_string(sizes_.size()));
  for (Index s : sizes_) {
    if (s < 1) throw StructuralError("LevelDims: level sizes must be >= 1");
    if (s > kMaxMatrixSize || matrix_size_ * s > kMaxMatrixSize)
      throw StructuralError("LevelDims: matrix dimension exceeds " + std::to_string(kMaxMatrixSize));
    matrix_size_ *= s;
    generator_size_ *= 2 * s - 1;
  }
}

Index LevelDims::flat_lag(std::span<const Index> lags) const {
  if (static_cast<Index>(lags.size()) != levels())
    throw DimensionError("flat_lag: expected one lag per level");
  Index flat = 0;
  for (Index k = 0; k < levels(); ++k) {
    const Index lag = lags[static_cast<std::size_t>(k)];
    if (lag <= -size(k) || lag >= size(k)) throw DimensionError("flat_lag: lag out of range");
    flat = flat * extent(k) + (lag + size(k) - 1);
  }
  return flat;
}

std::vector<Index> LevelDims::lags_of(Index flat) const {
  std::vector<Index> lags(sizes_.size());
  for (Index k = levels() - 1; k >= 0; --k) {
    lags[static_cast<std::size_t>(k)] = flat % extent(k) - (size(k) - 1);
    flat /= extent(k);
  }
  return lags;
}

Index LevelDims::lag_of_entry(Index i, Index j) const {
  // Walk levels fastest-first, peeling off per-level digits of i and j.
  Index flat = 0;
  Index stride = 1;
  for (Index k = levels() - 1; k >= 0; --k) {
    const Index s = size(k);
    const Index lag = j % s - i % s;
    flat += (lag + s - 1) * stride;
    stride *= extent(k);
    i /= s;
    j /= s;
  }
  return flat;
}

ToeplitzGenerator::ToeplitzGenerator(LevelDims dims)
    : dims_(std::move(dims)), data_(CVector::Zero(dims_.generator_size())) {}

ToeplitzGenerator::ToeplitzGenerator(LevelDims dims, CVector data)
    : dims_(std::move(dims)), data_(std::move(data)) {
  if (data_.size() != dims_.generator_size())
    throw DimensionError("ToeplitzGenerator: data length " + std::to_string(data_.size()) +
                         " does not match generator size " + std::to_string(dims_.generator_size()));
}

bool ToeplitzGenerator::is_conjugate_symmetric(double tol) const {
  // Negating every lag reverses the flat lag-major order.
  const Index g = data_.size();
  for (Index l = 0; l < g; ++l)
    if (std::abs(data_(g - 1 - l) - std::conj(data_(l))) > tol) return false;
  return true;
}

LagIndexSets::LagIndexSets(LevelDims dims) : dims_(std::move(dims)) {
  const Index n = dims_.matrix_size();
  const Index g = dims_.generator_size();
  cell_lag_.resize(static_cast<std::size_t>(n * n));
  std::vector<std::int32_t> counts(static_cast<std::size_t>(g), 0);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      const auto lag = static_cast<std::int32_t>(dims_.lag_of_entry(i, j));
      cell_lag_[static_cast<std::size_t>(i + j * n)] = lag;
      ++counts[static_cast<std::size_t>(lag)];
    }
  offsets_.assign(static_cast<std::size_t>(g) + 1, 0);
  for (Index l = 0; l < g; ++l)
    offsets_[static_cast<std::size_t>(l) + 1] = offsets_[static_cast<std::size_t>(l)] + counts[static_cast<std::size_t>(l)];
  cells_.resize(cell_lag_.size());
  std::vector<std::int32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t c = 0; c < cell_lag_.size(); ++c)
    cells_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(cell_lag_[c])]++)] = static_cast<std::int32_t>(c);
}

std::span<const std::int32_t> LagIndexSets::cells(Index lag) const {
  const auto b = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(lag)]);
  return std::span<const std::int32_t>(cells_).subspan(b, static_cast<std::size_t>(cardinality(lag)));
}

std::shared_ptr<const LagIndexSets> lag_index_sets(const LevelDims& dims) {
  static std::mutex mutex;
  static std::map<std::vector<Index>, std::shared_ptr<const LagIndexSets>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[dims.sizes()];
  if (!slot) slot = std::make_shared<const LagIndexSets>(dims);
  return slot;
}

CMatrix toeplitz1(const CVector& u) {
  if (u.size() < 1 || u.size() % 2 == 0)
    throw StructuralError("toeplitz1: generator length must be odd and >= 1, got " + std::to_string(u.size()));
  return toeplitz_d(ToeplitzGenerator(LevelDims({(u.size() + 1) / 2}), u));
}

CMatrix toeplitz_d(const ToeplitzGenerator& gen) { return toeplitz_d(gen, *lag_index_sets(gen.dims())); }

CMatrix toeplitz_d(const ToeplitzGenerator& gen, const LagIndexSets& sets) {
  if (!(gen.dims() == sets.dims())) throw DimensionError("toeplitz_d: generator and index sets disagree on dims");
  const Index n = sets.matrix_size();
  const auto lags = sets.cell_lags();
  CMatrix out(n, n);
  cplx* dst = out.data();
  for (std::size_t c = 0; c < lags.size(); ++c) dst[c] = gen.data()(lags[c]);
  return out;
}

ToeplitzGenerator toeplitz_adjoint_average(const CMatrix& m, const LagIndexSets& sets) {
  const Index n = sets.matrix_size();
  if (m.rows() != n || m.cols() != n)
    throw DimensionError("toeplitz_adjoint_average: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", index sets expect " + std::to_string(n));
  // Sum deviations from the first cell of each set, so an exactly Toeplitz
  // input comes back bit for bit.
  ToeplitzGenerator gen(sets.dims());
  CVector& out = gen.data();
  CVector dev = CVector::Zero(out.size());
  const cplx* src = m.data();
  for (Index l = 0; l < out.size(); ++l) out(l) = src[sets.cells(l).front()];
  const auto lags = sets.cell_lags();
  for (std::size_t c = 0; c < lags.size(); ++c) dev(lags[c]) += src[c] - out(lags[c]);
  for (Index l = 0; l < out.size(); ++l) out(l) += dev(l) / static_cast<double>(sets.cardinality(l));
  return gen;
}

double max_lag_spread(const CMatrix& m, const LagIndexSets& sets) {
  const auto mean = toeplitz_adjoint_average(m, sets);
  const auto lags = sets.cell_lags();
  const cplx* src = m.data();
  double worst = 0.0;
  for (std::size_t c = 0; c < lags.size(); ++c) worst = std::max(worst, std::abs(src[c] - mean.data()(lags[c])));
  return worst;
}

CMatrix transforming_matrix(const CMatrix& w, const LagIndexSets& sets, Index max_entries) {
  const Index n = sets.matrix_size();
  if (w.cols() != n)
    throw DimensionError("transforming_matrix: W has " + std::to_string(w.cols()) + " columns, expected " +
                         std::to_string(n));
  const Index jj = w.rows() * w.rows();
  const Index g = sets.lag_count();
  if (jj > max_entries / g)
    throw SolverError("transforming_matrix: " + std::to_string(jj) + "x" + std::to_string(g) +
                      " exceeds the entry cap " + std::to_string(max_entries));
  CMatrix out = CMatrix::Zero(jj, g);
  const Index rows = w.rows();
  for (Index col = 0; col < n; ++col) {
    const CVector wj_conj = w.col(col).conjugate();
    for (Index row = 0; row < n; ++row) {
      const Index lag = sets.lag_of(row, col);
      // Column (row, col) of conj(W) (x) W is vec(W(:,row) W(:,col)^H).
      Eigen::Map<CMatrix> dst(out.col(lag).data(), rows, rows);
      dst.noalias() += w.col(row) * wj_conj.transpose();
    }
  }
  return out;
}

}  // namespace irscov
