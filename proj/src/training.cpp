// SPDX-License-Identifier: Apache-2.0

#include "irscov/training.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "irscov/errors.hpp"

namespace irscov {

CVector sensing_row(const CVector& f, const CVector& psi) {
  CVector row(f.size() * psi.size());
  for (Index n = 0; n < f.size(); ++n) row.segment(n * psi.size(), psi.size()) = f(n) * psi;
  return row;
}

SensingMatrix build_sensing_matrix(const ArrayGeometry& geom, Index j_slots, Rng& rng) {
  geom.validate();
  if (j_slots < 1) throw StructuralError("build_sensing_matrix: need at least one slot");
  const Index n = geom.n_bs;
  const Index m = geom.irs_elements();
  SensingMatrix s;
  s.w.resize(j_slots, n * m);
  s.precoders.resize(n, j_slots);
  s.phases.resize(m, j_slots);
  const double f_var = 1.0 / static_cast<double>(n);
  // Slot-by-slot draws: the first J rows do not depend on the total slot count.
  for (Index j = 0; j < j_slots; ++j) {
    for (Index k = 0; k < n; ++k) s.precoders(k, j) = complex_normal(rng, f_var);
    for (Index k = 0; k < m; ++k) s.phases(k, j) = std::polar(1.0, uniform(rng, 0.0, 2.0 * kPi));
    s.w.row(j) = sensing_row(s.precoders.col(j), s.phases.col(j)).transpose();
  }
  return s;
}

TrainingOutput simulate_frames(const CMatrix& w, const PathSet& paths, const ArrayGeometry& geom, Index t_frames,
                               double noise_var, Rng& rng) {
  if (t_frames < 1) throw StructuralError("simulate_frames: need at least one frame");
  if (!(noise_var >= 0.0)) throw StructuralError("simulate_frames: noise variance must be >= 0");
  if (w.cols() != geom.cascade_size())
    throw DimensionError("simulate_frames: W has " + std::to_string(w.cols()) + " columns, channel has " +
                         std::to_string(geom.cascade_size()));
  const std::uint64_t base = rng();
  TrainingOutput out;
  out.noise_var = noise_var;
  out.frames.reserve(static_cast<std::size_t>(t_frames));
  for (Index t = 0; t < t_frames; ++t) {
    Rng frame_rng = substream(base, {static_cast<std::uint64_t>(t)});
    const auto real = sample_realization(paths, geom, frame_rng);
    CVector y = w * real.hbar;
    for (Index j = 0; j < y.size(); ++j) y(j) += complex_normal(frame_rng, noise_var);
    out.frames.push_back(std::move(y));
  }
  out.sample_cov = sample_covariance(out.frames);
  return out;
}

CMatrix sample_covariance(const std::vector<CVector>& frames) {
  if (frames.empty()) throw StructuralError("sample_covariance: no frames");
  const Index j = frames.front().size();
  CMatrix stacked(j, static_cast<Index>(frames.size()));
  for (std::size_t t = 0; t < frames.size(); ++t) {
    if (frames[t].size() != j) throw DimensionError("sample_covariance: frames differ in length");
    stacked.col(static_cast<Index>(t)) = frames[t];
  }
  CMatrix cov = stacked * stacked.adjoint() / static_cast<double>(frames.size());
  return (cov + cov.adjoint()) * 0.5;
}

CMatrix ideal_received_cov(const CMatrix& w, const CMatrix& rh, double noise_var) {
  if (rh.rows() != rh.cols() || w.cols() != rh.rows())
    throw DimensionError("ideal_received_cov: W is " + std::to_string(w.rows()) + "x" + std::to_string(w.cols()) +
                         ", R_h is " + std::to_string(rh.rows()) + "x" + std::to_string(rh.cols()));
  CMatrix ry = w * rh * w.adjoint();
  ry = (ry + ry.adjoint()) * 0.5;
  ry.diagonal().array() += noise_var;
  return ry;
}

double mean_signal_power_db(const PathSet& paths, const ArrayGeometry& geom, const CMatrix& w, Rng& rng,
                            Index trials) {
  if (trials < 1) throw StructuralError("mean_signal_power_db: need at least one trial");
  double acc = 0.0;
  for (Index k = 0; k < trials; ++k) {
    const auto real = sample_realization(paths, geom, rng);
    const double power = (w * real.hbar).squaredNorm() / static_cast<double>(w.rows());
    if (!(power > 0.0)) throw DegenerateInputError("snr: zero received signal power, SNR undefined");
    acc += 10.0 * std::log10(power);
  }
  return acc / static_cast<double>(trials);
}

double snr_of(const PathSet& paths, const ArrayGeometry& geom, const CMatrix& w, double noise_var, Rng& rng,
              Index trials) {
  if (!(noise_var > 0.0)) throw DegenerateInputError("snr: noise variance must be positive");
  return mean_signal_power_db(paths, geom, w, rng, trials) - 10.0 * std::log10(noise_var);
}

double noise_var_for_snr(double signal_power_db, double snr_db) {
  return std::pow(10.0, (signal_power_db - snr_db) / 10.0);
}

}  // namespace irscov
