// SPDX-License-Identifier: Apache-2.0

// Downlink training: J slots per frame, the same operator W in every frame.
//
// The uplink variant (user pilots, BS combining) produces a received model of the
// same form y_t = W_u vec(H_u) + n_t with rows psi^T (x) g^H, so it reuses this
// module unchanged once W is built from the combining vectors.

#ifndef IRSCOV_TRAINING_HPP
#define IRSCOV_TRAINING_HPP

#include <vector>

#include "irscov/channel.hpp"
#include "irscov/rng.hpp"
#include "irscov/types.hpp"

namespace irscov {

/// J x NM training operator with rows f_j^T (x) psi_j^T.
struct SensingMatrix {
  CMatrix w;
  CMatrix precoders;  ///< N x J, column j is f_j
  CMatrix phases;     ///< M x J, column j is psi_j (unit modulus)

  Index slots() const { return w.rows(); }
};

SensingMatrix build_sensing_matrix(const ArrayGeometry& geom, Index j_slots, Rng& rng);

/// Row for slot (f, psi): f^T (x) psi^T.
CVector sensing_row(const CVector& f, const CVector& psi);

struct TrainingOutput {
  std::vector<CVector> frames;
  CMatrix sample_cov;
  double noise_var = 0.0;
};

/// Each frame redraws the path gains (angles fixed) and the noise, using a
/// per-frame substream of a seed taken from `rng`; frame t depends only on that
/// seed and t, so a longer run extends a shorter one.
TrainingOutput simulate_frames(const CMatrix& w, const PathSet& paths, const ArrayGeometry& geom, Index t_frames,
                               double noise_var, Rng& rng);

/// (1/T) sum y_t y_t^H
CMatrix sample_covariance(const std::vector<CVector>& frames);

/// W R_h W^H + sigma^2 I
CMatrix ideal_received_cov(const CMatrix& w, const CMatrix& rh, double noise_var);

/// Monte Carlo mean of 10 log10(||W hbar||^2 / J) over fresh realizations.
double mean_signal_power_db(const PathSet& paths, const ArrayGeometry& geom, const CMatrix& w, Rng& rng,
                            Index trials);

/// Mean of 10 log10(signal power per slot / noise_var) in dB.
double snr_of(const PathSet& paths, const ArrayGeometry& geom, const CMatrix& w, double noise_var, Rng& rng,
              Index trials);

/// Noise variance giving `snr_db` for the given mean per-slot signal power (dB).
double noise_var_for_snr(double signal_power_db, double snr_db);

}  // namespace irscov

#endif  // IRSCOV_TRAINING_HPP
