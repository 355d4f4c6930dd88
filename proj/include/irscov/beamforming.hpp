// SPDX-License-Identifier: Apache-2.0

// Two-timescale beamforming: IRS phases from the reduced covariance (long term),
// MRT precoding from the instantaneous effective channel (short term).

#ifndef IRSCOV_BEAMFORMING_HPP
#define IRSCOV_BEAMFORMING_HPP

#include <cmath>

#include "irscov/rng.hpp"
#include "irscov/types.hpp"

namespace irscov {

/// E[H H^H] for the M x N cascade channel.
struct ReducedCcm {
  CMatrix rbar;
};

/// Sums the N diagonal M x M blocks of the NM x NM cascade covariance.
ReducedCcm reduce_ccm(const CMatrix& rh, Index n_bs, Index m_irs);

/// psi^T R psi^*, the mean effective-channel power for reflection vector psi.
double quadratic_gain(const CMatrix& rbar, const CVector& psi);

struct SdrConfig {
  Index max_iters = 2000;
  double tol = 1e-4;        ///< relative duality gap and residual target
  double penalty = 1.0;     ///< initial ADMM penalty, relative to ||R||_2
  Index check_every = 10;   ///< iterations between certificate evaluations
};

/// Relaxation of  max psi^T R psi^*  s.t. |psi_m| = 1  over sdr_gram = psi^* psi^T.
struct SdrSolution {
  CMatrix sdr_gram;            ///< PSD with unit diagonal
  double value = 0.0;          ///< certified upper bound sum(y) with Diag(y) - R >= 0
  double primal_value = 0.0;   ///< Tr(R sdr_gram)
  double gap = 0.0;            ///< value - primal_value
  Index iterations = 0;
  bool converged = false;
};

/// Splitting between the unit-diagonal affine set and the PSD cone.
SdrSolution sdr_phase_opt(const CMatrix& rbar, const SdrConfig& cfg = {});

struct PhaseSolution {
  RVector phases;  ///< psi(m) = exp(j phases(m)); phases(0) = 0
  double sdr_value = 0.0;
  double achieved_value = 0.0;  ///< psi^T R psi^*
  Index n_randomizations = 0;

  CVector psi() const;
};

/// Wraps phase angles into (-pi, pi] after rotating so that entry 0 has zero phase.
RVector gauge_phases(const RVector& phases);

/// Draws xi ~ CN(0, sdr_gram), rounds psi = conj(xi / |xi|) and keeps the best
/// candidate (ties resolved toward the earliest draw).
PhaseSolution gaussian_randomization(const CMatrix& sdr_gram, const CMatrix& rbar, Index n_draws, Rng& rng,
                                     double sdr_value = 0.0);

/// sdr_phase_opt followed by gaussian_randomization.
PhaseSolution optimize_phases(const CMatrix& rbar, Index n_draws, Rng& rng, const SdrConfig& cfg = {});

/// Effective channel row h^H Psi G = psi^T diag(h^H) G, as an N-vector.
CVector effective_channel(const CVector& h, const CMatrix& g, const CVector& psi);

/// f = sqrt(p_max) (h^H Psi G)^H / ||h^H Psi G||
CVector mrt_precoder(const CVector& h, const CMatrix& g, const CVector& psi, double p_max);

/// log2(1 + |h^H Psi G f|^2 / noise_var)
double achievable_rate(const CVector& h, const CMatrix& g, const CVector& psi, const CVector& f, double noise_var);

/// Phases i.i.d. uniform on [0, 2 pi).
CVector random_passive_baseline(Index m, Rng& rng);

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

}  // namespace irscov

#endif  // IRSCOV_BEAMFORMING_HPP
