// SPDX-License-Identifier: Apache-2.0

// Low-rank PSD 3-level Toeplitz covariance reconstruction
//
//   min_V  1/2 ||R_y - W T(V) W^H||_F^2 + lambda tr(T(V))   s.t.  T(V) >= 0
//
// solved by a three-block ADMM over A (data fit + trace), V (Toeplitz
// consistency A = T(V)) and B (PSD cone, B = A).

#ifndef IRSCOV_ESTIMATOR_HPP
#define IRSCOV_ESTIMATOR_HPP

#include <string>
#include <vector>

#include "irscov/toeplitz.hpp"
#include "irscov/types.hpp"

namespace irscov {

struct AdmmConfig {
  double lambda = 0.0;
  /// Penalties. With `relative_penalties` they are multiplied by s^2, where s is
  /// the mean nonzero eigenvalue of W^H W, so the defaults are independent of
  /// the array size and the training power.
  double eta = 1.0;
  double rho = 0.5;
  bool relative_penalties = true;
  Index max_iters = 2000;
  double tol_primal = 1e-6;
  double tol_dual = 1e-6;

  void validate() const;
};

/// Penalties and regularizer in absolute units, as used by the update steps.
struct AdmmWeights {
  double eta = 1.0;
  double rho = 1.0;
  double lambda = 0.0;
  /// Coefficient of A in the A-subproblem: both quadratic penalties pull on A.
  double kappa() const { return eta + rho; }
};

/// Eigendecomposition of Xi = W^H W plus the back-projected observation.
struct EvdCache {
  CMatrix a1;       ///< unitary eigenvectors, eigenvalues ascending
  RVector a2;       ///< eigenvalues; numerically-null ones are exactly 0
  Index rank = 0;   ///< nonzero eigenvalues, occupying the trailing entries
  CMatrix wt_rhat_w;

  /// From an explicit Gram matrix Xi (Hermitian PSD).
  static EvdCache from_gram(const CMatrix& xi);
  static EvdCache from_sensing(const CMatrix& w);
  /// Sets wt_rhat_w = W^H R_y W.
  void bind(const CMatrix& w, const CMatrix& rhat_y);
  /// Mean nonzero eigenvalue (0 for Xi = 0).
  double mean_nonzero_eigenvalue() const;
};

struct ResidualRecord {
  double primal_toeplitz;  ///< ||A - T(V)|| / ||A||
  double primal_psd;       ///< ||B - A|| / ||A||
  double dual;             ///< ||A_k - A_{k-1}|| / ||A||
};

struct AdmmState {
  CMatrix a;
  CMatrix b;
  ToeplitzGenerator v;
  CMatrix upsilon;
  CMatrix lambda_dual;
  Index iter = 0;
  std::vector<ResidualRecord> residuals;

  explicit AdmmState(const LevelDims& dims);
};

/// Solves  Xi A Xi^H + kappa A = C  through the cached eigendecomposition.
/// Throws SolverError if any a2(i) a2(j) + kappa is below 1e-12 in magnitude.
CMatrix solve_a_equation(const EvdCache& cache, double kappa, const CMatrix& c);

/// Right-hand side C of the A-subproblem.
CMatrix a_update_rhs(const AdmmState& state, const EvdCache& cache, const AdmmWeights& weights);

CMatrix update_a(const AdmmState& state, const EvdCache& cache, const AdmmWeights& weights);

/// Per-lag mean of (Upsilon + eta A) / eta, using state.a as the fresh A.
ToeplitzGenerator update_v(const AdmmState& state, const AdmmWeights& weights, const LagIndexSets& sets);

/// PSD projection of A - Lambda / rho.
CMatrix update_b(const AdmmState& state, const AdmmWeights& weights);

/// Dual ascent on both constraints, using the fresh A, V and B in `state`.
void update_duals(AdmmState& state, const AdmmWeights& weights, const LagIndexSets& sets);
/// Same, with T(V) already formed.
void update_duals(AdmmState& state, const AdmmWeights& weights, const CMatrix& toeplitz_v);

/// 1/2 ||R_y - W X W^H||_F^2 + lambda tr(X)
double sdp_objective(const CMatrix& rhat_y, const CMatrix& w, const CMatrix& x, double lambda);

struct EstimateDiagnostics {
  Index iterations = 0;
  bool converged = false;
  Index best_iteration = 0;
  double lambda = 0.0;
  AdmmWeights weights;
  double objective_initial = 0.0;  ///< at A = B = 0, V = 0
  double objective_final = 0.0;
  std::vector<ResidualRecord> residuals;
  std::vector<std::string> warnings;
};

struct CcmEstimate {
  CMatrix rh;  ///< PSD projection of T(v)
  ToeplitzGenerator v;
  EstimateDiagnostics diagnostics;
};

/// `rhat_y` is J x J, `w` is J x NM with NM matching `dims`.
CcmEstimate estimate_ccm(const CMatrix& rhat_y, const CMatrix& w, const LevelDims& dims, const AdmmConfig& cfg);

/// Same, reusing a cache built with EvdCache::from_sensing(w).
CcmEstimate estimate_ccm(const CMatrix& rhat_y, const CMatrix& w, const LevelDims& dims, const AdmmConfig& cfg,
                         const EvdCache& xi_cache);

/// Default constant of the regularization rule.
inline constexpr double kDefaultLambdaConstant = 3e-4;

struct LambdaChoice {
  double lambda = 0.0;
  double u_bar = 0.0;           ///< c sqrt(r) ||W||_F^2 ||R_y||_2 max(sqrt(d), d)
  double delta_tilde = 0.0;     ///< r_e(R_y) log(T J) / T
  double effective_rank = 0.0;  ///< tr(R_y) / ||R_y||_2
};

/// lambda = u_bar / sqrt(rank_guess).
LambdaChoice select_lambda(const CMatrix& rhat_y, const CMatrix& w, Index t_frames, Index j_slots, Index rank_guess,
                           double c = kDefaultLambdaConstant);

}  // namespace irscov

#endif  // IRSCOV_ESTIMATOR_HPP
