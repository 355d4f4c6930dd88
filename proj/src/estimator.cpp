// SPDX-License-Identifier: Apache-2.0

#include "irscov/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "irscov/errors.hpp"
#include "irscov/linalg.hpp"

namespace irscov {

void AdmmConfig::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw StructuralError("AdmmConfig: lambda must be >= 0");
  if (!(eta > 0.0) || !(rho > 0.0)) throw StructuralError("AdmmConfig: penalties must be positive");
  if (max_iters < 1) throw StructuralError("AdmmConfig: max_iters must be >= 1");
  if (!(tol_primal > 0.0) || !(tol_dual > 0.0)) throw StructuralError("AdmmConfig: tolerances must be positive");
}

EvdCache EvdCache::from_gram(const CMatrix& xi) {
  auto eig = hermitian_eigen(hermitian_part(xi));
  EvdCache cache;
  cache.a1 = std::move(eig.vectors);
  cache.a2 = std::move(eig.values);
  const double top = cache.a2.size() > 0 ? cache.a2.cwiseAbs().maxCoeff() : 0.0;
  const double floor = 1e-10 * top;
  cache.rank = 0;
  for (Index i = 0; i < cache.a2.size(); ++i) {
    if (cache.a2(i) > floor) {
      ++cache.rank;
    } else {
      cache.a2(i) = 0.0;
    }
  }
  return cache;
}

EvdCache EvdCache::from_sensing(const CMatrix& w) { return from_gram(w.adjoint() * w); }

void EvdCache::bind(const CMatrix& w, const CMatrix& rhat_y) {
  if (w.rows() != rhat_y.rows() || rhat_y.rows() != rhat_y.cols() || w.cols() != a1.rows())
    throw DimensionError("EvdCache::bind: W, R_y and the cached Xi disagree in size");
  wt_rhat_w = hermitian_part(w.adjoint() * rhat_y * w);
}

double EvdCache::mean_nonzero_eigenvalue() const {
  if (rank == 0) return 0.0;
  return a2.tail(rank).sum() / static_cast<double>(rank);
}

AdmmState::AdmmState(const LevelDims& dims) : v(dims) {
  const Index n = dims.matrix_size();
  a = CMatrix::Zero(n, n);
  b = CMatrix::Zero(n, n);
  upsilon = CMatrix::Zero(n, n);
  lambda_dual = CMatrix::Zero(n, n);
}

CMatrix solve_a_equation(const EvdCache& cache, double kappa, const CMatrix& c) {
  const Index n = cache.a1.rows();
  if (c.rows() != n || c.cols() != n) throw DimensionError("solve_a_equation: C does not match Xi");
  constexpr double kMinDenominator = 1e-12;
  const Index r = cache.rank;
  const Index null_dim = n - r;
  const RVector range_eigs = cache.a2.tail(r);

  auto ill_posed = [&](double denom) {
    throw SolverError("A-update is ill-posed: denominator a2(i)a2(j)+kappa = " + std::to_string(denom) +
                      " (kappa = " + std::to_string(kappa) +
                      ")");
  };
  if (null_dim > 0 && std::abs(kappa) < kMinDenominator) ill_posed(kappa);
  RMatrix denom = range_eigs * range_eigs.transpose();
  denom.array() += kappa;
  if (r > 0) {
    const double worst = denom.cwiseAbs().minCoeff();
    if (worst < kMinDenominator) ill_posed(worst);
  }

  if (null_dim == 0) {
    const CMatrix c1 = cache.a1.adjoint() * c * cache.a1;
    const CMatrix a3 = c1.cwiseQuotient(denom.cast<cplx>());
    return cache.a1 * a3 * cache.a1.adjoint();
  }
  // A1 = [U0 Ur] with a2 = 0 on U0, so every denominator touching U0 is kappa:
  // A = C / kappa + Ur ((1/denom - 1/kappa) o Ur^H C Ur) Ur^H.
  CMatrix out = c / kappa;
  if (r == 0) return out;
  const auto ur = cache.a1.rightCols(r);
  CMatrix c1 = ur.adjoint() * c * ur;
  const RMatrix correction = denom.cwiseInverse().array() - 1.0 / kappa;
  c1.array() *= correction.cast<cplx>().array();
  out.noalias() += ur * c1 * ur.adjoint();
  return out;
}

CMatrix a_update_rhs(const AdmmState& state, const EvdCache& cache, const AdmmWeights& weights) {
  const auto sets = lag_index_sets(state.v.dims());
  CMatrix c = weights.eta * toeplitz_d(state.v, *sets) + weights.rho * state.b + cache.wt_rhat_w - state.upsilon +
              state.lambda_dual;
  c.diagonal().array() -= weights.lambda;
  return c;
}

CMatrix update_a(const AdmmState& state, const EvdCache& cache, const AdmmWeights& weights) {
  return hermitian_part(solve_a_equation(cache, weights.kappa(), a_update_rhs(state, cache, weights)));
}

ToeplitzGenerator update_v(const AdmmState& state, const AdmmWeights& weights, const LagIndexSets& sets) {
  const CMatrix delta = state.upsilon + weights.eta * state.a;
  auto gen = toeplitz_adjoint_average(delta, sets);
  gen.data() /= weights.eta;
  return gen;
}

CMatrix update_b(const AdmmState& state, const AdmmWeights& weights) {
  return project_psd(state.a - state.lambda_dual / weights.rho);
}

void update_duals(AdmmState& state, const AdmmWeights& weights, const LagIndexSets& sets) {
  update_duals(state, weights, toeplitz_d(state.v, sets));
}

void update_duals(AdmmState& state, const AdmmWeights& weights, const CMatrix& toeplitz_v) {
  state.upsilon = hermitian_part(state.upsilon + weights.eta * (state.a - toeplitz_v));
  state.lambda_dual = hermitian_part(state.lambda_dual + weights.rho * (state.b - state.a));
}

double sdp_objective(const CMatrix& rhat_y, const CMatrix& w, const CMatrix& x, double lambda) {
  const CMatrix fit = rhat_y - w * x * w.adjoint();
  return 0.5 * fit.squaredNorm() + lambda * x.trace().real();
}

CcmEstimate estimate_ccm(const CMatrix& rhat_y, const CMatrix& w, const LevelDims& dims, const AdmmConfig& cfg) {
  if (w.cols() != dims.matrix_size())
    throw DimensionError("estimate_ccm: W has " + std::to_string(w.cols()) + " columns, dims imply " +
                         std::to_string(dims.matrix_size()));
  return estimate_ccm(rhat_y, w, dims, cfg, EvdCache::from_sensing(w));
}

CcmEstimate estimate_ccm(const CMatrix& rhat_y, const CMatrix& w, const LevelDims& dims, const AdmmConfig& cfg,
                         const EvdCache& xi_cache) {
  cfg.validate();
  const Index n = dims.matrix_size();
  if (w.cols() != n)
    throw DimensionError("estimate_ccm: W has " + std::to_string(w.cols()) + " columns, dims imply " +
                         std::to_string(n));
  if (rhat_y.rows() != w.rows() || rhat_y.cols() != w.rows())
    throw DimensionError("estimate_ccm: R_y must be " + std::to_string(w.rows()) + "x" + std::to_string(w.rows()));
  if (xi_cache.a1.rows() != n) throw DimensionError("estimate_ccm: cache was built for a different W");

  EstimateDiagnostics diag;
  diag.lambda = cfg.lambda;
  CMatrix ry = rhat_y;
  const double asym = (rhat_y - rhat_y.adjoint()).norm();
  if (asym > 1e-8 * std::max(rhat_y.norm(), std::numeric_limits<double>::min()))
    diag.warnings.push_back("R_y is not Hermitian (asymmetry " + std::to_string(asym / rhat_y.norm()) +
                            "); symmetrized");
  ry = hermitian_part(ry);
  diag.objective_initial = 0.5 * ry.squaredNorm();

  const double scale = ry.norm();
  if (scale == 0.0) {
    diag.converged = true;
    return {CMatrix::Zero(n, n), ToeplitzGenerator(dims), std::move(diag)};
  }
  // Work on R_y / ||R_y||; the problem is homogeneous, so the solution rescales.
  ry /= scale;
  EvdCache cache = xi_cache;
  cache.bind(w, ry);

  const double s = cache.mean_nonzero_eigenvalue();
  const double penalty_unit = cfg.relative_penalties ? s * s : 1.0;
  AdmmWeights weights{cfg.eta * penalty_unit, cfg.rho * penalty_unit, cfg.lambda / scale};
  diag.weights = {weights.eta, weights.rho, cfg.lambda};

  const auto sets_ptr = lag_index_sets(dims);
  const LagIndexSets& sets = *sets_ptr;

  AdmmState state(dims);
  {
    const double wf2 = w.squaredNorm();
    state.v = toeplitz_adjoint_average(cache.wt_rhat_w, sets);
    state.v.data() /= wf2;
    state.a = toeplitz_d(state.v, sets);
    state.b = state.a;
  }
  const double floor = 1e-14 * (1.0 + state.a.norm());

  ToeplitzGenerator best_v = state.v;
  double best_score = std::numeric_limits<double>::infinity();
  CMatrix a_prev = state.a;
  for (Index k = 1; k <= cfg.max_iters; ++k) {
    state.a = update_a(state, cache, weights);
    state.v = update_v(state, weights, sets);
    state.b = update_b(state, weights);
    const CMatrix tv = toeplitz_d(state.v, sets);
    update_duals(state, weights, tv);
    state.iter = k;

    const double na = std::max(state.a.norm(), floor);
    ResidualRecord rec{(state.a - tv).norm() / na, (state.b - state.a).norm() / na, (state.a - a_prev).norm() / na};
    state.residuals.push_back(rec);
    a_prev = state.a;

    const double score = std::max({rec.primal_toeplitz, rec.primal_psd, rec.dual});
    if (score < best_score) {
      best_score = score;
      best_v = state.v;
      diag.best_iteration = k;
    }
    if (rec.primal_toeplitz <= cfg.tol_primal && rec.primal_psd <= cfg.tol_primal && rec.dual <= cfg.tol_dual) {
      diag.converged = true;
      break;
    }
  }
  diag.iterations = state.iter;
  if (!diag.converged)
    diag.warnings.push_back("ADMM did not converge in " + std::to_string(cfg.max_iters) +
                            " iterations; returning best iterate " + std::to_string(diag.best_iteration));

  ToeplitzGenerator v_out = diag.converged ? state.v : best_v;
  v_out.data() *= scale;
  CMatrix rh = project_psd(toeplitz_d(v_out, sets));
  diag.objective_final = sdp_objective(hermitian_part(rhat_y), w, rh, cfg.lambda);
  diag.residuals = std::move(state.residuals);
  return {std::move(rh), std::move(v_out), std::move(diag)};
}

LambdaChoice select_lambda(const CMatrix& rhat_y, const CMatrix& w, Index t_frames, Index j_slots, Index rank_guess,
                           double c) {
  if (t_frames < 1) throw StructuralError("select_lambda: t_frames must be >= 1");
  if (j_slots < 1) throw StructuralError("select_lambda: j_slots must be >= 1");
  if (rank_guess < 1) throw StructuralError("select_lambda: rank_guess must be >= 1");
  LambdaChoice out;
  const double spectral = max_eigenvalue(hermitian_part(rhat_y));
  if (!(spectral > 0.0)) return out;
  out.effective_rank = rhat_y.trace().real() / spectral;
  const double t = static_cast<double>(t_frames);
  out.delta_tilde = out.effective_rank * std::log(t * static_cast<double>(j_slots)) / t;
  const double envelope = std::max(std::sqrt(out.delta_tilde), out.delta_tilde);
  const double root_r = std::sqrt(static_cast<double>(rank_guess));
  out.u_bar = c * root_r * w.squaredNorm() * spectral * envelope;
  out.lambda = out.u_bar / root_r;
  return out;
}

}  // namespace irscov
