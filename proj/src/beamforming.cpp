// SPDX-License-Identifier: Apache-2.0

#include "irscov/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "irscov/errors.hpp"
#include "irscov/linalg.hpp"

namespace irscov {

ReducedCcm reduce_ccm(const CMatrix& rh, Index n_bs, Index m_irs) {
  if (n_bs < 1 || m_irs < 1) throw StructuralError("reduce_ccm: sizes must be >= 1");
  if (rh.rows() != n_bs * m_irs || rh.cols() != n_bs * m_irs)
    throw DimensionError("reduce_ccm: R_h is " + std::to_string(rh.rows()) + "x" + std::to_string(rh.cols()) +
                         ", expected " + std::to_string(n_bs * m_irs));
  CMatrix rbar = CMatrix::Zero(m_irs, m_irs);
  for (Index k = 0; k < n_bs; ++k) rbar += rh.block(k * m_irs, k * m_irs, m_irs, m_irs);
  return {hermitian_part(rbar)};
}

double quadratic_gain(const CMatrix& rbar, const CVector& psi) {
  return (psi.transpose() * rbar * psi.conjugate())(0, 0).real();
}

namespace {

// Unit-diagonal rescaling of a PSD matrix; zero diagonal entries map to the identity row/column.
CMatrix unit_diagonal(const CMatrix& z) {
  const Index m = z.rows();
  RVector d(m);
  for (Index i = 0; i < m; ++i) {
    const double zi = z(i, i).real();
    d(i) = zi > 0.0 ? 1.0 / std::sqrt(zi) : 0.0;
  }
  CMatrix v = d.asDiagonal() * z * d.asDiagonal();
  for (Index i = 0; i < m; ++i) v(i, i) = 1.0;
  return hermitian_part(v);
}

// Smallest shift t >= 0 such that Diag(y + t) - R >= 0.
RVector feasible_dual(const CMatrix& r, RVector y) {
  CMatrix s = -r;
  s.diagonal() += y.cast<cplx>();
  const double lo = min_eigenvalue(hermitian_part(s));
  if (lo < 0.0) y.array() += -lo;
  return y;
}

}  // namespace

SdrSolution sdr_phase_opt(const CMatrix& rbar, const SdrConfig& cfg) {
  if (rbar.rows() != rbar.cols() || rbar.rows() < 1) throw DimensionError("sdr_phase_opt: R must be square");
  const Index m = rbar.rows();
  const CMatrix r_h = hermitian_part(rbar);
  const double scale = std::max(std::abs(max_eigenvalue(r_h)), std::abs(min_eigenvalue(r_h)));
  SdrSolution out;
  if (!(scale > 0.0)) {
    out.sdr_gram = CMatrix::Identity(m, m);
    out.converged = true;
    return out;
  }
  const CMatrix r = r_h / scale;

  double mu = cfg.penalty;
  CMatrix z = CMatrix::Ones(m, m);
  CMatrix u = CMatrix::Zero(m, m);
  double best_upper = std::numeric_limits<double>::infinity();
  CMatrix best_gram = unit_diagonal(project_psd(CMatrix::Identity(m, m)));
  double best_primal = (r * best_gram).trace().real();
  for (Index k = 1; k <= cfg.max_iters; ++k) {
    CMatrix x = z - u + r / mu;
    x.diagonal().setOnes();
    const CMatrix z_prev = z;
    z = project_psd(x + u);
    u += x - z;
    out.iterations = k;

    const double primal_res = (x - z).norm() / std::sqrt(static_cast<double>(m));
    const double dual_res = mu * (z - z_prev).norm() / std::sqrt(static_cast<double>(m));
    // Residual balancing keeps both residuals within a factor 10 of each other.
    if (primal_res > 10.0 * dual_res) {
      mu *= 2.0;
      u /= 2.0;
    } else if (dual_res > 10.0 * primal_res) {
      mu /= 2.0;
      u *= 2.0;
    }

    if (k % cfg.check_every != 0 && k != cfg.max_iters) continue;
    // Stationarity in X: Diag(y) = R - mu U on the diagonal.
    RVector y(m);
    for (Index i = 0; i < m; ++i) y(i) = r(i, i).real() - mu * u(i, i).real();
    y = feasible_dual(r, y);
    const CMatrix gram = unit_diagonal(z);
    const double primal = (r * gram).trace().real();
    const double upper = y.sum();
    if (upper < best_upper) best_upper = upper;
    if (primal > best_primal) {
      best_primal = primal;
      best_gram = gram;
    }
    if (best_upper - best_primal <= cfg.tol * std::max(1.0, std::abs(best_upper))) {
      out.converged = true;
      break;
    }
  }
  out.sdr_gram = best_gram;
  out.primal_value = best_primal * scale;
  out.value = best_upper * scale;
  out.gap = out.value - out.primal_value;
  return out;
}

CVector PhaseSolution::psi() const {
  CVector out(phases.size());
  for (Index i = 0; i < phases.size(); ++i) out(i) = std::polar(1.0, phases(i));
  return out;
}

RVector gauge_phases(const RVector& phases) {
  RVector out = phases;
  if (out.size() == 0) return out;
  const double ref = phases(0);
  for (Index i = 0; i < out.size(); ++i) {
    double p = std::remainder(phases(i) - ref, 2.0 * kPi);
    if (p <= -kPi) p += 2.0 * kPi;
    out(i) = p;
  }
  out(0) = 0.0;
  return out;
}

PhaseSolution gaussian_randomization(const CMatrix& sdr_gram, const CMatrix& rbar, Index n_draws, Rng& rng,
                                     double sdr_value) {
  if (n_draws < 1) throw StructuralError("gaussian_randomization: need at least one draw");
  if (sdr_gram.rows() != rbar.rows() || sdr_gram.cols() != rbar.cols())
    throw DimensionError("gaussian_randomization: Gram and R differ in size");
  const Index m = rbar.rows();
  auto eig = hermitian_eigen(hermitian_part(sdr_gram));
  const RVector root = eig.values.cwiseMax(0.0).cwiseSqrt();
  const CMatrix factor = eig.vectors * root.asDiagonal();

  PhaseSolution best;
  best.sdr_value = sdr_value;
  best.n_randomizations = n_draws;
  best.achieved_value = -std::numeric_limits<double>::infinity();
  CVector z(m);
  RVector phases(m);
  CVector psi(m);
  for (Index d = 0; d < n_draws; ++d) {
    for (Index i = 0; i < m; ++i) z(i) = complex_normal(rng, 1.0);
    const CVector xi = factor * z;
    for (Index i = 0; i < m; ++i) {
      phases(i) = xi(i) == cplx{0.0, 0.0} ? 0.0 : -std::arg(xi(i));
      psi(i) = std::polar(1.0, phases(i));
    }
    const double value = quadratic_gain(rbar, psi);
    if (value > best.achieved_value) {
      best.achieved_value = value;
      best.phases = phases;
    }
  }
  best.phases = gauge_phases(best.phases);
  best.achieved_value = quadratic_gain(rbar, best.psi());
  return best;
}

PhaseSolution optimize_phases(const CMatrix& rbar, Index n_draws, Rng& rng, const SdrConfig& cfg) {
  const auto sdr = sdr_phase_opt(rbar, cfg);
  return gaussian_randomization(sdr.sdr_gram, rbar, n_draws, rng, sdr.value);
}

CVector effective_channel(const CVector& h, const CMatrix& g, const CVector& psi) {
  if (h.size() != g.rows() || psi.size() != g.rows())
    throw DimensionError("effective_channel: h, G and psi disagree on the IRS size");
  // (h^H Psi G)^T = G^T (psi o conj(h))
  return g.transpose() * psi.cwiseProduct(h.conjugate());
}

CVector mrt_precoder(const CVector& h, const CMatrix& g, const CVector& psi, double p_max) {
  if (!(p_max >= 0.0)) throw StructuralError("mrt_precoder: power budget must be >= 0");
  const CVector e = effective_channel(h, g, psi);
  const double nrm = e.norm();
  if (!(nrm > 0.0)) throw DegenerateInputError("mrt_precoder: zero effective channel");
  return std::sqrt(p_max) * e.conjugate() / nrm;
}

double achievable_rate(const CVector& h, const CMatrix& g, const CVector& psi, const CVector& f, double noise_var) {
  if (!(noise_var > 0.0)) throw StructuralError("achievable_rate: noise variance must be positive");
  const CVector e = effective_channel(h, g, psi);
  if (f.size() != e.size()) throw DimensionError("achievable_rate: precoder length mismatch");
  const double gain = std::norm((e.transpose() * f).value());
  return std::log2(1.0 + gain / noise_var);
}

CVector random_passive_baseline(Index m, Rng& rng) {
  if (m < 1) throw StructuralError("random_passive_baseline: need at least one element");
  CVector psi(m);
  for (Index i = 0; i < m; ++i) psi(i) = std::polar(1.0, uniform(rng, 0.0, 2.0 * kPi));
  return psi;
}

}  // namespace irscov
