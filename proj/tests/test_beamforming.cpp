// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "irscov/beamforming.hpp"
#include "irscov/errors.hpp"
#include "irscov/linalg.hpp"
#include "oracles.hpp"

using namespace irscov;

namespace {

CMatrix random_psd(Index m, Index rank, Rng& rng) {
  const CMatrix g = oracle::random_complex(m, rank, rng);
  return g * g.adjoint();
}

}  // namespace

TEST(ReduceCcm, SingleAntenna) {
  Rng rng = substream(31, {1});
  const CMatrix rh = random_psd(5, 2, rng);
  EXPECT_LT((reduce_ccm(rh, 1, 5).rbar - rh).norm(), 1e-14);
}

TEST(ReduceCcm, Identity) {
  EXPECT_LT((reduce_ccm(CMatrix::Identity(12, 12), 3, 4).rbar - 3.0 * CMatrix::Identity(4, 4)).norm(), 1e-15);
}

TEST(ReduceCcm, RankOneKronecker) {
  Rng rng = substream(31, {2});
  const CVector f = oracle::random_complex(3, 1, rng);
  const CVector g = oracle::random_complex(4, 1, rng);
  CVector fg(12);
  for (Index n = 0; n < 3; ++n) fg.segment(n * 4, 4) = f(n) * g;
  const CMatrix rbar = reduce_ccm(fg * fg.adjoint(), 3, 4).rbar;
  EXPECT_LT((rbar - f.squaredNorm() * g * g.adjoint()).norm(), 1e-13);
  EXPECT_THROW(reduce_ccm(CMatrix::Identity(12, 12), 5, 4), DimensionError);
}

TEST(ReduceCcm, GainIsMeanEffectivePower) {
  // psi^T Rbar psi^* = E ||psi^T H||^2 for H with E[vec(H) vec(H)^H] = R_h.
  Rng rng = substream(31, {3});
  const Index n = 2, m = 3;
  const CMatrix basis = oracle::random_complex(n * m, 2, rng);
  const CMatrix rh = basis * basis.adjoint();
  CVector psi(m);
  for (Index i = 0; i < m; ++i) psi(i) = std::polar(1.0, uniform(rng, 0, 2 * kPi));
  double direct = 0.0;
  for (Index k = 0; k < 2; ++k) {
    const CMatrix h = Eigen::Map<const CMatrix>(basis.col(k).data(), m, n);
    direct += (psi.transpose() * h).squaredNorm();
  }
  EXPECT_NEAR(quadratic_gain(reduce_ccm(rh, n, m).rbar, psi), direct, 1e-12 * direct);
}

TEST(Sdr, AllOnes) {
  const Index m = 6;
  const SdrSolution sol = sdr_phase_opt(CMatrix::Ones(m, m));
  EXPECT_NEAR(sol.value, 36.0, 36.0 * 1e-4);
  EXPECT_NEAR(sol.primal_value, 36.0, 36.0 * 1e-4);
  EXPECT_LT((sol.sdr_gram - CMatrix::Ones(m, m)).norm(), 1e-2);
}

TEST(Sdr, IdentityValueIsM) {
  const SdrSolution sol = sdr_phase_opt(CMatrix::Identity(5, 5));
  EXPECT_NEAR(sol.value, 5.0, 1e-3);
  EXPECT_NEAR(sol.primal_value, 5.0, 1e-3);
}

TEST(Sdr, GramIsFeasible) {
  Rng rng = substream(31, {4});
  const SdrSolution sol = sdr_phase_opt(random_psd(8, 3, rng));
  for (Index i = 0; i < 8; ++i) EXPECT_NEAR(std::abs(sol.sdr_gram(i, i) - 1.0), 0.0, 1e-12);
  EXPECT_GE(min_eigenvalue(sol.sdr_gram), -1e-9);
  EXPECT_GE(sol.value, sol.primal_value - 1e-9 * sol.value);
}

TEST(Sdr, BoundsExhaustiveQuantizedOptimum) {
  Rng rng = substream(31, {5});
  for (int rep = 0; rep < 20; ++rep) {
    const CMatrix r = random_psd(4, 1 + rep % 4, rng);
    const double opt = oracle::quantized_phase_optimum(r);
    const SdrSolution sol = sdr_phase_opt(r);
    EXPECT_GE(sol.value, opt * (1.0 - 1e-9)) << "rep " << rep;
    EXPECT_GE(opt, 0.95 * sol.value) << "rep " << rep;
  }
}

TEST(Randomization, AllOnesGram) {
  Rng rng = substream(31, {6});
  const Index m = 5;
  const CMatrix ones = CMatrix::Ones(m, m);
  const PhaseSolution sol = gaussian_randomization(ones, ones, 10, rng, 25.0);
  EXPECT_NEAR(sol.achieved_value, 25.0, 1e-9);
  for (Index i = 0; i < m; ++i) EXPECT_NEAR(sol.phases(i), 0.0, 1e-9);
}

TEST(Randomization, RankOneGramRecoversVector) {
  Rng rng = substream(31, {7});
  const Index m = 6;
  CVector v(m);
  for (Index i = 0; i < m; ++i) v(i) = std::polar(1.0, uniform(rng, -kPi, kPi));
  const CMatrix gram = v.conjugate() * v.transpose();
  const CMatrix r = random_psd(m, 2, rng);
  const PhaseSolution sol = gaussian_randomization(gram, r, 5, rng, quadratic_gain(r, v));
  const CVector psi = sol.psi();
  const cplx rot = psi(0) / v(0);
  EXPECT_LT((psi - rot * v).norm(), 1e-6);
  EXPECT_NEAR(sol.achieved_value, quadratic_gain(r, v), 1e-6 * sol.achieved_value);
}

TEST(Randomization, ReachesNinetyPercentOfQuantizedOptimum) {
  Rng rng = substream(31, {8});
  for (int rep = 0; rep < 20; ++rep) {
    const CMatrix r = random_psd(4, 1 + rep % 4, rng);
    const PhaseSolution sol = optimize_phases(r, 200, rng);
    EXPECT_GE(sol.achieved_value, 0.9 * oracle::quantized_phase_optimum(r)) << "rep " << rep;
    EXPECT_LE(sol.achieved_value, sol.sdr_value * (1.0 + 1e-9));
    EXPECT_EQ(sol.phases(0), 0.0);
  }
}

TEST(GaugePhases, Wraps) {
  RVector p(3);
  p << 1.0, 1.0 + 3.5, 1.0 - 0.5;
  const RVector g = gauge_phases(p);
  EXPECT_EQ(g(0), 0.0);
  EXPECT_NEAR(g(1), 3.5 - 2 * kPi, 1e-12);
  EXPECT_NEAR(g(2), -0.5, 1e-12);
}

TEST(Mrt, PowerAndOptimality) {
  Rng rng = substream(31, {9});
  const Index n = 4, m = 6;
  const CMatrix g = oracle::random_complex(m, n, rng);
  const CVector h = oracle::random_complex(m, 1, rng);
  const CVector psi = random_passive_baseline(m, rng);
  const double p_max = 2.5;
  const CVector f = mrt_precoder(h, g, psi, p_max);
  EXPECT_NEAR(f.squaredNorm(), p_max, 1e-12);
  const CVector e = effective_channel(h, g, psi);
  const double best = std::abs((e.transpose() * f).value());
  for (int k = 0; k < 1000; ++k) {
    CVector other = oracle::random_complex(n, 1, rng);
    other *= std::sqrt(p_max * uniform(rng, 0.0, 1.0)) / other.norm();
    EXPECT_LE(std::abs((e.transpose() * other).value()), best + 1e-12);
  }
}

TEST(Mrt, SingleAntenna) {
  CMatrix g(1, 1);
  g << cplx(0.3, 0.4);
  CVector h(1), psi(1);
  h << cplx(1.0, -1.0);
  psi << std::polar(1.0, 0.7);
  const CVector f = mrt_precoder(h, g, psi, 4.0);
  const CVector e = effective_channel(h, g, psi);
  EXPECT_NEAR(std::abs(f(0) - 2.0 * std::conj(e(0)) / std::abs(e(0))), 0.0, 1e-14);
}

TEST(Mrt, ZeroChannelIsDegenerate) {
  EXPECT_THROW(mrt_precoder(CVector::Zero(3), CMatrix::Ones(3, 2), CVector::Ones(3), 1.0), DegenerateInputError);
}

TEST(EffectiveChannel, MatchesMatrixProduct) {
  Rng rng = substream(31, {10});
  const CMatrix g = oracle::random_complex(5, 3, rng);
  const CVector h = oracle::random_complex(5, 1, rng);
  const CVector psi = random_passive_baseline(5, rng);
  const CMatrix row = h.adjoint() * psi.asDiagonal() * g;
  EXPECT_LT((effective_channel(h, g, psi) - row.transpose()).norm(), 1e-13);
}

TEST(Rate, ClosedForms) {
  EXPECT_EQ(achievable_rate(CVector::Zero(2), CMatrix::Ones(2, 2), CVector::Ones(2), CVector::Ones(2), 1.0), 0.0);
  // Scalar: log2(1 + P |h g|^2 / sigma^2)
  CMatrix g(1, 1);
  g << cplx(0.5, 0.5);
  CVector h(1);
  h << cplx(2.0, 0.0);
  const CVector psi = CVector::Ones(1);
  const double p = 3.0, s2 = 0.2;
  const CVector f = mrt_precoder(h, g, psi, p);
  EXPECT_NEAR(achievable_rate(h, g, psi, f, s2), std::log2(1.0 + p * std::norm(h(0) * g(0, 0)) / s2), 1e-12);
  // |e f|^2 = sigma^2 gives exactly one bit.
  const double gain = std::norm((effective_channel(h, g, psi).transpose() * f).value());
  EXPECT_NEAR(achievable_rate(h, g, psi, f, gain), 1.0, 1e-12);
  EXPECT_THROW(achievable_rate(h, g, psi, f, 0.0), StructuralError);
}

TEST(RandomPassive, UnitModulusAndReproducible) {
  Rng a = substream(31, {11}), b = substream(31, {11});
  const CVector x = random_passive_baseline(16, a);
  EXPECT_EQ(x, random_passive_baseline(16, b));
  for (Index i = 0; i < 16; ++i) EXPECT_NEAR(std::abs(x(i)), 1.0, 1e-15);
}

TEST(RandomPassive, MeanGainIsTrace) {
  Rng rng = substream(31, {12});
  const CMatrix r = random_psd(6, 2, rng);
  double acc = 0.0;
  const int draws = 10000;
  for (int k = 0; k < draws; ++k) acc += quadratic_gain(r, random_passive_baseline(6, rng));
  EXPECT_NEAR(acc / draws / r.trace().real(), 1.0, 0.03);
}

TEST(DbmToWatts, Reference) {
  EXPECT_DOUBLE_EQ(dbm_to_watts(30.0), 1.0);
  EXPECT_NEAR(dbm_to_watts(0.0), 1e-3, 1e-18);
}
