// SPDX-License-Identifier: Apache-2.0

#include "irscov/selftest.hpp"

#include <cmath>
#include <exception>
#include <functional>

#include <fmt/format.h>

#include "irscov/beamforming.hpp"
#include "irscov/channel.hpp"
#include "irscov/csv.hpp"
#include "irscov/estimator.hpp"
#include "irscov/linalg.hpp"
#include "irscov/metrics.hpp"
#include "irscov/rng.hpp"
#include "irscov/toeplitz.hpp"
#include "irscov/training.hpp"

namespace irscov {

namespace {

struct Verdict {
  bool passed;
  std::string detail;
};

Verdict bound(const char* what, double value, double limit) {
  return {value <= limit, fmt::format("{} = {:.3e} (limit {:.1e})", what, value, limit)};
}

CMatrix random_complex(Index rows, Index cols, Rng& rng) {
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = complex_normal(rng, 1.0);
  return m;
}

ToeplitzGenerator random_hermitian_generator(const LevelDims& dims, Rng& rng) {
  ToeplitzGenerator gen(dims);
  const Index g = dims.generator_size();
  for (Index f = 0; f < g; ++f) gen.data()(f) = complex_normal(rng, 1.0);
  for (Index f = 0; f < g; ++f) {
    const cplx avg = 0.5 * (gen.data()(f) + std::conj(gen.data()(g - 1 - f)));
    gen.data()(f) = avg;
    gen.data()(g - 1 - f) = std::conj(avg);
  }
  return gen;
}

PathSet small_paths(Rng& rng) {
  PathSet paths;
  for (int l = 0; l < 2; ++l)
    paths.bs_irs.push_back({uniform(rng, -kPi, kPi), uniform(rng, 0.0, kPi), uniform(rng, -kPi, kPi), 1.0 + l});
  paths.irs_user.push_back({uniform(rng, 0.0, kPi), uniform(rng, -kPi, kPi), 1.0});
  return paths;
}

}  // namespace

std::vector<SelftestCheck> run_selftest(std::uint64_t seed) {
  std::vector<std::pair<std::string, std::function<Verdict(Rng&)>>> checks;

  checks.emplace_back("toeplitz generator round trip", [](Rng& rng) {
    const LevelDims dims = LevelDims::three(2, 3, 3);
    const auto sets = lag_index_sets(dims);
    const ToeplitzGenerator gen = random_hermitian_generator(dims, rng);
    const ToeplitzGenerator back = toeplitz_adjoint_average(toeplitz_d(gen, *sets), *sets);
    return bound("max |V - avg(T(V))|", (back.data() - gen.data()).cwiseAbs().maxCoeff(), 1e-12);
  });

  checks.emplace_back("transforming matrix identity", [](Rng& rng) {
    const LevelDims dims = LevelDims::three(2, 2, 3);
    const auto sets = lag_index_sets(dims);
    const CMatrix w = random_complex(7, dims.matrix_size(), rng);
    const ToeplitzGenerator gen = random_hermitian_generator(dims, rng);
    const CVector lhs = transforming_matrix(w, *sets) * gen.data();
    const CVector rhs = vec(w * toeplitz_d(gen, *sets) * w.adjoint());
    return bound("relative error", (lhs - rhs).norm() / rhs.norm(), 1e-10);
  });

  checks.emplace_back("ground-truth CCM structure", [](Rng& rng) {
    const ArrayGeometry geom{2, 3, 3, 0.5};
    const PathSet paths = small_paths(rng);
    const GroundTruthCcm truth = true_ccm(paths, geom);
    const auto sets = lag_index_sets(geom.ccm_dims());
    const double scale = truth.rh.trace().real();
    const bool ok = (truth.rh - truth.rh.adjoint()).norm() <= 1e-12 * scale &&
                    min_eigenvalue(truth.rh) >= -1e-10 * scale &&
                    numerical_rank(truth.rh, 1e-9) <= truth.rank &&
                    max_lag_spread(truth.rh, *sets) < 1e-10 * scale;
    return Verdict{ok, fmt::format("rank {} of at most {}", numerical_rank(truth.rh, 1e-9), truth.rank)};
  });

  checks.emplace_back("A-subproblem solve", [](Rng& rng) {
    const LevelDims dims = LevelDims::three(2, 2, 2);
    const CMatrix w = random_complex(5, dims.matrix_size(), rng);
    const EvdCache cache = EvdCache::from_sensing(w);
    const CMatrix c = hermitian_part(random_complex(8, 8, rng));
    const double kappa = 0.7;
    const CMatrix xi = w.adjoint() * w;
    const CMatrix a = solve_a_equation(cache, kappa, c);
    return bound("relative residual", (xi * a * xi.adjoint() + kappa * a - c).norm() / c.norm(), 1e-8);
  });

  checks.emplace_back("noise-free recovery", [](Rng& rng) {
    const ArrayGeometry geom{2, 2, 2, 0.5};
    PathSet paths;
    paths.bs_irs.push_back({0.4, 1.1, -0.7, 1.0});
    paths.bs_irs.push_back({-1.2, 2.0, 0.9, 0.6});
    paths.irs_user.push_back({0.8, 0.3, 1.0});
    const GroundTruthCcm truth = true_ccm(paths, geom);
    const CMatrix w = build_sensing_matrix(geom, 12, rng).w;
    AdmmConfig cfg;
    cfg.max_iters = 5000;
    cfg.tol_primal = cfg.tol_dual = 1e-8;
    const CcmEstimate est = estimate_ccm(w * truth.rh * w.adjoint(), w, geom.ccm_dims(), cfg);
    return bound("relative error", relative_error(est.rh, truth.rh), 0.05);
  });

  checks.emplace_back("SDR bound and randomization", [](Rng& rng) {
    const CMatrix g = random_complex(4, 4, rng);
    const CMatrix rbar = g * g.adjoint();
    const PhaseSolution sol = optimize_phases(rbar, 100, rng);
    const bool ok = sol.achieved_value <= sol.sdr_value * (1.0 + 1e-6) && sol.achieved_value > 0.0;
    return Verdict{ok, fmt::format("achieved {:.4g} of bound {:.4g}", sol.achieved_value, sol.sdr_value)};
  });

  checks.emplace_back("REM of identical covariance", [](Rng& rng) {
    const CMatrix g = random_complex(6, 3, rng);
    const CMatrix r = g * g.adjoint();
    return bound("|REM - 1|", std::abs(rem_metric(r, r, 3) - 1.0), 1e-12);
  });

  checks.emplace_back("CSV number formatting", [](Rng& rng) {
    const double v = uniform(rng, -1e3, 1e3);
    const std::string s = format_number(v);
    const double back = std::stod(s);
    const bool ok = s.find(',') == std::string::npos && std::abs(back - v) <= 1e-8 * std::abs(v);
    return Verdict{ok, s};
  });

  std::vector<SelftestCheck> results;
  std::uint64_t k = 0;
  for (auto& [name, fn] : checks) {
    Rng rng = substream(seed, {0x5e1f, k++});
    SelftestCheck check{name, false, ""};
    try {
      const Verdict v = fn(rng);
      check.passed = v.passed;
      check.detail = v.detail;
    } catch (const std::exception& e) {
      check.detail = std::string("threw: ") + e.what();
    }
    results.push_back(std::move(check));
  }
  return results;
}

}  // namespace irscov
