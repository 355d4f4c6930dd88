// SPDX-License-Identifier: Apache-2.0

#include "irscov/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "irscov/beamforming.hpp"
#include "irscov/errors.hpp"
#include "irscov/metrics.hpp"
#include "irscov/rng.hpp"
#include "irscov/training.hpp"

namespace irscov {

namespace {

enum Purpose : std::uint64_t {
  kScenario = 1,
  kSensing = 2,
  kSnrCalibration = 3,
  kFrames = 4,
  kPhasesEstimated = 5,
  kPhasesTrue = 6,
  kPhasesRandom = 7,
  kEvaluation = 8,
};

Rng stream(const ExperimentConfig& cfg, Index trial, Purpose purpose) {
  return substream(cfg.seed, {static_cast<std::uint64_t>(trial), purpose});
}

struct RateTotals {
  double est = 0.0;
  double truth = 0.0;
  double rand = 0.0;
};

double rate_or_zero(const ChannelRealization& ch, const CVector& psi, double p_max, double noise_var) {
  try {
    const CVector f = mrt_precoder(ch.h, ch.g, psi, p_max);
    return achievable_rate(ch.h, ch.g, psi, f, noise_var);
  } catch (const DegenerateInputError&) {
    return 0.0;  // a vanishing effective channel carries no rate
  }
}

}  // namespace

std::string sweep_name(SweepKind kind) {
  switch (kind) {
    case SweepKind::Snr: return "snr";
    case SweepKind::Frames: return "frames";
    case SweepKind::Slots: return "slots";
  }
  return "unknown";
}

std::vector<GridPoint> sweep_grid(const ExperimentConfig& cfg, SweepKind kind) {
  const GridPoint base{cfg.training.snr_db, cfg.training.t_frames, cfg.training.j_slots};
  std::vector<GridPoint> grid;
  switch (kind) {
    case SweepKind::Snr:
      for (double s : cfg.sweep.snr_db) grid.push_back({s, base.t_frames, base.j_slots});
      break;
    case SweepKind::Frames:
      for (Index t : cfg.sweep.t_frames) grid.push_back({base.snr_db, t, base.j_slots});
      break;
    case SweepKind::Slots:
      for (Index j : cfg.sweep.j_slots) grid.push_back({base.snr_db, base.t_frames, j});
      break;
  }
  return grid;
}

TrialDetail run_trial(const ExperimentConfig& cfg, const GridPoint& point, Index trial) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const ArrayGeometry& geom = cfg.scenario.geometry;
  TrialDetail d;

  Rng scenario_rng = stream(cfg, trial, kScenario);
  d.paths = pathloss_scenario(cfg.scenario.bs, cfg.scenario.irs, cfg.scenario.user, cfg.scenario.rician_db,
                              scenario_rng, cfg.scenario.paths);
  d.truth = true_ccm(d.paths, geom);

  Rng sensing_rng = stream(cfg, trial, kSensing);
  const SensingMatrix sensing = build_sensing_matrix(geom, point.j_slots, sensing_rng);

  try {
    if (cfg.training.noise_var) {
      d.noise_var = *cfg.training.noise_var;
    } else {
      Rng snr_rng = stream(cfg, trial, kSnrCalibration);
      const double signal_db =
          mean_signal_power_db(d.paths, geom, sensing.w, snr_rng, cfg.training.snr_calibration_trials);
      d.noise_var = noise_var_for_snr(signal_db, point.snr_db);
    }

    Rng frame_rng = stream(cfg, trial, kFrames);
    const TrainingOutput training = simulate_frames(sensing.w, d.paths, geom, point.t_frames, d.noise_var, frame_rng);

    AdmmConfig admm = cfg.estimator.admm;
    const Index rank = cfg.scenario.paths.bs_irs_paths * cfg.scenario.paths.irs_user_paths;
    if (cfg.estimator.auto_lambda) {
      admm.lambda = select_lambda(training.sample_cov, sensing.w, point.t_frames, point.j_slots, rank,
                                  cfg.estimator.lambda_constant)
                        .lambda;
    }
    d.estimate.emplace(estimate_ccm(training.sample_cov, sensing.w, geom.ccm_dims(), admm));
    d.outcome.rem = rem_metric(d.truth->rh, d.estimate->rh, cfg.effective_rem_rank());

    const Index m = geom.irs_elements();
    const auto& bf = cfg.beamforming;
    Rng est_rng = stream(cfg, trial, kPhasesEstimated);
    Rng true_rng = stream(cfg, trial, kPhasesTrue);
    Rng rand_rng = stream(cfg, trial, kPhasesRandom);
    const CVector psi_est =
        optimize_phases(reduce_ccm(d.estimate->rh, geom.n_bs, m).rbar, bf.n_randomizations, est_rng, bf.sdr).psi();
    const CVector psi_true =
        optimize_phases(reduce_ccm(d.truth->rh, geom.n_bs, m).rbar, bf.n_randomizations, true_rng, bf.sdr).psi();
    const CVector psi_rand = random_passive_baseline(m, rand_rng);

    const double p_max = dbm_to_watts(bf.p_max_dbm);
    Rng eval_rng = stream(cfg, trial, kEvaluation);
    RateTotals totals;
    for (Index k = 0; k < bf.eval_realizations; ++k) {
      const ChannelRealization ch = sample_realization(d.paths, geom, eval_rng);
      totals.est += rate_or_zero(ch, psi_est, p_max, d.noise_var);
      totals.truth += rate_or_zero(ch, psi_true, p_max, d.noise_var);
      totals.rand += rate_or_zero(ch, psi_rand, p_max, d.noise_var);
    }
    const double n = static_cast<double>(bf.eval_realizations);
    d.outcome.rate_est = totals.est / n;
    d.outcome.rate_true = totals.truth / n;
    d.outcome.rate_rand = totals.rand / n;
    d.outcome.ok = true;
  } catch (const SolverError& e) {
    d.outcome.error = std::string("solver failure: ") + e.what();
  } catch (const DegenerateInputError& e) {
    d.outcome.error = std::string("degenerate input: ") + e.what();
  }
  d.outcome.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
  return d;
}

Summary summarize(const std::vector<double>& values) {
  Summary s;
  const auto n = static_cast<double>(values.size());
  if (values.empty()) {
    s.mean = std::numeric_limits<double>::quiet_NaN();
    s.se = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.se = std::sqrt(ss / (n - 1.0) / n);
  }
  return s;
}

SweepResult run_grid(const ExperimentConfig& cfg, const std::vector<GridPoint>& grid, const std::string& name,
                     const std::function<double(const GridPoint&)>& axis_value, const ProgressFn& progress) {
  cfg.validate();
  const Index trials = cfg.trials;
  const Index total = static_cast<Index>(grid.size()) * trials;
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(total));

  std::atomic<Index> next{0};
  std::atomic<Index> done{0};
  std::mutex mu;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      const Index task = next.fetch_add(1);
      if (task >= total) return;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (first_error) return;
      }
      try {
        const auto& point = grid[static_cast<std::size_t>(task / trials)];
        outcomes[static_cast<std::size_t>(task)] = run_trial(cfg, point, task % trials).outcome;
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
      const Index finished = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard<std::mutex> lock(mu);
        progress(finished, total);
      }
    }
  };

  const Index n_threads = std::max<Index>(1, std::min(cfg.threads, total));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (Index i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  SweepResult result;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    SweepRow row;
    row.sweep_name = name;
    row.sweep_value = axis_value(grid[g]);
    row.point = grid[g];
    std::vector<double> rem, est, truth, rnd;
    double wall = 0.0;
    for (Index t = 0; t < trials; ++t) {
      const TrialOutcome& o = outcomes[g * static_cast<std::size_t>(trials) + static_cast<std::size_t>(t)];
      wall += o.wall_ms;
      if (!o.ok) {
        ++row.failures;
        continue;
      }
      rem.push_back(o.rem);
      est.push_back(o.rate_est);
      truth.push_back(o.rate_true);
      rnd.push_back(o.rate_rand);
    }
    row.rem = summarize(rem);
    row.rate_est = summarize(est);
    row.rate_true = summarize(truth);
    row.rate_rand = summarize(rnd);
    row.wall_ms = cfg.record_timing ? wall : 0.0;
    result.rows.push_back(row);
  }
  return result;
}

SweepResult run_sweep(const ExperimentConfig& cfg, SweepKind kind, const ProgressFn& progress) {
  std::function<double(const GridPoint&)> axis;
  switch (kind) {
    case SweepKind::Snr: axis = [](const GridPoint& p) { return p.snr_db; }; break;
    case SweepKind::Frames: axis = [](const GridPoint& p) { return static_cast<double>(p.t_frames); }; break;
    case SweepKind::Slots: axis = [](const GridPoint& p) { return static_cast<double>(p.j_slots); }; break;
  }
  return run_grid(cfg, sweep_grid(cfg, kind), sweep_name(kind), axis, progress);
}

}  // namespace irscov
