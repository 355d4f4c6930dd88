// SPDX-License-Identifier: Apache-2.0

// Monte Carlo experiment driver.
//
// Every trial owns its random streams, keyed by (seed, trial index, purpose) and
// not by grid point, so neighbouring grid points see the same scenario, the same
// training operator prefix and the same evaluation channels. Results are folded
// in trial order after all workers finish, which makes the output independent
// of the thread count.

#ifndef IRSCOV_SWEEP_HPP
#define IRSCOV_SWEEP_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "irscov/channel.hpp"
#include "irscov/config.hpp"
#include "irscov/estimator.hpp"

namespace irscov {

enum class SweepKind { Snr, Frames, Slots };

/// "snr", "frames" or "slots".
std::string sweep_name(SweepKind kind);

struct GridPoint {
  double snr_db = 0.0;
  Index t_frames = 0;
  Index j_slots = 0;
};

/// The varying axis comes from cfg.sweep, the other two from cfg.training.
std::vector<GridPoint> sweep_grid(const ExperimentConfig& cfg, SweepKind kind);

struct TrialOutcome {
  bool ok = false;
  double rem = 0.0;
  double rate_est = 0.0;
  double rate_true = 0.0;
  double rate_rand = 0.0;
  double wall_ms = 0.0;
  std::string error;  ///< set when !ok
};

/// Everything one trial produces, for the single-run CLI path and for tests.
struct TrialDetail {
  TrialOutcome outcome;
  PathSet paths;
  std::optional<GroundTruthCcm> truth;
  std::optional<CcmEstimate> estimate;  ///< empty if the trial failed before it
  double noise_var = 0.0;
};

/// Runs one trial end to end. Solver hard failures and degenerate inputs are
/// reported through outcome.ok / outcome.error; other exceptions propagate.
TrialDetail run_trial(const ExperimentConfig& cfg, const GridPoint& point, Index trial);

/// Mean and standard error over the successful trials.
struct Summary {
  double mean = 0.0;
  double se = 0.0;
};

Summary summarize(const std::vector<double>& values);

struct SweepRow {
  std::string sweep_name;
  double sweep_value = 0.0;
  GridPoint point;
  Summary rem;
  Summary rate_est;
  Summary rate_true;
  Summary rate_rand;
  Index failures = 0;
  double wall_ms = 0.0;  ///< 0 unless cfg.record_timing
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

using ProgressFn = std::function<void(Index done, Index total)>;

SweepResult run_sweep(const ExperimentConfig& cfg, SweepKind kind, const ProgressFn& progress = {});

/// Same, over an explicit grid labelled `name`, varying `axis_value(point)`.
SweepResult run_grid(const ExperimentConfig& cfg, const std::vector<GridPoint>& grid, const std::string& name,
                     const std::function<double(const GridPoint&)>& axis_value, const ProgressFn& progress = {});

}  // namespace irscov

#endif  // IRSCOV_SWEEP_HPP
