// SPDX-License-Identifier: Apache-2.0

// Experiment configuration: an INI file with sections [scenario], [training],
// [sweep], [estimator], [beamforming] and [run]. Every key is optional and
// falls back to the desk-scale preset; unknown sections or keys are rejected.
// See configs/README.md for the full schema.

#ifndef IRSCOV_CONFIG_HPP
#define IRSCOV_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "irscov/beamforming.hpp"
#include "irscov/channel.hpp"
#include "irscov/estimator.hpp"

namespace irscov {

struct ScenarioConfig {
  Position bs{5.0, 0.0, 10.0};
  Position irs{0.0, 50.0, 20.0};
  Position user{10.0, 60.0, 1.8};
  double rician_db = 10.0;
  ScenarioOptions paths;
  ArrayGeometry geometry;
};

struct TrainingConfig {
  double snr_db = 0.0;
  Index t_frames = 50;
  Index j_slots = 60;
  /// Overrides the SNR calibration when set.
  std::optional<double> noise_var;
  Index snr_calibration_trials = 2000;
};

struct SweepGrid {
  std::vector<double> snr_db{-10.0, -5.0, 0.0, 5.0};
  std::vector<Index> t_frames{10, 20, 50, 100};
  std::vector<Index> j_slots{40, 60, 80, 120};
};

struct EstimatorConfig {
  AdmmConfig admm{.max_iters = 1000, .tol_primal = 1e-4, .tol_dual = 1e-4};
  bool auto_lambda = true;
  double lambda_constant = kDefaultLambdaConstant;
};

struct BeamformingConfig {
  double p_max_dbm = 30.0;
  Index n_randomizations = 200;
  Index eval_realizations = 200;
  SdrConfig sdr;
};

struct ExperimentConfig {
  ScenarioConfig scenario;
  TrainingConfig training;
  SweepGrid sweep;
  EstimatorConfig estimator;
  BeamformingConfig beamforming;
  Index trials = 20;
  std::uint64_t seed = 1;
  Index threads = 1;
  Index rem_rank = 0;  ///< 0 selects L * P
  std::string output = "sweep.csv";
  bool record_timing = false;

  /// "desk" (default) or "paper-scale".
  static ExperimentConfig preset(const std::string& name);
  /// Throws ConfigError describing the first violated constraint.
  void validate() const;
  Index effective_rem_rank() const;
};

/// Parses INI text on top of `base`. Throws ConfigError.
ExperimentConfig parse_config(const std::string& text, ExperimentConfig base = {});
/// Reads and parses a file; the path is included in any error.
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

}  // namespace irscov

#endif  // IRSCOV_CONFIG_HPP
