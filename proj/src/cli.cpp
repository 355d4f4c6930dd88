// SPDX-License-Identifier: Apache-2.0

#include "irscov/cli.hpp"

#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "irscov/config.hpp"
#include "irscov/csv.hpp"
#include "irscov/errors.hpp"
#include "irscov/selftest.hpp"
#include "irscov/sweep.hpp"

namespace irscov {

namespace {

struct Options {
  std::string preset = "desk";
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<Index> trials;
  std::optional<Index> threads;
  std::optional<Index> trial_index;
  std::string dump_ccm;
  bool record_timing = false;
  bool quiet = false;
};

ExperimentConfig resolve(const Options& opt) {
  ExperimentConfig cfg = ExperimentConfig::preset(opt.preset);
  if (!opt.config_path.empty()) cfg = load_config(opt.config_path, cfg);
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.out) cfg.output = *opt.out;
  if (opt.trials) cfg.trials = *opt.trials;
  if (opt.threads) cfg.threads = *opt.threads;
  if (opt.record_timing) cfg.record_timing = true;
  cfg.validate();
  return cfg;
}

int do_sweep(const Options& opt, SweepKind kind, std::ostream& out, std::ostream& err) {
  const ExperimentConfig cfg = resolve(opt);
  Index last_decile = -1;
  ProgressFn progress;
  if (!opt.quiet) {
    progress = [&](Index done, Index total) {
      const Index decile = done * 10 / total;
      if (decile != last_decile) {
        last_decile = decile;
        err << fmt::format("{}: {}/{} trials\n", sweep_name(kind), done, total) << std::flush;
      }
    };
  }
  const SweepResult result = run_sweep(cfg, kind, progress);
  emit_csv(result, cfg.output);
  out << fmt::format("wrote {} rows to {}\n", result.rows.size(), cfg.output);
  bool any_dead = false;
  for (const auto& row : result.rows) {
    if (row.failures > 0)
      err << fmt::format("warning: {} of {} trials failed at {} = {}\n", row.failures, cfg.trials, row.sweep_name,
                         format_number(row.sweep_value));
    if (row.failures == cfg.trials) any_dead = true;
  }
  return any_dead ? kExitSolverFailure : kExitOk;
}

int do_estimate(const Options& opt, std::ostream& out, std::ostream& err) {
  const ExperimentConfig cfg = resolve(opt);
  const GridPoint point{cfg.training.snr_db, cfg.training.t_frames, cfg.training.j_slots};
  const TrialDetail d = run_trial(cfg, point, opt.trial_index.value_or(0));
  if (!d.outcome.ok) {
    err << "error: " << d.outcome.error << '\n';
    return kExitSolverFailure;
  }
  const auto& diag = d.estimate->diagnostics;
  out << fmt::format("snr_db {}  t_frames {}  j_slots {}  noise_var {}\n", format_number(point.snr_db),
                     point.t_frames, point.j_slots, format_number(d.noise_var));
  out << fmt::format("admm iterations {}  converged {}  lambda {}\n", diag.iterations, diag.converged ? "yes" : "no",
                     format_number(diag.lambda));
  out << fmt::format("rem {}\n", format_number(d.outcome.rem));
  out << fmt::format("rate estimated {}  true {}  random {}\n", format_number(d.outcome.rate_est),
                     format_number(d.outcome.rate_true), format_number(d.outcome.rate_rand));
  for (const auto& w : diag.warnings) err << "warning: " << w << '\n';
  if (!opt.dump_ccm.empty()) {
    emit_generator_csv(d.estimate->v, opt.dump_ccm);
    out << "wrote generator to " << opt.dump_ccm << '\n';
  }
  return kExitOk;
}

int do_selftest(const Options& opt, std::ostream& out) {
  const ExperimentConfig cfg = resolve(opt);
  const auto checks = run_selftest(cfg.seed);
  bool all = true;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << "  " << c.detail << '\n';
    all = all && c.passed;
  }
  return all ? kExitOk : kExitSolverFailure;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Covariance estimation and two-timescale beamforming for IRS-aided links", "irscov"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--preset", opt.preset, "Base settings: desk or paper-scale")
      ->check(CLI::IsMember({"desk", "paper-scale"}));
  app.add_option("--config", opt.config_path, "INI file applied on top of the preset");
  app.add_option("--seed", opt.seed, "Master seed");
  app.add_option("--out", opt.out, "Output CSV path");
  app.add_option("--trials", opt.trials, "Monte Carlo trials per grid point")->check(CLI::PositiveNumber);
  app.add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--record-timing", opt.record_timing, "Write measured wall time into the wall_ms column");
  app.add_flag("--quiet", opt.quiet, "No progress output");

  auto* snr = app.add_subcommand("sweep-snr", "Sweep the training SNR");
  auto* frames = app.add_subcommand("sweep-frames", "Sweep the number of frames T");
  auto* slots = app.add_subcommand("sweep-slots", "Sweep the number of slots J");
  auto* estimate = app.add_subcommand("estimate", "Single estimation run at the [training] point");
  estimate->add_option("--dump-ccm", opt.dump_ccm, "Write the estimated generator as CSV");
  estimate->add_option("--trial", opt.trial_index, "Trial index selecting the random streams");
  auto* selftest = app.add_subcommand("selftest", "Run the built-in invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfigError;
  }

  try {
    if (snr->parsed()) return do_sweep(opt, SweepKind::Snr, out, err);
    if (frames->parsed()) return do_sweep(opt, SweepKind::Frames, out, err);
    if (slots->parsed()) return do_sweep(opt, SweepKind::Slots, out, err);
    if (estimate->parsed()) return do_estimate(opt, out, err);
    if (selftest->parsed()) return do_selftest(opt, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolverFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolverFailure;
  }
  return kExitConfigError;
}

}  // namespace irscov
