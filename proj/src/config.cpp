// SPDX-License-Identifier: Apache-2.0

#include "irscov/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "irscov/errors.hpp"

namespace irscov {

ExperimentConfig ExperimentConfig::preset(const std::string& name) {
  ExperimentConfig cfg;
  if (name == "desk" || name.empty()) return cfg;
  if (name == "paper-scale") {
    cfg.scenario.geometry = {8, 16, 16, 0.5};
    cfg.training.t_frames = 100;
    cfg.training.j_slots = 120;
    cfg.sweep.snr_db = {-15.0, -10.0, -5.0, 0.0, 5.0, 10.0};
    cfg.sweep.t_frames = {10, 20, 40, 60, 80, 100};
    cfg.sweep.j_slots = {60, 80, 100, 120};
    cfg.trials = 50;
    return cfg;
  }
  throw ConfigError("unknown preset '" + name + "' (expected 'desk' or 'paper-scale')");
}

Index ExperimentConfig::effective_rem_rank() const {
  return rem_rank > 0 ? rem_rank : scenario.paths.bs_irs_paths * scenario.paths.irs_user_paths;
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  try {
    scenario.geometry.validate();
    estimator.admm.validate();
  } catch (const StructuralError& e) {
    fail(e.what());
  }
  if (scenario.paths.bs_irs_paths < 1 || scenario.paths.irs_user_paths < 1)
    fail("scenario: path counts must be >= 1");
  if (std::isnan(scenario.rician_db)) fail("scenario: rician_db must be a number");
  if (sweep.snr_db.empty() || sweep.t_frames.empty() || sweep.j_slots.empty()) fail("sweep: lists must be non-empty");
  for (auto t : sweep.t_frames)
    if (t < 1) fail("sweep: t_frames entries must be >= 1");
  for (auto j : sweep.j_slots)
    if (j < 1) fail("sweep: j_slots entries must be >= 1");
  if (training.t_frames < 1 || training.j_slots < 1) fail("training: t_frames and j_slots must be >= 1");
  if (training.noise_var && !(*training.noise_var > 0.0)) fail("training: noise_var must be positive");
  if (training.snr_calibration_trials < 1) fail("training: snr_calibration_trials must be >= 1");
  if (!(estimator.lambda_constant >= 0.0)) fail("estimator: lambda_c must be >= 0");
  if (beamforming.n_randomizations < 1) fail("beamforming: n_randomizations must be >= 1");
  if (beamforming.eval_realizations < 1) fail("beamforming: eval_realizations must be >= 1");
  if (beamforming.sdr.max_iters < 1 || !(beamforming.sdr.tol > 0.0) || beamforming.sdr.check_every < 1)
    fail("beamforming: invalid SDR solver settings");
  if (trials < 1) fail("run: trials must be >= 1");
  if (threads < 1) fail("run: threads must be >= 1");
  const Index dim = scenario.geometry.cascade_size();
  if (rem_rank < 0 || effective_rem_rank() > dim) fail("run: rem_rank must lie in [1, N*M]");
}

namespace {

using boost::property_tree::ptree;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"scenario",
       {"bs_position", "irs_position", "user_position", "rician_db", "bs_irs_paths", "irs_user_paths",
        "shadowing_db", "n_bs", "irs_rows", "irs_cols", "spacing_ratio"}},
      {"training", {"snr_db", "t_frames", "j_slots", "noise_var", "snr_calibration_trials"}},
      {"sweep", {"snr_db", "t_frames", "j_slots"}},
      {"estimator", {"lambda", "lambda_c", "eta", "rho", "relative_penalties", "max_iters", "tol_primal", "tol_dual"}},
      {"beamforming", {"p_max_dbm", "n_randomizations", "eval_realizations", "sdr_max_iters", "sdr_tol"}},
      {"run", {"trials", "seed", "threads", "rem_rank", "output", "record_timing"}},
  };
  return s;
}

std::string where(const std::string& section, const std::string& key) { return "[" + section + "] " + key; }

double to_double(const std::string& text, const std::string& ctx) {
  const std::string t = boost::trim_copy(text);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw ConfigError(ctx + ": expected a number, got '" + text + "'");
  return v;
}

long long to_integer(const std::string& text, const std::string& ctx) {
  const std::string t = boost::trim_copy(text);
  long long v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw ConfigError(ctx + ": expected an integer, got '" + text + "'");
  return v;
}

bool to_bool(const std::string& text, const std::string& ctx) {
  const std::string t = boost::to_lower_copy(boost::trim_copy(text));
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError(ctx + ": expected a boolean, got '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  boost::split(parts, text, boost::is_any_of(","));
  return parts;
}

Position to_position(const std::string& text, const std::string& ctx) {
  const auto parts = split_list(text);
  if (parts.size() != 3) throw ConfigError(ctx + ": expected three comma-separated coordinates");
  return {to_double(parts[0], ctx), to_double(parts[1], ctx), to_double(parts[2], ctx)};
}

class Section {
 public:
  Section(const ptree& tree, std::string name) : name_(std::move(name)) {
    if (auto child = tree.get_child_optional(name_)) node_ = &*child;
  }
  std::optional<std::string> raw(const std::string& key) const {
    if (!node_) return std::nullopt;
    if (auto v = node_->get_optional<std::string>(key)) return *v;
    return std::nullopt;
  }
  void number(const std::string& key, double& out) const {
    if (auto v = raw(key)) out = to_double(*v, where(name_, key));
  }
  void integer(const std::string& key, Index& out) const {
    if (auto v = raw(key)) out = static_cast<Index>(to_integer(*v, where(name_, key)));
  }
  void flag(const std::string& key, bool& out) const {
    if (auto v = raw(key)) out = to_bool(*v, where(name_, key));
  }
  void position(const std::string& key, Position& out) const {
    if (auto v = raw(key)) out = to_position(*v, where(name_, key));
  }
  void number_list(const std::string& key, std::vector<double>& out) const {
    if (auto v = raw(key)) {
      out.clear();
      for (const auto& p : split_list(*v)) out.push_back(to_double(p, where(name_, key)));
    }
  }
  void integer_list(const std::string& key, std::vector<Index>& out) const {
    if (auto v = raw(key)) {
      out.clear();
      for (const auto& p : split_list(*v)) out.push_back(static_cast<Index>(to_integer(p, where(name_, key))));
    }
  }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  const ptree* node_ = nullptr;
};

void check_schema(const ptree& tree) {
  for (const auto& [section, body] : tree) {
    auto it = schema().find(section);
    if (it == schema().end()) {
      if (body.empty()) throw ConfigError("key '" + section + "' appears outside any section");
      throw ConfigError("unknown section [" + section + "]");
    }
    for (const auto& [key, value] : body)
      if (!it->second.count(key)) throw ConfigError("unknown key " + where(section, key));
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, ExperimentConfig cfg) {
  ptree tree;
  try {
    std::istringstream in(text);
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("malformed INI: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  check_schema(tree);

  const Section sc(tree, "scenario");
  sc.position("bs_position", cfg.scenario.bs);
  sc.position("irs_position", cfg.scenario.irs);
  sc.position("user_position", cfg.scenario.user);
  sc.number("rician_db", cfg.scenario.rician_db);
  sc.integer("bs_irs_paths", cfg.scenario.paths.bs_irs_paths);
  sc.integer("irs_user_paths", cfg.scenario.paths.irs_user_paths);
  sc.number("shadowing_db", cfg.scenario.paths.shadowing_db);
  sc.integer("n_bs", cfg.scenario.geometry.n_bs);
  sc.integer("irs_rows", cfg.scenario.geometry.m_v);
  sc.integer("irs_cols", cfg.scenario.geometry.m_h);
  sc.number("spacing_ratio", cfg.scenario.geometry.spacing_ratio);

  const Section tr(tree, "training");
  tr.number("snr_db", cfg.training.snr_db);
  tr.integer("t_frames", cfg.training.t_frames);
  tr.integer("j_slots", cfg.training.j_slots);
  if (auto nv = tr.raw("noise_var")) cfg.training.noise_var = to_double(*nv, where("training", "noise_var"));
  tr.integer("snr_calibration_trials", cfg.training.snr_calibration_trials);

  const Section sw(tree, "sweep");
  sw.number_list("snr_db", cfg.sweep.snr_db);
  sw.integer_list("t_frames", cfg.sweep.t_frames);
  sw.integer_list("j_slots", cfg.sweep.j_slots);

  const Section es(tree, "estimator");
  if (auto lam = es.raw("lambda")) {
    if (boost::iequals(boost::trim_copy(*lam), "auto")) {
      cfg.estimator.auto_lambda = true;
    } else {
      cfg.estimator.auto_lambda = false;
      cfg.estimator.admm.lambda = to_double(*lam, where("estimator", "lambda"));
    }
  }
  es.number("lambda_c", cfg.estimator.lambda_constant);
  es.number("eta", cfg.estimator.admm.eta);
  es.number("rho", cfg.estimator.admm.rho);
  es.flag("relative_penalties", cfg.estimator.admm.relative_penalties);
  es.integer("max_iters", cfg.estimator.admm.max_iters);
  es.number("tol_primal", cfg.estimator.admm.tol_primal);
  es.number("tol_dual", cfg.estimator.admm.tol_dual);

  const Section bf(tree, "beamforming");
  bf.number("p_max_dbm", cfg.beamforming.p_max_dbm);
  bf.integer("n_randomizations", cfg.beamforming.n_randomizations);
  bf.integer("eval_realizations", cfg.beamforming.eval_realizations);
  bf.integer("sdr_max_iters", cfg.beamforming.sdr.max_iters);
  bf.number("sdr_tol", cfg.beamforming.sdr.tol);

  const Section run(tree, "run");
  run.integer("trials", cfg.trials);
  if (auto seed = run.raw("seed")) {
    const auto v = to_integer(*seed, where("run", "seed"));
    if (v < 0) throw ConfigError("[run] seed must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(v);
  }
  run.integer("threads", cfg.threads);
  run.integer("rem_rank", cfg.rem_rank);
  if (auto out = run.raw("output")) cfg.output = boost::trim_copy(*out);
  run.flag("record_timing", cfg.record_timing);

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str(), std::move(base));
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace irscov
