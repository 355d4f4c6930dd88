// SPDX-License-Identifier: Apache-2.0

#include "irscov/csv.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace irscov {

const std::vector<std::string>& sweep_csv_columns() {
  static const std::vector<std::string> cols{
      "sweep_name",    "sweep_value",  "snr_db",         "t_frames",       "j_slots",
      "rem_mean",      "rem_se",       "rate_est_mean",  "rate_est_se",    "rate_true_mean",
      "rate_true_se",  "rate_rand_mean", "rate_rand_se", "failures",       "wall_ms"};
  return cols;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  // fmt ignores the global locale unless asked with 'L'.
  return fmt::format("{:.9g}", v);
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  const auto& cols = sweep_csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const SweepRow& r : result.rows) {
    out << r.sweep_name << ',' << format_number(r.sweep_value) << ',' << format_number(r.point.snr_db) << ','
        << fmt::format("{},{}", r.point.t_frames, r.point.j_slots) << ',' << format_number(r.rem.mean) << ','
        << format_number(r.rem.se) << ',' << format_number(r.rate_est.mean) << ',' << format_number(r.rate_est.se)
        << ',' << format_number(r.rate_true.mean) << ',' << format_number(r.rate_true.se) << ','
        << format_number(r.rate_rand.mean) << ',' << format_number(r.rate_rand.se) << ',' << fmt::format("{}", r.failures) << ','
        << format_number(r.wall_ms) << '\n';
  }
}

namespace {

template <class Writer>
void write_file(const std::string& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  writer(out);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace

void emit_csv(const SweepResult& result, const std::string& path) {
  write_file(path, [&](std::ostream& out) { write_sweep_csv(result, out); });
}

void write_generator_csv(const ToeplitzGenerator& gen, std::ostream& out) {
  out << "lag1,lag2,lag3,re,im\n";
  const LevelDims& dims = gen.dims();
  for (Index f = 0; f < dims.generator_size(); ++f) {
    const auto lags = dims.lags_of(f);
    for (Index l = 0; l < LevelDims::kMaxLevels; ++l)
      out << fmt::format("{},", l < static_cast<Index>(lags.size()) ? lags[static_cast<std::size_t>(l)] : 0);
    out << format_number(gen.data()(f).real()) << ',' << format_number(gen.data()(f).imag()) << '\n';
  }
}

void emit_generator_csv(const ToeplitzGenerator& gen, const std::string& path) {
  write_file(path, [&](std::ostream& out) { write_generator_csv(gen, out); });
}

}  // namespace irscov
