// SPDX-License-Identifier: Apache-2.0

#ifndef IRSCOV_CSV_HPP
#define IRSCOV_CSV_HPP

#include <ostream>
#include <string>
#include <vector>

#include "irscov/sweep.hpp"
#include "irscov/toeplitz.hpp"

namespace irscov {

/// Column names of the sweep CSV, in order.
const std::vector<std::string>& sweep_csv_columns();

/// Header plus one line per row; numbers use 9 significant digits and '.'
/// regardless of the global locale.
void write_sweep_csv(const SweepResult& result, std::ostream& out);

/// Writes to `path`. Throws std::runtime_error naming the path on I/O failure.
void emit_csv(const SweepResult& result, const std::string& path);

/// Generator dump with columns lag1, lag2, lag3, re, im (unused levels carry lag 0).
void write_generator_csv(const ToeplitzGenerator& gen, std::ostream& out);
void emit_generator_csv(const ToeplitzGenerator& gen, const std::string& path);

/// Locale-independent %.9g.
std::string format_number(double v);

}  // namespace irscov

#endif  // IRSCOV_CSV_HPP
