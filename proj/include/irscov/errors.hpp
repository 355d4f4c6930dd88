// SPDX-License-Identifier: Apache-2.0

#ifndef IRSCOV_ERRORS_HPP
#define IRSCOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace irscov {

/// Malformed input shape: even generator length, zero length, bad dims.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands whose sizes do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not produce a trustworthy result
/// (singular subproblem, eigensolver failure, broken structural check).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Physically degenerate input, e.g. a zero effective channel.
class DegenerateInputError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid or incomplete experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace irscov

#endif  // IRSCOV_ERRORS_HPP
