// SPDX-License-Identifier: Apache-2.0

#ifndef IRSCOV_CLI_HPP
#define IRSCOV_CLI_HPP

#include <ostream>

namespace irscov {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitSolverFailure = 2;

/// Entry point of the `irscov` tool. Subcommands: sweep-snr, sweep-frames,
/// sweep-slots, estimate, selftest.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace irscov

#endif  // IRSCOV_CLI_HPP
