// SPDX-License-Identifier: Apache-2.0

#ifndef IRSCOV_SELFTEST_HPP
#define IRSCOV_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace irscov {

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Small-instance invariant checks covering every module; runs in a few seconds.
std::vector<SelftestCheck> run_selftest(std::uint64_t seed = 1);

}  // namespace irscov

#endif  // IRSCOV_SELFTEST_HPP
