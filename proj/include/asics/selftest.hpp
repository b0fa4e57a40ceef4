#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "asics/selective.hpp"

namespace asics {

struct SuiteResult {
  std::string name;
  bool passed = false;
  int cases = 0;
  double worst_error = 0.0;
  double seconds = 0.0;
};

using ClosedTruncationFn =
    std::function<Interval(const ScreeningSelection&, Eigen::Index, double, double, Eigen::Index)>;

struct SelftestOptions {
  std::uint64_t seed = 7;
  ClosedTruncationFn closed = closed_truncation;  // replaceable for mutation checks
};

/// Embedded oracle suites: truncated-normal CDF against quadrature, closed-form truncation
/// against the polyhedral enumeration, and score/information against finite differences.
std::vector<SuiteResult> run_selftest(const SelftestOptions& options = {});

}  // namespace asics
