#pragma once

#include <Eigen/Dense>

#include <span>
#include <string_view>
#include <vector>

#include "asics/data.hpp"
#include "asics/glm.hpp"
#include "asics/rng.hpp"
#include "asics/screening.hpp"

namespace asics {

enum class Method { asics, data_splitting, nominal };

std::string_view to_string(Method m);
Method method_from_string(std::string_view name);  // throws std::invalid_argument

/// Inference for one selected feature.
struct SelectiveTest {
  Eigen::Index feature_index = 0;  // global 0-based column
  double t_stat = 0.0;             // sqrt(n) * beta_hat_j
  double sigma2 = 0.0;             // (Sigma_n(beta_hat)^-1)_jj
  double lower = 0.0;
  double upper = 0.0;
  double p_value = 1.0;
  double adjusted_p = 1.0;
  bool saturated = false;          // truncated-normal mass underflowed; p is clamped
  bool separation_flag = false;    // the MLE sits on the parameter-space boundary
};

struct SelectiveReport {
  ScreeningSelection selection;
  glm::FittedLogistic fit;
  std::vector<SelectiveTest> tests;  // one per selected feature, ascending feature_index
  Method method = Method::asics;
  double alpha = 0.05;
  Eigen::Index n_inference = 0;
};

struct InferenceOptions {
  double alpha = 0.05;
  glm::FitConfig glm;
  bool bonferroni = true;  // adjusted_p = min(1, K p); otherwise adjusted_p = p
};

struct Interval {
  double lower;
  double upper;
};

/// Truncation interval of the statistic for selected feature `j_local` (0-based position
/// in S), in closed form: with g = (sigma2/sqrt(n)) (|z_j| - max_{k not in S} |z_k|), the
/// interval is [t - g, +inf) when s_j = +1 and (-inf, t + g] when s_j = -1.
Interval closed_truncation(const ScreeningSelection& sel, Eigen::Index j_local, double t_stat, double sigma2,
                           Eigen::Index n);

struct PolyhedralTruncation {
  double lower;
  double upper;
  double n_slack;  // min over rows orthogonal to the direction; +inf when there are none
};

/// Same interval by brute force over every row of the selection event {A z <= 0}. Throws
/// SelectionEventViolated if a row orthogonal to the test direction is violated.
PolyhedralTruncation polyhedral_truncation_oracle(const ScreeningSelection& sel, Eigen::Index j_local,
                                                  double t_stat, double sigma2, Eigen::Index n);

struct PValue {
  double p;
  bool saturated;
};

/// Two-sided p = 2 min(F, 1 - F) with F the CDF of TN(0, sigma2, lower, upper) at t_stat.
/// A degenerate interval yields p = 0 with saturated = true.
PValue selective_p_value(double t_stat, double sigma2, double lower, double upper);

/// Classical two-sided Wald p-value 2 (1 - Phi(|t| / sigma)).
double wald_p_value(double t_stat, double sigma2);

inline double bonferroni(double p, Eigen::Index k) { return std::min(1.0, static_cast<double>(k) * p); }

/// Screening, MLE on the selected columns and selective p-values for every selected feature.
SelectiveReport run_asics(const Dataset& ds, Eigen::Index k, const InferenceOptions& opts = {});

/// Screening and Wald tests on the full data, ignoring selection.
SelectiveReport run_nominal(const Dataset& ds, Eigen::Index k, const InferenceOptions& opts = {});

/// Screens on rows permutation[0 .. n/2) and tests on the rest. `permutation` must be a
/// permutation of 0..n-1.
SelectiveReport run_data_splitting(const Dataset& ds, Eigen::Index k, std::span<const Eigen::Index> permutation,
                                   const InferenceOptions& opts = {});

/// As above, with a uniformly random permutation drawn from `stream`.
SelectiveReport run_data_splitting(const Dataset& ds, Eigen::Index k, RandomStream& stream,
                                   const InferenceOptions& opts = {});

/// Dispatches on `method`; `stream` is only consumed by data splitting.
SelectiveReport run_method(Method method, const Dataset& ds, Eigen::Index k, RandomStream& stream,
                           const InferenceOptions& opts = {});

}  // namespace asics
