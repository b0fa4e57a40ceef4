#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string_view>
#include <vector>

#include "asics/selective.hpp"

namespace asics {

enum class BetaPattern { null, model1, model2 };

std::string_view to_string(BetaPattern p);
BetaPattern pattern_from_string(std::string_view name);  // throws std::invalid_argument

/// null: 0; model1: (2 1_5, 0); model2: (2 1_5, -2 1_5, 0). Throws if d is too small.
Eigen::VectorXd expand_beta(BetaPattern pattern, Eigen::Index d);

struct SimScenario {
  Eigen::Index n = 100;
  Eigen::Index d = 200;
  double rho = 0.0;
  BetaPattern pattern = BetaPattern::null;
  Eigen::Index k = 1;
  int runs = 1000;
  double alpha = 0.05;
  std::uint64_t master_seed = 0;
  Method method = Method::asics;
  glm::FitConfig glm;
};

/// Throws std::invalid_argument on an inconsistent scenario.
void validate(const SimScenario& sc);

struct SimMetrics {
  double rejection_rate = 0.0;  // share of selected true-null tests rejected
  double rejection_sd = 0.0;    // sqrt(p (1 - p)) of that indicator sample
  double fwer = 0.0;
  double power = 0.0;           // 0 for the null pattern, which has no signals
  double separation_rate = 0.0;
  int runs_completed = 0;
};

/// Everything one Monte-Carlo replicate contributes to the aggregate.
struct ReplicateOutcome {
  std::vector<Eigen::Index> selected;
  std::vector<double> p_values;       // raw, per selected feature
  std::vector<double> adjusted_p;
  int true_null_tests = 0;
  int true_null_rejections = 0;
  int fwer = 0;
  double power = 0.0;
  bool separated = false;  // boundary MLE or singular information
};

/// Share of true signals (nonzero beta_star) that were selected and rejected at `alpha`.
/// Throws std::invalid_argument when beta_star has no nonzero entry.
double power_for_tpr(const SelectiveReport& report, const Eigen::VectorXd& beta_star, double alpha);

/// 1 iff some selected feature with beta_star_j = 0 has adjusted_p <= alpha.
int fwer_indicator(const SelectiveReport& report, const Eigen::VectorXd& beta_star, double alpha);

/// Replicate `index` of `sc`: its random stream depends only on (master_seed, index).
ReplicateOutcome run_replicate(const SimScenario& sc, std::uint64_t index);

/// All replicates, in index order. Results do not depend on `threads`.
std::vector<ReplicateOutcome> run_replicates(const SimScenario& sc, unsigned threads = 1);

SimMetrics summarize(const std::vector<ReplicateOutcome>& outcomes);

SimMetrics run_scenario(const SimScenario& sc, unsigned threads = 1);

}  // namespace asics
