#include "asics/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "asics/error.hpp"

namespace asics {

std::string_view to_string(BetaPattern p) {
  switch (p) {
    case BetaPattern::null:
      return "null";
    case BetaPattern::model1:
      return "model1";
    case BetaPattern::model2:
      return "model2";
  }
  return "unknown";
}

BetaPattern pattern_from_string(std::string_view name) {
  if (name == "null") return BetaPattern::null;
  if (name == "model1") return BetaPattern::model1;
  if (name == "model2") return BetaPattern::model2;
  throw std::invalid_argument("unknown beta pattern '" + std::string(name) + "'");
}

Eigen::VectorXd expand_beta(BetaPattern pattern, Eigen::Index d) {
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(d);
  switch (pattern) {
    case BetaPattern::null:
      break;
    case BetaPattern::model1:
      if (d < 5) throw std::invalid_argument("model1 needs d >= 5");
      beta.head(5).setConstant(2.0);
      break;
    case BetaPattern::model2:
      if (d < 10) throw std::invalid_argument("model2 needs d >= 10");
      beta.head(5).setConstant(2.0);
      beta.segment(5, 5).setConstant(-2.0);
      break;
  }
  return beta;
}

void validate(const SimScenario& sc) {
  if (sc.runs < 1) throw std::invalid_argument("runs must be at least 1");
  if (!(sc.alpha >= 0.0 && sc.alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
  if (sc.n < 2) throw std::invalid_argument("n must be at least 2");
  if (sc.method == Method::data_splitting && sc.n < 4)
    throw std::invalid_argument("data splitting needs n >= 4");
  if (sc.k < 1 || sc.k > sc.d) throw std::invalid_argument("k must lie in [1, d]");
  if (!(sc.rho >= 0.0 && sc.rho < 1.0)) throw std::invalid_argument("rho must lie in [0, 1)");
  expand_beta(sc.pattern, sc.d);
}

double power_for_tpr(const SelectiveReport& report, const Eigen::VectorXd& beta_star, double alpha) {
  const auto signals = (beta_star.array() != 0.0).count();
  if (signals == 0) throw std::invalid_argument("power is undefined without true signals");
  int hits = 0;
  for (const auto& t : report.tests) {
    if (beta_star(t.feature_index) != 0.0 && t.adjusted_p <= alpha) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(signals);
}

int fwer_indicator(const SelectiveReport& report, const Eigen::VectorXd& beta_star, double alpha) {
  for (const auto& t : report.tests) {
    if (beta_star(t.feature_index) == 0.0 && t.adjusted_p <= alpha) return 1;
  }
  return 0;
}

ReplicateOutcome run_replicate(const SimScenario& sc, std::uint64_t index) {
  const Eigen::VectorXd beta_star = expand_beta(sc.pattern, sc.d);
  RandomStream stream(sc.master_seed, index);
  const Dataset ds = generate_synthetic({sc.n, sc.d, sc.rho, beta_star}, stream);

  ReplicateOutcome out;
  InferenceOptions opts;
  opts.alpha = sc.alpha;
  opts.glm = sc.glm;
  SelectiveReport report;
  try {
    report = run_method(sc.method, ds, sc.k, stream, opts);
  } catch (const SingularDesign&) {
    // No usable information matrix: counted as a separated replicate with no rejections.
    out.separated = true;
    return out;
  }

  for (const auto& t : report.tests) {
    out.selected.push_back(t.feature_index);
    out.p_values.push_back(t.p_value);
    out.adjusted_p.push_back(t.adjusted_p);
    if (beta_star(t.feature_index) == 0.0) {
      ++out.true_null_tests;
      if (t.adjusted_p <= sc.alpha) ++out.true_null_rejections;
    }
  }
  out.fwer = fwer_indicator(report, beta_star, sc.alpha);
  if (sc.pattern != BetaPattern::null) out.power = power_for_tpr(report, beta_star, sc.alpha);
  out.separated = report.fit.bounded;
  return out;
}

std::vector<ReplicateOutcome> run_replicates(const SimScenario& sc, unsigned threads) {
  validate(sc);
  std::vector<ReplicateOutcome> outcomes(static_cast<std::size_t>(sc.runs));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < outcomes.size(); r = next++) outcomes[r] = run_replicate(sc, r);
  };
  const unsigned pool = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(sc.runs)));
  if (pool == 1) {
    worker();
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(pool);
    for (unsigned i = 0; i < pool; ++i) workers.emplace_back(worker);
  }
  return outcomes;
}

SimMetrics summarize(const std::vector<ReplicateOutcome>& outcomes) {
  SimMetrics m;
  long long null_tests = 0;
  long long null_rejections = 0;
  long long fwer = 0;
  long long separated = 0;
  double power = 0.0;
  for (const auto& o : outcomes) {
    null_tests += o.true_null_tests;
    null_rejections += o.true_null_rejections;
    fwer += o.fwer;
    separated += o.separated ? 1 : 0;
    power += o.power;
  }
  const double runs = static_cast<double>(outcomes.size());
  m.runs_completed = static_cast<int>(outcomes.size());
  if (outcomes.empty()) return m;
  m.rejection_rate = null_tests > 0 ? static_cast<double>(null_rejections) / static_cast<double>(null_tests) : 0.0;
  m.rejection_sd = std::sqrt(m.rejection_rate * (1.0 - m.rejection_rate));
  m.fwer = static_cast<double>(fwer) / runs;
  m.power = power / runs;
  m.separation_rate = static_cast<double>(separated) / runs;
  return m;
}

SimMetrics run_scenario(const SimScenario& sc, unsigned threads) { return summarize(run_replicates(sc, threads)); }

}  // namespace asics
