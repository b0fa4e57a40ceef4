#include "asics/selective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "asics/error.hpp"
#include "asics/truncnorm.hpp"

namespace asics {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::asics:
      return "asics";
    case Method::data_splitting:
      return "data_splitting";
    case Method::nominal:
      return "nominal";
  }
  return "unknown";
}

Method method_from_string(std::string_view name) {
  if (name == "asics") return Method::asics;
  if (name == "data_splitting" || name == "ds") return Method::data_splitting;
  if (name == "nominal" || name == "nt") return Method::nominal;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

Interval closed_truncation(const ScreeningSelection& sel, Eigen::Index j_local, double t_stat, double sigma2,
                           Eigen::Index n) {
  if (j_local < 0 || j_local >= sel.k()) throw std::out_of_range("j_local outside the selected set");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("sigma2 must be positive");
  const auto j = sel.indices[static_cast<std::size_t>(j_local)];
  const double gap = sigma2 / std::sqrt(static_cast<double>(n)) * (std::abs(sel.z(j)) - sel.max_abs_z_complement);
  if (sel.signs[static_cast<std::size_t>(j_local)] > 0) return {t_stat - gap, kInf};
  return {-kInf, t_stat + gap};
}

PolyhedralTruncation polyhedral_truncation_oracle(const ScreeningSelection& sel, Eigen::Index j_local,
                                                  double t_stat, double sigma2, Eigen::Index n) {
  if (j_local < 0 || j_local >= sel.k()) throw std::out_of_range("j_local outside the selected set");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("sigma2 must be positive");
  const double root_n = std::sqrt(static_cast<double>(n));

  PolyhedralTruncation out{-kInf, kInf, kInf};
  for (Eigen::Index block = 0; block < sel.k(); ++block) {
    const EventBlock rows = selection_event_rows(sel, block);
    for (Eigen::Index l = 0; l < rows.size(); ++l) {
      const EventRow row = rows[l];
      // (A~ c)_l = (A_S e_j)_l / sigma2; A_S only touches the block's own selected column.
      const double denom = block == j_local ? row.selected_coef / sigma2 : 0.0;
      // b~ - A~ w = -(1/sqrt(n)) A z + t (A~ c)
      const double numer = -row.value / root_n + t_stat * denom;
      if (denom < 0.0) {
        out.lower = std::max(out.lower, numer / denom);
      } else if (denom > 0.0) {
        out.upper = std::min(out.upper, numer / denom);
      } else {
        out.n_slack = std::min(out.n_slack, numer);
      }
    }
  }
  if (out.n_slack < -1e-12) throw SelectionEventViolated("selection event fails at the observed scores");
  return out;
}

PValue selective_p_value(double t_stat, double sigma2, double lower, double upper) {
  const truncnorm::Params params{0.0, sigma2, lower, upper};
  try {
    const double f = truncnorm::cdf(t_stat, params);
    const double s = truncnorm::sf(t_stat, params);
    return {std::min(1.0, 2.0 * std::min(f, s)), false};
  } catch (const DegenerateInterval&) {
    // Interval lies beyond ~38 sd of the null; report the saturated value and flag it.
    return {0.0, true};
  }
}

double wald_p_value(double t_stat, double sigma2) {
  return std::min(1.0, 2.0 * truncnorm::std_normal_sf(std::abs(t_stat) / std::sqrt(sigma2)));
}

namespace {

SelectiveReport wald_report(const Dataset& screen, const Eigen::MatrixXd& x_inf, const Eigen::VectorXd& y_inf,
                            Eigen::Index k, Method method, const InferenceOptions& opts) {
  SelectiveReport report;
  report.method = method;
  report.alpha = opts.alpha;
  report.selection = select_top_k(marginal_scores(screen), k);
  report.n_inference = x_inf.rows();
  report.fit = glm::fit_mle(selected_columns(x_inf, report.selection), y_inf, opts.glm);

  const double root_n = std::sqrt(static_cast<double>(report.n_inference));
  for (Eigen::Index j = 0; j < k; ++j) {
    SelectiveTest test;
    test.feature_index = report.selection.indices[static_cast<std::size_t>(j)];
    test.t_stat = root_n * report.fit.beta_hat(j);
    test.sigma2 = report.fit.sigma_n_inverse(j, j);
    test.lower = -kInf;
    test.upper = kInf;
    test.p_value = wald_p_value(test.t_stat, test.sigma2);
    test.adjusted_p = opts.bonferroni ? bonferroni(test.p_value, k) : test.p_value;
    test.separation_flag = report.fit.bounded;
    report.tests.push_back(test);
  }
  return report;
}

}  // namespace

SelectiveReport run_asics(const Dataset& ds, Eigen::Index k, const InferenceOptions& opts) {
  SelectiveReport report;
  report.method = Method::asics;
  report.alpha = opts.alpha;
  report.selection = select_top_k(marginal_scores(ds), k);
  report.n_inference = ds.n();
  report.fit = glm::fit_mle(selected_columns(ds.x, report.selection), ds.y, opts.glm);

  const double root_n = std::sqrt(static_cast<double>(ds.n()));
  for (Eigen::Index j = 0; j < k; ++j) {
    SelectiveTest test;
    test.feature_index = report.selection.indices[static_cast<std::size_t>(j)];
    test.t_stat = root_n * report.fit.beta_hat(j);
    test.sigma2 = report.fit.sigma_n_inverse(j, j);
    const Interval bounds = closed_truncation(report.selection, j, test.t_stat, test.sigma2, ds.n());
    test.lower = bounds.lower;
    test.upper = bounds.upper;
    const PValue p = selective_p_value(test.t_stat, test.sigma2, test.lower, test.upper);
    test.p_value = p.p;
    test.saturated = p.saturated;
    test.adjusted_p = opts.bonferroni ? bonferroni(test.p_value, k) : test.p_value;
    test.separation_flag = report.fit.bounded;
    report.tests.push_back(test);
  }
  return report;
}

SelectiveReport run_nominal(const Dataset& ds, Eigen::Index k, const InferenceOptions& opts) {
  return wald_report(ds, ds.x, ds.y, k, Method::nominal, opts);
}

SelectiveReport run_data_splitting(const Dataset& ds, Eigen::Index k, std::span<const Eigen::Index> permutation,
                                   const InferenceOptions& opts) {
  const Eigen::Index n = ds.n();
  if (n < 4) throw std::invalid_argument("data splitting needs at least 4 observations");
  if (static_cast<Eigen::Index>(permutation.size()) != n)
    throw std::invalid_argument("permutation length does not match rows");

  const Eigen::Index n_screen = n / 2;
  const Eigen::Index n_test = n - n_screen;
  Dataset screen;
  screen.x.resize(n_screen, ds.d());
  screen.y.resize(n_screen);
  Eigen::MatrixXd x_test(n_test, ds.d());
  Eigen::VectorXd y_test(n_test);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Eigen::Index row = permutation[static_cast<std::size_t>(r)];
    if (row < 0 || row >= n || seen[static_cast<std::size_t>(row)])
      throw std::invalid_argument("split is not a permutation of the rows");
    seen[static_cast<std::size_t>(row)] = true;
    if (r < n_screen) {
      screen.x.row(r) = ds.x.row(row);
      screen.y(r) = ds.y(row);
    } else {
      x_test.row(r - n_screen) = ds.x.row(row);
      y_test(r - n_screen) = ds.y(row);
    }
  }
  return wald_report(screen, x_test, y_test, k, Method::data_splitting, opts);
}

SelectiveReport run_data_splitting(const Dataset& ds, Eigen::Index k, RandomStream& stream,
                                   const InferenceOptions& opts) {
  std::vector<Eigen::Index> permutation(static_cast<std::size_t>(ds.n()));
  std::iota(permutation.begin(), permutation.end(), Eigen::Index{0});
  std::shuffle(permutation.begin(), permutation.end(), stream);
  return run_data_splitting(ds, k, permutation, opts);
}

SelectiveReport run_method(Method method, const Dataset& ds, Eigen::Index k, RandomStream& stream,
                           const InferenceOptions& opts) {
  switch (method) {
    case Method::asics:
      return run_asics(ds, k, opts);
    case Method::data_splitting:
      return run_data_splitting(ds, k, stream, opts);
    case Method::nominal:
      return run_nominal(ds, k, opts);
  }
  throw std::invalid_argument("unknown method");
}

}  // namespace asics
