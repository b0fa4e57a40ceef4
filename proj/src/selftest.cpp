#include "asics/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "asics/error.hpp"
#include "asics/oracles.hpp"
#include "asics/truncnorm.hpp"

namespace asics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename Body>
SuiteResult timed(std::string name, Body&& body) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult r;
  r.name = std::move(name);
  body(r);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

void truncnorm_suite(SuiteResult& r) {
  const truncnorm::Params shapes[] = {
      {0.0, 1.0, -kInf, kInf}, {0.0, 1.0, 0.0, 2.0},  {0.0, 1.0, 5.0, 7.0},  {0.0, 1.0, -7.0, -5.0},
      {1.5, 4.0, 2.0, kInf},   {-1.0, 0.25, -kInf, 0.0}, {0.0, 9.0, 20.0, kInf}, {0.0, 1.0, -0.5, 0.5},
  };
  double worst = 0.0;
  bool finite = true;
  for (const auto& p : shapes) {
    const double lo = std::isinf(p.lower) ? p.mu - 6.0 * std::sqrt(p.sigma2) : p.lower;
    const double hi = std::isinf(p.upper) ? p.mu + 6.0 * std::sqrt(p.sigma2) : p.upper;
    for (int i = 0; i <= 10; ++i) {
      const double x = lo + (hi - lo) * i / 10.0;
      const double got = truncnorm::cdf(x, p);
      finite = finite && std::isfinite(got);
      worst = std::max(worst, std::abs(got - oracles::truncnorm_cdf(x, p)));
      ++r.cases;
    }
  }
  r.worst_error = worst;
  r.passed = finite && worst < 1e-10;
}

void polyhedral_suite(SuiteResult& r, const SelftestOptions& options) {
  RandomStream stream(options.seed, 1);
  double worst = 0.0;
  bool ok = true;
  for (int instance = 0; instance < 60; ++instance) {
    const Eigen::Index n = 20 + static_cast<Eigen::Index>(stream.uniform() * 200);
    const Eigen::Index d = 5 + static_cast<Eigen::Index>(stream.uniform() * 120);
    const Eigen::Index k = 1 + static_cast<Eigen::Index>(stream.uniform() * std::min<double>(8.0, d));
    const double rho = instance % 3 == 0 ? 0.0 : (instance % 3 == 1 ? 0.5 : 0.9);
    const Dataset ds = generate_synthetic({n, d, rho, Eigen::VectorXd::Zero(d)}, stream);
    const ScreeningSelection sel = select_top_k(marginal_scores(ds), k);
    for (Eigen::Index j = 0; j < k; ++j) {
      const double t = 4.0 * stream.normal();
      const double sigma2 = 0.5 + 10.0 * stream.uniform();
      const Interval closed = options.closed(sel, j, t, sigma2, n);
      PolyhedralTruncation poly{};
      try {
        poly = polyhedral_truncation_oracle(sel, j, t, sigma2, n);
      } catch (const SelectionEventViolated&) {
        ok = false;
        continue;
      }
      const auto gap = [](double a, double b) {
        if (std::isinf(a) || std::isinf(b)) return a == b ? 0.0 : kInf;
        return std::abs(a - b);
      };
      worst = std::max({worst, gap(closed.lower, poly.lower), gap(closed.upper, poly.upper)});
      ok = ok && poly.n_slack >= 0.0 && closed.lower <= t && t <= closed.upper;
      ++r.cases;
    }
  }
  r.worst_error = worst;
  r.passed = ok && worst < 1e-10;
}

void derivative_suite(SuiteResult& r, const SelftestOptions& options) {
  RandomStream stream(options.seed, 2);
  double worst = 0.0;
  bool ok = true;
  for (int instance = 0; instance < 20; ++instance) {
    const Eigen::Index n = 10 + static_cast<Eigen::Index>(stream.uniform() * 60);
    const Eigen::Index k = 1 + static_cast<Eigen::Index>(stream.uniform() * 5);
    Eigen::MatrixXd xs(n, k);
    Eigen::VectorXd y(n);
    Eigen::VectorXd beta(k);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index c = 0; c < k; ++c) xs(i, c) = stream.normal();
      y(i) = stream.bernoulli(0.5) ? 1.0 : 0.0;
    }
    for (Eigen::Index c = 0; c < k; ++c) beta(c) = 0.5 * stream.normal();

    const double root_n = std::sqrt(static_cast<double>(n));
    const auto scaled_ll = [&](const Eigen::VectorXd& b) { return glm::log_likelihood(b, xs, y) / root_n; };
    const auto ll = [&](const Eigen::VectorXd& b) { return glm::log_likelihood(b, xs, y); };
    const double score_err = (glm::score(beta, xs, y) - oracles::fd_gradient(scaled_ll, beta, 1e-5)).cwiseAbs().maxCoeff();
    const Eigen::MatrixXd info_fd = -oracles::fd_hessian(ll, beta, 1e-4) / static_cast<double>(n);
    const double info_err = (glm::observed_information(beta, xs) - info_fd).cwiseAbs().maxCoeff();
    ok = ok && score_err < 1e-6 && info_err < 1e-5;
    worst = std::max({worst, score_err, info_err});
    ++r.cases;
  }
  r.worst_error = worst;
  r.passed = ok;
}

}  // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& options) {
  std::vector<SuiteResult> results;
  results.push_back(timed("truncnorm-quadrature", truncnorm_suite));
  results.push_back(timed("polyhedral-vs-closed-form", [&](SuiteResult& r) { polyhedral_suite(r, options); }));
  results.push_back(timed("finite-difference-derivatives", [&](SuiteResult& r) { derivative_suite(r, options); }));
  return results;
}

}  // namespace asics
