#include <gtest/gtest.h>

#include <cmath>

#include "asics/data.hpp"
#include "asics/error.hpp"
#include "asics/glm.hpp"
#include "asics/oracles.hpp"

using namespace asics;

namespace {

struct Problem {
  Eigen::MatrixXd xs;
  Eigen::VectorXd y;
};

Problem random_problem(RandomStream& rng, Eigen::Index n, Eigen::Index k, double signal) {
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);
  for (Eigen::Index j = 0; j < k; ++j) beta(j) = signal * rng.normal();
  const Dataset ds = generate_synthetic({n, k, 0.3, beta}, rng);
  return {ds.x, ds.y};
}

}  // namespace

TEST(LogLikelihood, ClosedForms) {
  const Eigen::MatrixXd x = Eigen::MatrixXd::Ones(6, 1);
  const Eigen::VectorXd y = (Eigen::VectorXd(6) << 1, 0, 1, 1, 0, 0).finished();
  EXPECT_NEAR(glm::log_likelihood(Eigen::VectorXd::Zero(1), x, y), -6.0 * std::log(2.0), 1e-14);

  const Eigen::MatrixXd one = Eigen::MatrixXd::Ones(1, 1);
  const Eigen::VectorXd y1 = Eigen::VectorXd::Ones(1);
  EXPECT_NEAR(glm::log_likelihood(Eigen::VectorXd::Zero(1), one, y1), -0.693147180559945, 1e-14);
  const double t = 0.7;
  EXPECT_NEAR(glm::log_likelihood(Eigen::VectorXd::Constant(1, t), one, y1), t - std::log1p(std::exp(t)), 1e-15);
  const double sat = glm::log_likelihood(Eigen::VectorXd::Constant(1, 1000.0), one, y1);
  EXPECT_TRUE(std::isfinite(sat));
  EXPECT_NEAR(sat, 0.0, 1e-300);
}

TEST(Score, ClosedForms) {
  const Eigen::VectorXd y = (Eigen::VectorXd(4) << 1, 0, 0, 1).finished();
  EXPECT_NEAR(glm::score(Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Ones(4, 1), y)(0), 0.0, 1e-15);

  RandomStream rng(1, 0);
  Eigen::MatrixXd x(9, 3);
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = rng.normal();
  const Eigen::VectorXd expected = x.colwise().sum().transpose() / (2.0 * 3.0);
  const Eigen::VectorXd got = glm::score(Eigen::VectorXd::Zero(3), x, Eigen::VectorXd::Ones(9));
  EXPECT_LT((got - expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Score, MatchesFiniteDifferences) {
  RandomStream rng(2, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const Problem p = random_problem(rng, 20 + rep, 1 + rep % 6, 1.0);
    Eigen::VectorXd beta(p.xs.cols());
    for (Eigen::Index j = 0; j < beta.size(); ++j) beta(j) = rng.normal();
    const double root_n = std::sqrt(static_cast<double>(p.xs.rows()));
    const auto f = [&](const Eigen::VectorXd& b) { return glm::log_likelihood(b, p.xs, p.y) / root_n; };
    const Eigen::VectorXd fd = oracles::fd_gradient(f, beta, 1e-5);
    EXPECT_LT((glm::score(beta, p.xs, p.y) - fd).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(Information, ClosedForms) {
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(5, 1);
  EXPECT_NEAR(glm::observed_information(Eigen::VectorXd::Zero(1), ones)(0, 0), 0.25, 1e-15);
  RandomStream rng(4, 0);
  Eigen::MatrixXd x(12, 1);
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = rng.normal();
  const double base = glm::observed_information(Eigen::VectorXd::Zero(1), x)(0, 0);
  const Eigen::MatrixXd twice = 2.0 * x;
  EXPECT_NEAR(glm::observed_information(Eigen::VectorXd::Zero(1), twice)(0, 0), 4.0 * base, 1e-14);
}

TEST(Information, MatchesFiniteDifferences) {
  RandomStream rng(3, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const Problem p = random_problem(rng, 20 + rep, 1 + rep % 6, 1.0);
    Eigen::VectorXd beta(p.xs.cols());
    for (Eigen::Index j = 0; j < beta.size(); ++j) beta(j) = 0.5 * rng.normal();
    const auto f = [&](const Eigen::VectorXd& b) { return glm::log_likelihood(b, p.xs, p.y); };
    const Eigen::MatrixXd fd = -oracles::fd_hessian(f, beta, 1e-4) / static_cast<double>(p.xs.rows());
    EXPECT_LT((glm::observed_information(beta, p.xs) - fd).cwiseAbs().maxCoeff(), 1e-5);
  }
}

TEST(Information, EqualsWeightedGram) {
  RandomStream rng(6, 0);
  const Problem p = random_problem(rng, 80, 5, 1.0);
  Eigen::VectorXd beta(5);
  for (Eigen::Index j = 0; j < 5; ++j) beta(j) = rng.normal();
  const Eigen::VectorXd eta = p.xs * beta;
  Eigen::VectorXd w(eta.size());
  for (Eigen::Index i = 0; i < eta.size(); ++i) w(i) = glm::psi2(eta(i));
  const Eigen::MatrixXd gram = p.xs.transpose() * w.asDiagonal() * p.xs / 80.0;
  EXPECT_LT((glm::observed_information(beta, p.xs) - gram).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(FitMle, InterceptOnly) {
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(4, 1);
  const auto balanced = glm::fit_mle(ones, Eigen::Vector4d(0, 1, 0, 1));
  EXPECT_TRUE(balanced.converged);
  EXPECT_NEAR(balanced.beta_hat(0), 0.0, 1e-12);
  const auto skewed = glm::fit_mle(ones, Eigen::Vector4d(1, 1, 1, 0));
  EXPECT_TRUE(skewed.converged);
  EXPECT_FALSE(skewed.bounded);
  EXPECT_NEAR(skewed.beta_hat(0), std::log(3.0), 1e-9);
}

TEST(FitMle, CompleteSeparationHitsTheBox) {
  const auto fit = glm::fit_mle(Eigen::Vector2d(-1, 1), Eigen::Vector2d(0, 1));
  EXPECT_TRUE(fit.bounded);
  EXPECT_NEAR(std::abs(fit.beta_hat(0)), 30.0, 1e-6);
}

TEST(FitMle, RankDeficientDesignThrows) {
  Eigen::MatrixXd xs(4, 2);
  xs << 1, 2, 2, 4, 3, 6, 4, 8;
  EXPECT_THROW(glm::fit_mle(xs, Eigen::Vector4d(0, 1, 1, 0)), SingularDesign);
}

TEST(FitMle, LocalOptimalityAndMonotonePath) {
  RandomStream rng(9, 0);
  int checked = 0;
  for (int rep = 0; rep < 40; ++rep) {
    const Problem p = random_problem(rng, 60 + 10 * rep, 1 + rep % 8, 0.5);
    const auto fit = glm::fit_mle(p.xs, p.y);
    for (std::size_t i = 1; i < fit.objective_path.size(); ++i)
      ASSERT_GE(fit.objective_path[i], fit.objective_path[i - 1]);
    if (fit.bounded) continue;
    ++checked;
    const double best = glm::log_likelihood(fit.beta_hat, p.xs, p.y);
    for (int s = 0; s < 100; ++s) {
      Eigen::VectorXd dir(fit.beta_hat.size());
      for (Eigen::Index j = 0; j < dir.size(); ++j) dir(j) = rng.normal();
      const Eigen::VectorXd other = fit.beta_hat + dir.normalized() * rng.uniform();
      ASSERT_GE(best, glm::log_likelihood(other, p.xs, p.y));
    }
  }
  EXPECT_GT(checked, 30);
}

TEST(FitMle, RefitsFromRandomStartsAgree) {
  RandomStream rng(10, 0);
  for (int rep = 0; rep < 40; ++rep) {
    const Problem p = random_problem(rng, 100 + 5 * rep, 1 + rep % 5, 0.5);
    const auto fit = glm::fit_mle(p.xs, p.y);
    if (fit.bounded) continue;
    EXPECT_TRUE(fit.converged);
    EXPECT_LT(fit.final_score_norm, 1e-10 * static_cast<double>(p.xs.rows()));
    for (int s = 0; s < 5; ++s) {
      Eigen::VectorXd start(fit.beta_hat.size());
      for (Eigen::Index j = 0; j < start.size(); ++j) start(j) = rng.normal();
      start *= 0.9 * 30.0 * rng.uniform() / (p.xs * start).cwiseAbs().maxCoeff();
      const auto again = glm::fit_mle(p.xs, p.y, {}, start);
      EXPECT_LT((again.beta_hat - fit.beta_hat).cwiseAbs().maxCoeff(), 1e-6);
    }
  }
}
