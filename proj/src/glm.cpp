#include "asics/glm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "asics/error.hpp"

namespace asics::glm {

namespace {

// Reciprocal condition estimates below this are treated as rank deficiency.
constexpr double kRcondFloor = 1e-13;
constexpr double kMinStep = 1e-12;
constexpr double kStepTol = 1e-8;

// l_n(eta + delta) - l_n(eta), summed term by term so that increments far below the
// rounding level of l_n itself keep their sign.
double likelihood_increment(const Eigen::VectorXd& eta, const Eigen::VectorXd& delta, const Eigen::VectorXd& y) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i)
    total += y(i) * delta(i) - std::log1p(psi1(eta(i)) * std::expm1(delta(i)));
  return total;
}

// Largest t in [0, 1] keeping max_i |x_i'(beta + t*step)| <= bound.
double box_step(const Eigen::VectorXd& eta, const Eigen::VectorXd& direction, double bound) {
  double t = 1.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    const double a = direction(i);
    if (a > 0.0) {
      t = std::min(t, (bound - eta(i)) / a);
    } else if (a < 0.0) {
      t = std::min(t, (-bound - eta(i)) / a);
    }
  }
  return std::max(t, 0.0);
}

}  // namespace

FittedLogistic fit_mle(const Eigen::MatrixXd& xs, const Eigen::VectorXd& y, const FitConfig& config,
                       const std::optional<Eigen::VectorXd>& start) {
  const Eigen::Index n = xs.rows();
  const Eigen::Index k = xs.cols();
  if (k < 1) throw std::invalid_argument("fit_mle needs at least one column");
  if (y.size() != n) throw std::invalid_argument("response length does not match rows");

  {
    const Eigen::MatrixXd info0 = observed_information(Eigen::VectorXd::Zero(k), xs);
    Eigen::LLT<Eigen::MatrixXd> llt(info0);
    if (llt.info() != Eigen::Success || llt.rcond() < kRcondFloor)
      throw SingularDesign("selected design block is rank deficient");
  }

  FittedLogistic fit;
  Eigen::VectorXd beta = start.value_or(Eigen::VectorXd::Zero(k));
  if (beta.size() != k) throw std::invalid_argument("start has the wrong length");
  Eigen::VectorXd eta = xs * beta;
  if (eta.cwiseAbs().maxCoeff() > config.xi_tilde)
    throw std::invalid_argument("start lies outside the parameter space");

  const double threshold = config.tol * static_cast<double>(n);
  double objective = log_likelihood(beta, xs, y);
  fit.objective_path.push_back(objective);
  Eigen::VectorXd grad = gradient(beta, xs, y);

  while (true) {
    const bool small_gradient = grad.cwiseAbs().maxCoeff() < threshold;
    if (fit.iterations >= config.max_iter) {
      fit.converged = small_gradient;
      break;
    }

    const Eigen::MatrixXd hessian = observed_information(beta, xs) * static_cast<double>(n);
    Eigen::LLT<Eigen::MatrixXd> llt(hessian);
    if (llt.info() != Eigen::Success) {
      fit.converged = small_gradient;
      break;
    }
    const Eigen::VectorXd step = llt.solve(grad);
    if (small_gradient && step.cwiseAbs().maxCoeff() <= kStepTol * (1.0 + beta.cwiseAbs().maxCoeff())) {
      fit.converged = true;
      break;
    }
    const Eigen::VectorXd direction = xs * step;

    double t = box_step(eta, direction, config.xi_tilde);
    if (t < kMinStep) {  // pinned against the box
      fit.converged = small_gradient;
      break;
    }
    double gain = likelihood_increment(eta, t * direction, y);
    while (!(gain >= 0.0) && t >= kMinStep) {
      t *= 0.5;
      gain = likelihood_increment(eta, t * direction, y);
    }
    if (t < kMinStep) {  // no ascent left at working precision
      fit.converged = small_gradient;
      break;
    }

    beta += t * step;
    eta = xs * beta;
    objective += gain;
    fit.objective_path.push_back(objective);
    grad = gradient(beta, xs, y);
    ++fit.iterations;
  }

  fit.beta_hat = beta;
  fit.final_score_norm = grad.cwiseAbs().maxCoeff();
  fit.bounded = eta.cwiseAbs().maxCoeff() >= config.xi_tilde * (1.0 - 1e-9);
  fit.sigma_n_matrix = observed_information(beta, xs);
  Eigen::LLT<Eigen::MatrixXd> llt(fit.sigma_n_matrix);
  if (llt.info() != Eigen::Success)
    throw SingularDesign("observed information is not positive definite at the estimate");
  fit.sigma_n_inverse = llt.solve(Eigen::MatrixXd::Identity(k, k));
  return fit;
}

}  // namespace asics::glm
