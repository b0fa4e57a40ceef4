#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <vector>

namespace asics::glm {

// Cumulant function of the Bernoulli family and its first two derivatives.

/// log(1 + e^t), evaluated without overflow.
template <typename Scalar>
Scalar psi(Scalar t) {
  using std::abs, std::exp, std::log1p, std::max;
  return max(t, Scalar(0)) + log1p(exp(-abs(t)));
}

/// Logistic sigmoid. Only ever exponentiates a non-positive argument.
template <typename Scalar>
Scalar psi1(Scalar t) {
  using std::exp;
  if (t >= Scalar(0)) return Scalar(1) / (Scalar(1) + exp(-t));
  const Scalar e = exp(t);
  return e / (Scalar(1) + e);
}

template <typename Scalar>
Scalar psi2(Scalar t) {
  const Scalar p = psi1(t);
  return p * (Scalar(1) - p);
}

/// l_n(beta) = sum_i { y_i x_i'beta - psi(x_i'beta) }.
template <typename DerivedB, typename DerivedX, typename DerivedY>
typename DerivedX::Scalar log_likelihood(const Eigen::MatrixBase<DerivedB>& beta,
                                         const Eigen::MatrixBase<DerivedX>& xs,
                                         const Eigen::MatrixBase<DerivedY>& y) {
  using Scalar = typename DerivedX::Scalar;
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> eta = xs * beta;
  Scalar total(0);
  for (Eigen::Index i = 0; i < eta.size(); ++i) total += y(i) * eta(i) - psi(eta(i));
  return total;
}

/// Unnormalized gradient l_n'(beta) = X'(y - psi'(X beta)).
template <typename DerivedB, typename DerivedX, typename DerivedY>
Eigen::Matrix<typename DerivedX::Scalar, Eigen::Dynamic, 1> gradient(const Eigen::MatrixBase<DerivedB>& beta,
                                                                     const Eigen::MatrixBase<DerivedX>& xs,
                                                                     const Eigen::MatrixBase<DerivedY>& y) {
  using Scalar = typename DerivedX::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> resid = xs * beta;
  for (Eigen::Index i = 0; i < resid.size(); ++i) resid(i) = y(i) - psi1(resid(i));
  return xs.transpose() * resid;
}

/// Score s_n(beta) = l_n'(beta) / sqrt(n).
template <typename DerivedB, typename DerivedX, typename DerivedY>
Eigen::Matrix<typename DerivedX::Scalar, Eigen::Dynamic, 1> score(const Eigen::MatrixBase<DerivedB>& beta,
                                                                  const Eigen::MatrixBase<DerivedX>& xs,
                                                                  const Eigen::MatrixBase<DerivedY>& y) {
  using std::sqrt;
  using Scalar = typename DerivedX::Scalar;
  return gradient(beta, xs, y) / sqrt(static_cast<Scalar>(xs.rows()));
}

/// Observed information Sigma_n(beta) = (1/n) X' W X with W = diag(psi''(X beta)).
template <typename DerivedB, typename DerivedX>
Eigen::Matrix<typename DerivedX::Scalar, Eigen::Dynamic, Eigen::Dynamic> observed_information(
    const Eigen::MatrixBase<DerivedB>& beta, const Eigen::MatrixBase<DerivedX>& xs) {
  using Scalar = typename DerivedX::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w = xs * beta;
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = psi2(w(i));
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> info = xs.transpose() * w.asDiagonal() * xs;
  info = (info + info.transpose()).eval() / Scalar(2);
  return info / static_cast<Scalar>(xs.rows());
}

struct FitConfig {
  double tol = 1e-10;      // stop when ||l_n'||_inf < tol * n
  int max_iter = 100;
  double xi_tilde = 30.0;  // parameter space: max_i |x_i'beta| <= xi_tilde
};

struct FittedLogistic {
  Eigen::VectorXd beta_hat;
  Eigen::MatrixXd sigma_n_matrix;   // Sigma_n(beta_hat)
  Eigen::MatrixXd sigma_n_inverse;
  int iterations = 0;
  double final_score_norm = 0.0;    // ||l_n'(beta_hat)||_inf, unnormalized
  bool converged = false;
  bool bounded = false;             // the parameter-space box was active at exit
  std::vector<double> objective_path;  // l_n at the start, then after each accepted step
};

/// Damped Newton ascent on l_n over the box max_i |x_i'beta| <= xi_tilde, from `start`
/// (zero by default). Stops once ||l_n'||_inf < tol * n and the Newton step is negligible.
/// Throws SingularDesign when xs is rank deficient.
FittedLogistic fit_mle(const Eigen::MatrixXd& xs, const Eigen::VectorXd& y, const FitConfig& config = {},
                       const std::optional<Eigen::VectorXd>& start = std::nullopt);

}  // namespace asics::glm
