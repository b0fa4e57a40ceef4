#pragma once

// Reference computations used only for verification (selftest and the test suites). None of
// them share code with the production paths they check.

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

#include "asics/truncnorm.hpp"

namespace asics::oracles {

/// Integral of the standard normal density over [a, b] by Gauss-Kronrod on unit-width panels
/// in long double. Infinite ends are cut at 40 sd, past which the density is below 1e-348.
inline long double normal_mass(long double a, long double b) {
  constexpr long double kCut = 40.0L;
  a = std::max(a, -kCut);
  b = std::min(b, kCut);
  if (!(a < b)) return 0.0L;
  const auto density = [](long double t) {
    return std::exp(-0.5L * t * t) * 0.398942280401432677939946059934381868L;
  };
  long double total = 0.0L;
  for (long double lo = a; lo < b; lo += 1.0L) {
    const long double hi = std::min(lo + 1.0L, b);
    total += boost::math::quadrature::gauss_kronrod<long double, 61>::integrate(density, lo, hi, 8, 1e-16L);
  }
  return total;
}

/// Truncated normal CDF as a ratio of two quadratures.
inline double truncnorm_cdf(double x, const truncnorm::Params& p) {
  if (x <= p.lower) return 0.0;
  if (x >= p.upper) return 1.0;
  const long double sigma = std::sqrt(static_cast<long double>(p.sigma2));
  const long double a = (p.lower - static_cast<long double>(p.mu)) / sigma;
  const long double b = (p.upper - static_cast<long double>(p.mu)) / sigma;
  const long double t = (x - static_cast<long double>(p.mu)) / sigma;
  return static_cast<double>(normal_mass(a, t) / normal_mass(a, b));
}

/// Central-difference gradient of a scalar function.
template <typename F>
Eigen::VectorXd fd_gradient(const F& f, const Eigen::VectorXd& at, double h) {
  Eigen::VectorXd g(at.size());
  for (Eigen::Index i = 0; i < at.size(); ++i) {
    Eigen::VectorXd up = at;
    Eigen::VectorXd down = at;
    up(i) += h;
    down(i) -= h;
    g(i) = (f(up) - f(down)) / (2.0 * h);
  }
  return g;
}

/// Central-difference Hessian of a scalar function.
template <typename F>
Eigen::MatrixXd fd_hessian(const F& f, const Eigen::VectorXd& at, double h) {
  const Eigen::Index k = at.size();
  Eigen::MatrixXd hess(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      auto shifted = [&](double si, double sj) {
        Eigen::VectorXd v = at;
        v(i) += si * h;
        v(j) += sj * h;
        return f(v);
      };
      hess(i, j) = (shifted(1, 1) - shifted(1, -1) - shifted(-1, 1) + shifted(-1, -1)) / (4.0 * h * h);
    }
  }
  return hess;
}

}  // namespace asics::oracles
