#include "asics/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace asics::stats {

double ks_statistic(std::span<const double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("KS statistic of an empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_uniform(std::span<const double> sample) {
  return ks_statistic(sample, [](double u) { return std::clamp(u, 0.0, 1.0); });
}

double ks_pvalue(double statistic, std::size_t n) {
  const double rn = std::sqrt(static_cast<double>(n));
  const double x = (rn + 0.12 + 0.11 / rn) * statistic;
  if (x < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_critical_value(double alpha, std::size_t n) {
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ks_pvalue(mid, n) > alpha ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace asics::stats
