#pragma once

#include <functional>
#include <span>

namespace asics::stats {

/// One-sample Kolmogorov-Smirnov statistic sup |F_n - F| of `sample` against `cdf`.
double ks_statistic(std::span<const double> sample, const std::function<double(double)>& cdf);

/// KS statistic against Unif(0, 1).
double ks_uniform(std::span<const double> sample);

/// Asymptotic Kolmogorov tail P(sqrt(n) D_n > x) with Stephens' small-sample correction.
double ks_pvalue(double statistic, std::size_t n);

/// Smallest D with ks_pvalue(D, n) <= alpha.
double ks_critical_value(double alpha, std::size_t n);

}  // namespace asics::stats
