#pragma once

namespace asics::truncnorm {

/// Standard normal CDF. Both tails keep full relative precision until the result
/// underflows (|x| around 38).
double std_normal_cdf(double x);

/// Upper tail 1 - Phi(x), computed without cancellation.
double std_normal_sf(double x);

/// Parameters of TN(mu, sigma2, lower, upper). Either bound may be infinite.
struct Params {
  double mu = 0.0;
  double sigma2 = 1.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Throws std::invalid_argument unless sigma2 > 0 and lower < upper.
void validate(const Params& p);

/// CDF of the truncated normal at x; x is clamped into [lower, upper]. Evaluated on the
/// tail the interval sits in, so far truncations keep their precision. Throws
/// DegenerateInterval when the interval mass falls below 1e-300.
double cdf(double x, const Params& p);

/// 1 - cdf(x), evaluated without cancellation.
double sf(double x, const Params& p);

}  // namespace asics::truncnorm
