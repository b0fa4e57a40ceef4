#include "asics/truncnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "asics/error.hpp"

namespace asics::truncnorm {

namespace {

struct Tails {
  double lower;  // Phi(x)
  double upper;  // 1 - Phi(x)
};

// exp(-x^2/2) with x split into a 1/16-grid part and a remainder so the square does not
// lose the low bits of x.
double gaussian_kernel(double x) {
  const double head = std::trunc(x * 16.0) / 16.0;
  const double del = (x - head) * (x + head);
  return std::exp(-head * head * 0.5) * std::exp(-del * 0.5);
}

// Cody's rational Chebyshev approximations for the normal integral (ACM TOMS 715, ANORM),
// accurate to about 18 significant digits in each of three ranges.
Tails both_tails(double x) {
  static constexpr double a[5] = {2.2352520354606839287, 161.02823106855587881, 1067.6894854603709582,
                                  18154.981253343561249, 0.065682337918207449113};
  static constexpr double b[4] = {47.20258190468824187, 976.09855173777669322, 10260.932208618978205,
                                  45507.789335026729956};
  static constexpr double c[9] = {0.39894151208813466764, 8.8831497943883759412, 93.506656132177855979,
                                  597.27027639480026226,  2494.5375852903726711, 6848.1904505362823326,
                                  11602.651437647350124,  9842.7148383839780218, 1.0765576773720192317e-8};
  static constexpr double d[8] = {22.266688044328115691, 235.38790178262499861, 1519.377599407554805,
                                  6485.558298266760755,  18615.571640885098091, 34900.952721145977266,
                                  38912.003286093271411, 19685.429676859990727};
  static constexpr double p[6] = {0.21589853405795699,     0.1274011611602473639, 0.022235277870649807,
                                  0.001421619193227893466, 2.9112874951168792e-5, 0.02307344176494017303};
  static constexpr double q[5] = {1.28426009614491121, 0.468238212480865118, 0.0659881378689285515,
                                  0.00378239633202758244, 7.29751555083966205e-5};
  static constexpr double kSqrt32 = 5.656854249492380195206754896838;
  static constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
  static constexpr double kEps = std::numeric_limits<double>::epsilon() * 0.5;

  if (std::isnan(x)) return {x, x};
  if (std::isinf(x)) return x > 0 ? Tails{1.0, 0.0} : Tails{0.0, 1.0};

  const double y = std::abs(x);
  if (y <= 0.67448975) {
    double num = 0.0;
    double den = 0.0;
    if (y > kEps) {
      const double xsq = x * x;
      num = a[4] * xsq;
      den = xsq;
      for (int i = 0; i < 3; ++i) {
        num = (num + a[i]) * xsq;
        den = (den + b[i]) * xsq;
      }
    }
    const double temp = x * (num + a[3]) / (den + b[3]);
    return {0.5 + temp, 0.5 - temp};
  }

  double small;
  if (y <= kSqrt32) {
    double num = c[8] * y;
    double den = y;
    for (int i = 0; i < 7; ++i) {
      num = (num + c[i]) * y;
      den = (den + d[i]) * y;
    }
    small = gaussian_kernel(y) * (num + c[7]) / (den + d[7]);
  } else {
    const double xsq = 1.0 / (x * x);
    double num = p[5] * xsq;
    double den = xsq;
    for (int i = 0; i < 4; ++i) {
      num = (num + p[i]) * xsq;
      den = (den + q[i]) * xsq;
    }
    double temp = xsq * (num + p[4]) / (den + q[4]);
    temp = (kInvSqrt2Pi - temp) / y;
    small = gaussian_kernel(y) * temp;
  }
  return x > 0 ? Tails{1.0 - small, small} : Tails{small, 1.0 - small};
}

constexpr double kMinMass = 1e-300;

}  // namespace

double std_normal_cdf(double x) { return both_tails(x).lower; }

double std_normal_sf(double x) { return both_tails(x).upper; }

void validate(const Params& p) {
  if (!(p.sigma2 > 0.0) || !std::isfinite(p.sigma2)) throw std::invalid_argument("sigma2 must be positive");
  if (std::isnan(p.lower) || std::isnan(p.upper) || !(p.lower < p.upper))
    throw std::invalid_argument("truncation interval must satisfy lower < upper");
  if (std::isnan(p.mu) || std::isinf(p.mu)) throw std::invalid_argument("mu must be finite");
}

namespace {

// Returns {F, 1 - F}, each evaluated directly rather than as a complement of the other.
Tails evaluate(double x, const Params& p) {
  validate(p);
  if (x <= p.lower) return {0.0, 1.0};
  if (x >= p.upper) return {1.0, 0.0};

  const double sigma = std::sqrt(p.sigma2);
  const Tails a = both_tails((p.lower - p.mu) / sigma);
  const Tails b = both_tails((p.upper - p.mu) / sigma);
  const Tails t = both_tails((x - p.mu) / sigma);

  double mass;
  double f;
  double s;
  if (p.lower - p.mu >= 0.0) {
    mass = a.upper - b.upper;
    f = a.upper - t.upper;
    s = t.upper - b.upper;
  } else if (p.upper - p.mu <= 0.0) {
    mass = b.lower - a.lower;
    f = t.lower - a.lower;
    s = b.lower - t.lower;
  } else {
    mass = 1.0 - a.lower - b.upper;
    f = t.lower - a.lower;
    s = t.upper - b.upper;
  }
  if (!(mass >= kMinMass)) throw DegenerateInterval(p.lower, p.upper);

  f = std::clamp(f / mass, 0.0, 1.0);
  s = std::clamp(s / mass, 0.0, 1.0);
  // The smaller side is the accurate one; derive the other from it.
  if (f <= s) {
    s = 1.0 - f;
  } else {
    f = 1.0 - s;
  }
  return {f, s};
}

}  // namespace

double cdf(double x, const Params& p) { return evaluate(x, p).lower; }

double sf(double x, const Params& p) { return evaluate(x, p).upper; }

}  // namespace asics::truncnorm
