#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asics/rng.hpp"

namespace asics {

/// Observations in rows, features in columns; binary response coded 0/1.
struct Dataset {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  std::vector<std::string> feature_names;  // empty, or one label per column

  Eigen::Index n() const { return x.rows(); }
  Eigen::Index d() const { return x.cols(); }
};

/// Throws std::invalid_argument when `ds` violates the Dataset invariants
/// (n >= 2, d >= 1, finite x, y in {0,1}, matching sizes).
void validate(const Dataset& ds);

/// Gaussian AR(1) design with a logistic response.
struct SyntheticDesign {
  Eigen::Index n = 0;
  Eigen::Index d = 0;
  double rho = 0.0;  // in [0, 1)
  Eigen::VectorXd beta_star;
};

/// Reads LIBSVM text: `<label> <idx>:<val> ...` per line, 1-based strictly increasing
/// indices, `#` starts a comment. Labels {-1,+1} map to {0,1}. The column count is the
/// largest index seen, or `d_hint` when that is larger.
Dataset parse_libsvm(std::istream& in, std::optional<Eigen::Index> d_hint = std::nullopt);
Dataset parse_libsvm(std::string_view text, std::optional<Eigen::Index> d_hint = std::nullopt);

/// Writes the nonzero entries of `ds` in LIBSVM form with 0/1 labels and round-trip precision.
void write_libsvm(const Dataset& ds, std::ostream& out);

struct Standardized {
  Dataset data;
  std::vector<Eigen::Index> constant_columns;  // centered to zero, not scaled
};

/// Centers every column and scales it to unit population standard deviation (1/n).
Standardized standardize(const Dataset& ds);

/// Draws rows x_i ~ N(0, Sigma) with Sigma_jk = rho^|j-k| via the AR(1) recursion and
/// y_i ~ Bernoulli(sigmoid(x_i' beta_star)). Rows are drawn in order from `stream`.
Dataset generate_synthetic(const SyntheticDesign& design, RandomStream& stream);

}  // namespace asics
