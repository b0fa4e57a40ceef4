#include "asics/data.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "asics/error.hpp"
#include "asics/glm.hpp"

namespace asics {

void validate(const Dataset& ds) {
  if (ds.n() < 2) throw std::invalid_argument("dataset needs at least 2 observations");
  if (ds.d() < 1) throw std::invalid_argument("dataset needs at least 1 feature");
  if (ds.y.size() != ds.n()) throw std::invalid_argument("response length does not match rows");
  if (!ds.feature_names.empty() && static_cast<Eigen::Index>(ds.feature_names.size()) != ds.d())
    throw std::invalid_argument("feature_names length does not match columns");
  if (!ds.x.allFinite()) throw std::invalid_argument("design matrix has non-finite entries");
  for (Eigen::Index i = 0; i < ds.n(); ++i) {
    if (ds.y(i) != 0.0 && ds.y(i) != 1.0)
      throw std::invalid_argument("response entries must be 0 or 1");
  }
}

namespace {

struct Entry {
  Eigen::Index row;
  Eigen::Index col;
  double value;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view token, std::size_t line, const char* what) {
  // from_chars rejects a leading '+', which LIBSVM labels use routinely.
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end || token.empty())
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(token) + "'");
  if (!std::isfinite(value)) throw ParseError(line, std::string("non-finite ") + what);
  return value;
}

}  // namespace

Dataset parse_libsvm(std::istream& in, std::optional<Eigen::Index> d_hint) {
  std::vector<double> labels;
  std::vector<Entry> entries;
  Eigen::Index max_index = 0;
  bool saw_zero = false;
  bool saw_minus_one = false;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const Eigen::Index row = static_cast<Eigen::Index>(labels.size());
    std::size_t pos = 0;
    auto next_token = [&]() -> std::string_view {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
      const std::size_t start = pos;
      while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
      return line.substr(start, pos - start);
    };

    const double label = parse_double(next_token(), line_no, "label");
    if (label == 0.0) {
      saw_zero = true;
    } else if (label == -1.0) {
      saw_minus_one = true;
    } else if (label != 1.0) {
      throw ParseError(line_no, "label must be one of 0, 1, -1, +1");
    }
    labels.push_back(label);

    Eigen::Index previous = 0;
    for (auto token = next_token(); !token.empty(); token = next_token()) {
      const auto colon = token.find(':');
      if (colon == std::string_view::npos) throw ParseError(line_no, "expected <index>:<value>");
      const auto idx_text = token.substr(0, colon);
      long long idx = 0;
      auto [ptr, ec] = std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), idx);
      if (ec != std::errc() || ptr != idx_text.data() + idx_text.size() || idx_text.empty())
        throw ParseError(line_no, "bad feature index '" + std::string(idx_text) + "'");
      if (idx < 1) throw ParseError(line_no, "feature indices are 1-based");
      if (idx <= previous) throw ParseError(line_no, "feature indices must be strictly increasing");
      previous = static_cast<Eigen::Index>(idx);
      const double value = parse_double(token.substr(colon + 1), line_no, "feature value");
      entries.push_back({row, previous - 1, value});
      if (previous > max_index) max_index = previous;
    }
  }

  if (labels.empty()) throw FormatError("empty dataset");
  if (saw_zero && saw_minus_one) throw FormatError("mixed label alphabets {0,1} and {-1,+1}");

  const Eigen::Index d = std::max(max_index, d_hint.value_or(0));
  Dataset ds;
  ds.x = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(labels.size()), d);
  ds.y.resize(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) ds.y(static_cast<Eigen::Index>(i)) = labels[i] > 0.0 ? 1.0 : 0.0;
  for (const auto& e : entries) ds.x(e.row, e.col) = e.value;
  return ds;
}

Dataset parse_libsvm(std::string_view text, std::optional<Eigen::Index> d_hint) {
  std::istringstream in{std::string(text)};
  return parse_libsvm(in, d_hint);
}

void write_libsvm(const Dataset& ds, std::ostream& out) {
  char buf[64];
  for (Eigen::Index i = 0; i < ds.n(); ++i) {
    out << (ds.y(i) > 0.5 ? "1" : "0");
    for (Eigen::Index j = 0; j < ds.d(); ++j) {
      if (ds.x(i, j) == 0.0) continue;
      std::snprintf(buf, sizeof buf, " %lld:%.17g", static_cast<long long>(j + 1), ds.x(i, j));
      out << buf;
    }
    out << '\n';
  }
}

Standardized standardize(const Dataset& ds) {
  Standardized result{ds, {}};
  auto& x = result.data.x;
  const double n = static_cast<double>(x.rows());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    auto col = x.col(j);
    col.array() -= col.mean();
    const double sd = std::sqrt(col.squaredNorm() / n);
    if (sd > 0.0) {
      col /= sd;
    } else {
      result.constant_columns.push_back(j);
    }
  }
  return result;
}

Dataset generate_synthetic(const SyntheticDesign& design, RandomStream& stream) {
  if (design.n < 1 || design.d < 1) throw std::invalid_argument("synthetic design needs n, d >= 1");
  if (!(design.rho >= 0.0 && design.rho < 1.0)) throw std::invalid_argument("rho must lie in [0, 1)");
  if (design.beta_star.size() != design.d) throw std::invalid_argument("beta_star length must equal d");

  const double innovation = std::sqrt(1.0 - design.rho * design.rho);
  Dataset ds;
  ds.x.resize(design.n, design.d);
  ds.y.resize(design.n);
  for (Eigen::Index i = 0; i < design.n; ++i) {
    double prev = stream.normal();
    ds.x(i, 0) = prev;
    for (Eigen::Index j = 1; j < design.d; ++j) {
      prev = design.rho * prev + innovation * stream.normal();
      ds.x(i, j) = prev;
    }
    const double eta = ds.x.row(i).dot(design.beta_star);
    ds.y(i) = stream.bernoulli(glm::psi1(eta)) ? 1.0 : 0.0;
  }
  return ds;
}

}  // namespace asics
