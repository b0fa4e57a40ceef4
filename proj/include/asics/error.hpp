#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace asics {

/// Malformed input text. Carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Input that parses line-by-line but is inconsistent as a whole (e.g. mixed label alphabets).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The selected design block does not have full column rank.
class SingularDesign : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncation interval whose normal mass underflows; the truncated law is numerically undefined.
class DegenerateInterval : public std::domain_error {
 public:
  DegenerateInterval(double lower, double upper)
      : std::domain_error("truncation interval carries no representable mass"),
        lower_(lower),
        upper_(upper) {}

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

/// The selection event does not hold at the observed data.
class SelectionEventViolated : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace asics
