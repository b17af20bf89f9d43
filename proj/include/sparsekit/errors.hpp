#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sparsekit {

/// Bad input: out-of-range index, duplicate index, dimension mismatch, ...
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A Cholesky pivot fell below the degeneracy threshold: the requested column
/// is numerically in the span of the columns already selected.
class RankDegenerate : public std::runtime_error {
 public:
  RankDegenerate(const std::string& what, std::size_t column, double pivot)
      : std::runtime_error(what), column_(column), pivot_(pivot) {}
  std::size_t column() const noexcept { return column_; }
  double pivot() const noexcept { return pivot_; }

 private:
  std::size_t column_;
  double pivot_;
};

/// An iterative method did not reach its tolerance. Carries the last iterate.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double last_value, std::vector<double> last_vector)
      : std::runtime_error(what), last_value_(last_value), last_vector_(std::move(last_vector)) {}
  double last_value() const noexcept { return last_value_; }
  const std::vector<double>& last_vector() const noexcept { return last_vector_; }

 private:
  double last_value_;
  std::vector<double> last_vector_;
};

}  // namespace sparsekit
