#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kirimech {

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotFound : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Raised when a root finder or minimizer cannot meet its tolerance.
/// `residual()` carries the last residual (or gradient norm) reached.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Malformed tabular input. `row()` is 1-based and counts the header line.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t row)
      : std::runtime_error(what), row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

}  // namespace kirimech
