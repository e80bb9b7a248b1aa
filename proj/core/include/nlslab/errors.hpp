#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nlslab {

/// Invalid model parameters or run configuration. Carries every violated
/// bound so callers can report them together.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// A numerical procedure failed: non-convergence, step collapse, NaN, or
/// boundary contamination.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nlslab
