#pragma once

#include <stdexcept>
#include <string>

namespace spectra {

// A caller-supplied parameter is outside an operation's domain.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The input graph does not satisfy an operation's structural precondition
// (disconnected, too large for an exact path, and so on).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Subdivision of an internal path was requested on the one graph family for
// which it leaves the spectral radius unchanged.
class ExemptionError : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

class NumericFailure : public std::runtime_error {
 public:
  NumericFailure(const std::string& what, long iterations, double residual)
      : std::runtime_error(what + " (iterations=" + std::to_string(iterations) +
                           ", residual=" + std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}

  long iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  long iterations_;
  double residual_;
};

}  // namespace spectra
