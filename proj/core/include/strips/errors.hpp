#pragma once

#include <stdexcept>
#include <string>

namespace strips {

/// A geometry or parameter regime outside what the estimates cover
/// (e.g. the basic metric bound, the twist bound, or an envelope cap).
class hypothesis_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No interval with a positive transverse gap exists; there is nothing to
/// certify.  Thrown by the certificate search when the gap profile vanishes.
class no_certificate_error : public hypothesis_error {
 public:
  using hypothesis_error::hypothesis_error;
};

/// The curvature envelope is too large for the comparison bounds to stay
/// positive.
class envelope_error : public hypothesis_error {
 public:
  using hypothesis_error::hypothesis_error;
};

/// Iterative solver failed to reach the requested tolerance.
class solver_error : public std::runtime_error {
 public:
  solver_error(const std::string& msg, double best_residual, int iterations)
      : std::runtime_error(msg),
        best_residual_(best_residual),
        iterations_(iterations) {}

  double best_residual() const { return best_residual_; }
  int iterations() const { return iterations_; }

 private:
  double best_residual_;
  int iterations_;
};

/// Malformed configuration input (bad JSON, unknown family, missing field).
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace strips
