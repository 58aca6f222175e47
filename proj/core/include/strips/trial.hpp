#pragma once

#include <random>
#include <string>
#include <vector>

#include "strips/function_spec.hpp"

namespace strips {

/// Separable analytic test function psi(s,t) = g(s) X(t) on the strip, with
/// g a sum of smooth bumps and X a Dirichlet mode combination
///   X(t) = sin(pi (t+a)/(2a)) + beta sin(pi (t+a)/a),
/// so psi vanishes exactly at t = +-a and has closed-form partials.
class TrialFunction {
 public:
  TrialFunction(FunctionSpec longitudinal, double a, double second_mode = 0.0);

  double value(double s, double t) const;
  double d_s(double s, double t) const;
  double d_t(double s, double t) const;

  /// Transverse factor X(t) and its derivative (value/d_s/d_t factor through
  /// these, so tabulating them is exact).
  double transverse(double t) const;
  double transverse_derivative(double t) const;

  double a() const { return a_; }
  double second_mode() const { return beta_; }
  const FunctionSpec& longitudinal() const { return longitudinal_; }

  /// Sorted panel breakpoints covering the effective longitudinal support
  /// (where |g| is above ~1e-14 of its scale), refined near each bump.
  std::vector<double> support_breakpoints() const;
  /// Smallest bump width, for panel sizing.
  double min_width() const;

  std::string describe() const;

  struct RandomParams {
    double s0 = 0.0;        // centers drawn from [s0 - 10, s0 + 10]
    double a = 0.5;
    int max_bumps = 3;
    double amp_lo = 0.1, amp_hi = 10.0;
    double width_lo = 0.2, width_hi = 5.0;
    double second_mode_max = 0.5;
  };
  static TrialFunction random(std::mt19937_64& rng, const RandomParams& p);

 private:
  FunctionSpec longitudinal_;
  double a_;
  double beta_;
};

std::vector<TrialFunction> random_trials(std::mt19937_64& rng, int count,
                                         const TrialFunction::RandomParams& p);

/// 1D trial u with u(0) = 0 for the one-dimensional Hardy inequality; the
/// two integrals int u^2/x^2 and int u'^2 are computed exactly for the
/// piecewise-linear kind and by composite Gauss-Legendre otherwise.
class Trial1D {
 public:
  /// u(x) = x (A + B x^2) exp(-alpha x^2 / 2)
  static Trial1D odd_gaussian(double A, double B, double alpha);
  /// u(x) = x^2 e^{-x} for x > 0, zero on the other half-line
  static Trial1D half_line_bump();
  /// Odd piecewise-linear interpolant of sqrt(x) on geometric knots with the
  /// given ratio (> 1), tapered linearly to zero outside [inner, outer].
  /// Its Hardy ratio rises toward 4 as the knots sharpen (ratio -> 1); the
  /// inner cutoff must be tiny, since the first segment from the origin
  /// contributes unit Dirichlet weight at ratio 1 and dilutes the rest.
  static Trial1D sharpened_sqrt_spline(double knot_ratio, double inner = 1e-250,
                                       double outer = 9.0);

  double hardy_lhs() const;   // int u^2 / x^2
  double dirichlet() const;   // int u'^2
  const std::string& describe() const { return label_; }

 private:
  enum class Kind { kSmoothOdd, kHalfLine, kPiecewiseLinear };
  Kind kind_ = Kind::kSmoothOdd;
  double A_ = 1.0, B_ = 0.0, alpha_ = 1.0;
  std::vector<double> knots_, values_;  // piecewise-linear, x >= 0 half
  std::string label_;

  double smooth_value(double x) const;
  double smooth_derivative(double x) const;
};

}  // namespace strips
