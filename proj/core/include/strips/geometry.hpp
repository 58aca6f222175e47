#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "strips/function_spec.hpp"

namespace strips {

/// Pointwise envelope eps(s) = eps0 / (1 + s^2) bounding the geodesic
/// curvature of a mildly curved strip.
struct CurvatureEnvelope {
  double eps0 = 0.0;

  double operator()(double s) const { return eps0 / (1.0 + s * s); }
};

/// A strip of half-width a in a ruled surface, described by the curvature
/// kappa, torsion tau and ruling angle theta of its reference curve.
///
/// All metric-level quantities enter only through
///   k(s)     = kappa(s) cos(theta(s))      (geodesic curvature)
///   sigma(s) = tau(s) - theta'(s)          (effective twist)
/// and the class treats (k, sigma) as the authoritative data; kappa, tau,
/// theta are one way of producing them.
class StripGeometry {
 public:
  StripGeometry(double half_width, FunctionSpec kappa, FunctionSpec tau,
                FunctionSpec theta);

  double half_width() const { return a_; }

  double k(double s) const;
  double sigma(double s) const;

  /// Safe upper bound for sup |k| (exact when theta is constant).
  double k_sup_bound() const { return k_sup_; }
  /// Safe upper bound for sup |sigma| (triangle inequality on tau, theta').
  double sigma_sup_bound() const { return sigma_sup_; }

  bool sigma_identically_zero() const;

  const FunctionSpec& kappa() const { return kappa_; }
  const FunctionSpec& tau() const { return tau_; }
  const FunctionSpec& theta() const { return theta_; }

  /// Union of the feature points of kappa, tau and theta.
  std::vector<double> feature_points() const;

  nlohmann::ordered_json to_json() const;

 private:
  double a_;
  FunctionSpec kappa_, tau_, theta_;
  double k_sup_, sigma_sup_;
};

/// Lowest transverse Dirichlet eigenvalue pi^2/(2a)^2.
double first_mode_energy(double a);

/// Metric coefficient h(s,t) = sqrt((1 - t k)^2 + t^2 sigma^2).  Requires
/// |t| < a.
double eval_h(const StripGeometry& g, double s, double t);

/// Geodesic-strip coefficient h0(s,t) = sqrt(1 + t^2 sigma^2).
double eval_h0(const StripGeometry& g, double s, double t);

/// Gauss curvature K = -sigma^2 h^{-4} (never positive).
double eval_K(const StripGeometry& g, double s, double t);

/// Curvature from the general formula K = -(d^2 h/dt^2)/h with a central
/// second difference; cross-validates eval_K to O(step^2).  Requires the
/// stencil margin |t| + 2 step < a.
double eval_K_numeric(const StripGeometry& g, double s, double t, double step);

/// Repulsive potential sigma^2 (2 - t^2 sigma^2) / (4 h0^4).  Requires
/// a * sup|sigma| < sqrt(2) so the numerator stays non-negative.
double eval_V(const StripGeometry& g, double s, double t);

/// Two-sided bounds (f-, f+) for h/h0 under the envelope:
///   f-(s) = sqrt(1 - a eps(s)(2 + a eps(s)) / (1 + a^2 sup|sigma|^2))
///   f+(s) = sqrt(1 + a eps(s)(2 + a eps(s)))
/// Throws envelope_error when the f- radicand is not positive
/// (eps0 <= 1/(3a) is always sufficient).
std::pair<double, double> f_bounds(const StripGeometry& g,
                                   const CurvatureEnvelope& env, double s);

struct AssumptionCheck {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct AssumptionReport {
  std::vector<AssumptionCheck> checks;
  bool all_pass = false;

  const AssumptionCheck* find(const std::string& name) const;
  nlohmann::ordered_json to_json() const;
};

/// Evaluates every standing assumption with its computed sup-norm:
///   "basic"            a sup|k|      < 1
///   "twist"            a sup|sigma|  < sqrt(2)
///   "sigma_nonzero"    sigma not identically zero
/// and with an envelope also
///   "envelope_eps0"        eps0 < 1/a
///   "envelope_compliance"  sampled sup of |k(s)| (1+s^2) <= eps0
AssumptionReport check_assumptions(const StripGeometry& g,
                                   const CurvatureEnvelope* env = nullptr);

}  // namespace strips
