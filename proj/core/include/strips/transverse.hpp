#pragma once

#include <iosfwd>
#include <vector>

#include "strips/geometry.hpp"

namespace strips {

struct TransverseResult {
  double s = 0.0;
  double lambda_sl = 0.0;
  double lambda_schrodinger = 0.0;
  int n_points = 0;
  double discrepancy = 0.0;
};

/// Transverse spectral gap lambda(s): smallest eigenvalue of the weighted
/// pencil -(h0 phi')' = mu h0 phi on (-a,a) with Dirichlet ends, minus the
/// discrete flat first-mode energy on the same grid (so the gap vanishes
/// identically where sigma does).  Values within 1e-10 below zero are
/// clamped to zero.
///
/// Requires n >= 16 and a sup|sigma| < sqrt(2).
double lambda_sl(const StripGeometry& g, double s, int n = 2048);

/// Same quantity from the unitarily equivalent potential form
/// -phi'' + V(s,.) phi.
double lambda_schrodinger(const StripGeometry& g, double s, int n = 2048);

/// Kernel shared by both accessors: the gap as a function of a and the local
/// squared twist only.
double lambda_sl_for(double a, double sigma_sq, int n);
double lambda_schrodinger_for(double a, double sigma_sq, int n);

/// Both formulations on a uniform inclusive s-sample.
std::vector<TransverseResult> lambda_profile(const StripGeometry& g, double s_min,
                                             double s_max, int n_s, int n_t = 2048);

/// CSV columns: s, lambda, lambda_alt, discrepancy.
void write_profile_csv(std::ostream& os, const std::vector<TransverseResult>& rows);

/// Chebyshev interpolant of the map sigma^2 -> lambda on [0, y_max]; the
/// transverse problem at s depends on s only through sigma(s)^2, so one such
/// table serves a whole geometry.  Interpolation error is spectrally small
/// (the map is analytic).
class LambdaInterpolant {
 public:
  LambdaInterpolant(double a, double y_max, int n_nodes = 65, int transverse_n = 2048);

  double operator()(double sigma_sq) const;

  double a() const { return a_; }
  double y_max() const { return y_max_; }

 private:
  double a_;
  double y_max_;
  std::vector<double> y_, val_, wbary_;
};

}  // namespace strips
