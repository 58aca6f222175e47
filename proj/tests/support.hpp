#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "strips/function_spec.hpp"
#include "strips/geometry.hpp"
#include "strips/operators.hpp"

namespace testsupport {

inline strips::FunctionSpec zero() { return strips::FunctionSpec::constant(0.0); }

/// Flat plane geometry: k = 0, sigma = 0.
inline strips::StripGeometry flat(double a) {
  return strips::StripGeometry(a, zero(), zero(), zero());
}

/// Constant effective twist sigma = tau (kappa = theta = 0).
inline strips::StripGeometry const_twist(double a, double tau) {
  return strips::StripGeometry(a, zero(), strips::FunctionSpec::constant(tau), zero());
}

/// Constant geodesic curvature k = kappa (theta = 0) plus constant twist.
inline strips::StripGeometry const_kt(double a, double k, double tau) {
  return strips::StripGeometry(a, strips::FunctionSpec::constant(k),
                               strips::FunctionSpec::constant(tau), zero());
}

/// Empirical convergence order from errors at step h and h/2.
inline double fitted_order(double err_h, double err_h2) {
  return std::log2(err_h / err_h2);
}

/// Brute-force oracle: smallest generalized eigenvalue of a tridiagonal pair
/// by a full dense QL eigensolve of the standard form.  Independent of the
/// Sturm-bisection path.
inline double dense_tridiag_smallest(const strips::TridiagonalPair& T) {
  Eigen::VectorXd cd, co;
  T.standard_form(cd, co);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(cd, co, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

}  // namespace testsupport
