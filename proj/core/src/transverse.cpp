#include "strips/transverse.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "strips/assemble.hpp"
#include "strips/eigensolver.hpp"
#include "strips/errors.hpp"

namespace strips {

namespace {

void require_hypotheses(const StripGeometry& g, int n, const char* who) {
  if (n < 16) {
    throw std::invalid_argument(std::string(who) + ": n >= 16 required");
  }
  if (!(g.half_width() * g.sigma_sup_bound() < std::numbers::sqrt2)) {
    throw hypothesis_error(std::string(who) +
                           ": requires a * sup|sigma| < sqrt(2)");
  }
}

double clamp_gap(double gap) {
  return (gap < 0.0 && gap > -1e-10) ? 0.0 : gap;
}

double solve_gap(const TridiagonalPair& T, double a, int n) {
  EigOptions opt;
  opt.tol = 1e-8;
  const double mu = smallest_eig(T, opt).value;
  return clamp_gap(mu - discrete_first_mode_energy(a, n));
}

}  // namespace

double lambda_sl_for(double a, double sigma_sq, int n) {
  // With no twist the weighted problem *is* the flat reference problem, so
  // the discrete gap is exactly zero; skip the solve rather than return its
  // rounding noise.
  if (sigma_sq == 0.0) return 0.0;
  return solve_gap(assemble_transverse(a, sigma_sq, n), a, n);
}

double lambda_schrodinger_for(double a, double sigma_sq, int n) {
  if (sigma_sq == 0.0) return 0.0;
  return solve_gap(assemble_transverse_schrodinger(a, sigma_sq, n), a, n);
}

double lambda_sl(const StripGeometry& g, double s, int n) {
  require_hypotheses(g, n, "lambda_sl");
  const double sg = g.sigma(s);
  return lambda_sl_for(g.half_width(), sg * sg, n);
}

double lambda_schrodinger(const StripGeometry& g, double s, int n) {
  require_hypotheses(g, n, "lambda_schrodinger");
  const double sg = g.sigma(s);
  return lambda_schrodinger_for(g.half_width(), sg * sg, n);
}

std::vector<TransverseResult> lambda_profile(const StripGeometry& g, double s_min,
                                             double s_max, int n_s, int n_t) {
  if (!(s_min < s_max)) {
    throw std::invalid_argument("lambda_profile: s_min < s_max required");
  }
  if (n_s < 2) {
    throw std::invalid_argument("lambda_profile: n_s >= 2 required");
  }
  require_hypotheses(g, n_t, "lambda_profile");

  std::vector<TransverseResult> rows;
  rows.reserve(n_s);
  const double a = g.half_width();
  for (int i = 0; i < n_s; ++i) {
    const double s = s_min + (s_max - s_min) * i / (n_s - 1);
    const double sg = g.sigma(s);
    TransverseResult r;
    r.s = s;
    r.n_points = n_t;
    try {
      r.lambda_sl = lambda_sl_for(a, sg * sg, n_t);
      r.lambda_schrodinger = lambda_schrodinger_for(a, sg * sg, n_t);
    } catch (const solver_error& e) {
      throw solver_error("lambda_profile at s=" + std::to_string(s) + ": " + e.what(),
                         e.best_residual(), e.iterations());
    }
    r.discrepancy = std::abs(r.lambda_sl - r.lambda_schrodinger);
    rows.push_back(r);
  }
  return rows;
}

void write_profile_csv(std::ostream& os, const std::vector<TransverseResult>& rows) {
  os << "s,lambda,lambda_alt,discrepancy\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", r.s, r.lambda_sl,
                  r.lambda_schrodinger, r.discrepancy);
    os << buf;
  }
}

LambdaInterpolant::LambdaInterpolant(double a, double y_max, int n_nodes,
                                     int transverse_n)
    : a_(a), y_max_(y_max) {
  if (n_nodes < 4) throw std::invalid_argument("LambdaInterpolant: too few nodes");
  if (!(y_max >= 0.0)) throw std::invalid_argument("LambdaInterpolant: bad y_max");
  if (y_max_ == 0.0) y_max_ = 1e-12;  // degenerate flat geometry

  // Chebyshev-Lobatto nodes in y with barycentric weights.
  y_.resize(n_nodes);
  val_.resize(n_nodes);
  wbary_.resize(n_nodes);
  for (int j = 0; j < n_nodes; ++j) {
    const double c = std::cos(std::numbers::pi * j / (n_nodes - 1));
    y_[j] = 0.5 * y_max_ * (1.0 + c);
    val_[j] = lambda_sl_for(a_, y_[j], transverse_n);
    double w = (j % 2 == 0) ? 1.0 : -1.0;
    if (j == 0 || j == n_nodes - 1) w *= 0.5;
    wbary_[j] = w;
  }
}

double LambdaInterpolant::operator()(double sigma_sq) const {
  double y = sigma_sq;
  if (y < 0.0) y = 0.0;
  if (y > y_max_) {
    throw std::domain_error("LambdaInterpolant: sigma^2 beyond tabulated range");
  }
  double num = 0.0, den = 0.0;
  for (size_t j = 0; j < y_.size(); ++j) {
    const double dy = y - y_[j];
    if (dy == 0.0) return val_[j];
    const double c = wbary_[j] / dy;
    num += c * val_[j];
    den += c;
  }
  return num / den;
}

}  // namespace strips
