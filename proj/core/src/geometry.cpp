#include "strips/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "strips/errors.hpp"

namespace strips {

StripGeometry::StripGeometry(double half_width, FunctionSpec kappa,
                             FunctionSpec tau, FunctionSpec theta)
    : a_(half_width),
      kappa_(std::move(kappa)),
      tau_(std::move(tau)),
      theta_(std::move(theta)) {
  if (!(a_ > 0.0)) {
    throw std::invalid_argument("StripGeometry: half-width must be positive");
  }
  double cos_factor = 1.0;
  if (theta_.family() == FuncFamily::kConstant) {
    cos_factor = std::abs(std::cos(theta_.amplitude()));
  }
  k_sup_ = kappa_.sup_abs() * cos_factor;
  sigma_sup_ = tau_.sup_abs() + theta_.derivative_sup_abs();
}

double StripGeometry::k(double s) const {
  return kappa_.value(s) * std::cos(theta_.value(s));
}

double StripGeometry::sigma(double s) const {
  return tau_.value(s) - theta_.derivative(s);
}

bool StripGeometry::sigma_identically_zero() const {
  return tau_.identically_zero() && theta_.derivative_identically_zero();
}

std::vector<double> StripGeometry::feature_points() const {
  std::vector<double> pts = kappa_.feature_points();
  auto more = tau_.feature_points();
  pts.insert(pts.end(), more.begin(), more.end());
  more = theta_.feature_points();
  pts.insert(pts.end(), more.begin(), more.end());
  return pts;
}

nlohmann::ordered_json StripGeometry::to_json() const {
  nlohmann::ordered_json j;
  j["a"] = a_;
  j["kappa"] = kappa_.to_json();
  j["tau"] = tau_.to_json();
  j["theta"] = theta_.to_json();
  return j;
}

double first_mode_energy(double a) {
  if (!(a > 0.0)) {
    throw std::invalid_argument("first_mode_energy: a must be positive");
  }
  const double q = std::numbers::pi / (2.0 * a);
  return q * q;
}

namespace {

void require_inside(const StripGeometry& g, double t, const char* who) {
  if (!(std::abs(t) < g.half_width())) {
    throw std::domain_error(std::string(who) + ": |t| must be < half-width");
  }
}

}  // namespace

double eval_h(const StripGeometry& g, double s, double t) {
  require_inside(g, t, "eval_h");
  const double k = g.k(s);
  const double sg = g.sigma(s);
  const double u = 1.0 - t * k;
  return std::sqrt(u * u + t * t * sg * sg);
}

double eval_h0(const StripGeometry& g, double s, double t) {
  require_inside(g, t, "eval_h0");
  const double sg = g.sigma(s);
  return std::sqrt(1.0 + t * t * sg * sg);
}

double eval_K(const StripGeometry& g, double s, double t) {
  const double h = eval_h(g, s, t);
  const double sg = g.sigma(s);
  const double h2 = h * h;
  return -sg * sg / (h2 * h2);
}

double eval_K_numeric(const StripGeometry& g, double s, double t, double step) {
  if (!(step > 0.0)) {
    throw std::invalid_argument("eval_K_numeric: step must be positive");
  }
  if (!(std::abs(t) + 2.0 * step < g.half_width())) {
    throw std::domain_error("eval_K_numeric: stencil leaves the strip");
  }
  const double hm = eval_h(g, s, t - step);
  const double hc = eval_h(g, s, t);
  const double hp = eval_h(g, s, t + step);
  const double htt = (hp - 2.0 * hc + hm) / (step * step);
  return -htt / hc;
}

double eval_V(const StripGeometry& g, double s, double t) {
  require_inside(g, t, "eval_V");
  const double a = g.half_width();
  if (!(a * g.sigma_sup_bound() < std::numbers::sqrt2)) {
    throw hypothesis_error("eval_V: requires a * sup|sigma| < sqrt(2)");
  }
  const double sg2 = g.sigma(s) * g.sigma(s);
  const double h0sq = 1.0 + t * t * sg2;
  return sg2 * (2.0 - t * t * sg2) / (4.0 * h0sq * h0sq);
}

std::pair<double, double> f_bounds(const StripGeometry& g,
                                   const CurvatureEnvelope& env, double s) {
  if (env.eps0 < 0.0) {
    throw std::invalid_argument("f_bounds: eps0 must be non-negative");
  }
  const double a = g.half_width();
  const double ae = a * env(s);
  const double x = ae * (2.0 + ae);
  const double asig = a * g.sigma_sup_bound();
  const double denom = 1.0 + asig * asig;
  const double radicand = 1.0 - x / denom;
  if (!(radicand > 0.0)) {
    throw envelope_error("f_bounds: lower comparison bound lost positivity; "
                         "eps0 too large (eps0 <= 1/(3a) always suffices)");
  }
  return {std::sqrt(radicand), std::sqrt(1.0 + x)};
}

const AssumptionCheck* AssumptionReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

nlohmann::ordered_json AssumptionReport::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["value"] = c.value;
    jc["bound"] = c.bound;
    jc["pass"] = c.pass;
    arr.push_back(jc);
  }
  nlohmann::ordered_json j;
  j["checks"] = arr;
  j["all_pass"] = all_pass;
  return j;
}

AssumptionReport check_assumptions(const StripGeometry& g,
                                   const CurvatureEnvelope* env) {
  AssumptionReport report;
  const double a = g.half_width();

  const double ak = a * g.k_sup_bound();
  report.checks.push_back({"basic", ak, 1.0, ak < 1.0});

  const double asig = a * g.sigma_sup_bound();
  report.checks.push_back({"twist", asig, std::numbers::sqrt2, asig < std::numbers::sqrt2});

  const bool sigma_zero = g.sigma_identically_zero();
  report.checks.push_back({"sigma_nonzero", sigma_zero ? 0.0 : 1.0, 0.0, !sigma_zero});

  if (env != nullptr) {
    report.checks.push_back(
        {"envelope_eps0", env->eps0, 1.0 / a, env->eps0 >= 0.0 && env->eps0 < 1.0 / a});

    // Sampled compliance sup of |k(s)| (1+s^2), dense near the features of k
    // and log-spaced into the tails.
    double sup = 0.0;
    auto probe = [&](double s) {
      sup = std::max(sup, std::abs(g.k(s)) * (1.0 + s * s));
    };
    double span = 50.0;
    for (double p : g.feature_points()) span = std::max(span, std::abs(p) + 10.0);
    const int n = 4001;
    for (int i = 0; i < n; ++i) probe(-span + 2.0 * span * i / (n - 1));
    for (double s = span; s <= 1e6; s *= 1.5) {
      probe(s);
      probe(-s);
    }
    report.checks.push_back({"envelope_compliance", sup, env->eps0,
                             sup <= env->eps0 * (1.0 + 1e-12) + 1e-300});
  }

  report.all_pass = std::all_of(report.checks.begin(), report.checks.end(),
                                [](const AssumptionCheck& c) { return c.pass; });
  return report;
}

}  // namespace strips
