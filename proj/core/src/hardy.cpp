#include "strips/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "strips/errors.hpp"
#include "strips/quadrature.hpp"

namespace strips {

namespace {

// Memoized transverse-gap evaluation; the gap depends on s only through
// sigma(s)^2, so constant-twist geometries collapse to a single solve.
class GapCache {
 public:
  GapCache(const StripGeometry& g, int n) : g_(g), n_(n) {}

  double at(double s) {
    const double sg = g_.sigma(s);
    const double y = sg * sg;
    auto it = memo_.find(y);
    if (it != memo_.end()) return it->second;
    const double v = lambda_sl_for(g_.half_width(), y, n_);
    memo_.emplace(y, v);
    return v;
  }

 private:
  const StripGeometry& g_;
  int n_;
  std::unordered_map<double, double> memo_;
};

}  // namespace

double hardy_constant(double min_lambda, double interval_len, double a,
                      double sup_sigma) {
  if (!(min_lambda > 0.0) || !(interval_len > 0.0)) {
    throw std::invalid_argument("hardy_constant: min_lambda and |I| must be positive");
  }
  if (!(a > 0.0) || sup_sigma < 0.0) {
    throw std::invalid_argument("hardy_constant: bad a or sup_sigma");
  }
  const double asig = a * sup_sigma;
  const double D = 1.0 + asig * asig;
  const double first = min_lambda / ((2.0 + 64.0 / (interval_len * interval_len)) * std::sqrt(D));
  const double second = 1.0 / (16.0 * D);
  return std::min(first, second);
}

nlohmann::ordered_json HardyCertificate::to_json() const {
  nlohmann::ordered_json j;
  j["s0"] = s0;
  j["half_width_b"] = half_width_b;
  j["interval"] = {interval_lo(), interval_hi()};
  j["min_lambda_on_interval"] = min_lambda_on_interval;
  j["c_bound"] = c_bound;
  j["sup_sigma"] = sup_sigma;
  j["a"] = a;
  return j;
}

HardyCertificate build_certificate(const StripGeometry& g,
                                   const CertificateSearch& search) {
  if (g.sigma_identically_zero()) {
    throw no_certificate_error("build_certificate: hypothesis failed: sigma == 0");
  }
  if (!(g.half_width() * g.sigma_sup_bound() < std::numbers::sqrt2)) {
    throw hypothesis_error("build_certificate: requires a * sup|sigma| < sqrt(2)");
  }

  GapCache gap(g, search.transverse_n);

  // Locate the peak of the gap profile; ties resolve toward the origin.
  double span = search.profile_min_span;
  for (double p : g.feature_points()) span = std::max(span, std::abs(p) + 2.0);
  double peak_s = 0.0, peak = -1.0;
  for (int i = 0; i < search.profile_samples; ++i) {
    const double s = -span + 2.0 * span * i / (search.profile_samples - 1);
    const double v = gap.at(s);
    if (v > peak * (1.0 + 1e-12) ||
        (v >= peak * (1.0 - 1e-12) && std::abs(s) < std::abs(peak_s))) {
      peak = v;
      peak_s = s;
    }
  }
  if (!(peak > search.lambda_floor)) {
    throw no_certificate_error(
        "build_certificate: transverse gap below floor everywhere sampled; "
        "sigma is effectively zero");
  }

  const double sup_sigma = g.sigma_sup_bound();
  const double a = g.half_width();

  HardyCertificate best;
  double best_c = -1.0;
  for (double W : search.widths) {
    for (int ic = 0; ic < search.n_centers; ++ic) {
      const double center = peak_s - search.center_span +
                            2.0 * search.center_span * ic / (search.n_centers - 1);
      if (g.sigma(center) == 0.0) continue;  // s0 must carry twist
      double min_gap = std::numeric_limits<double>::infinity();
      for (int k = 0; k < search.interval_samples; ++k) {
        const double s = center - 0.5 * W +
                         W * k / (search.interval_samples - 1);
        min_gap = std::min(min_gap, gap.at(s));
      }
      if (!(min_gap > search.lambda_floor)) continue;
      const double c = hardy_constant(min_gap, W, a, sup_sigma);
      const bool better =
          c > best_c * (1.0 + 1e-12) ||
          (c >= best_c * (1.0 - 1e-12) &&
           (W > best.interval_length() * (1.0 + 1e-12) ||
            (W >= best.interval_length() * (1.0 - 1e-12) &&
             std::abs(center - peak_s) < std::abs(best.s0 - peak_s))));
      if (better) {
        best.s0 = center;
        best.half_width_b = 0.5 * W;
        best.min_lambda_on_interval = min_gap;
        best.c_bound = c;
        best.sup_sigma = sup_sigma;
        best.a = a;
        best_c = c;
      }
    }
  }
  if (best_c <= 0.0) {
    throw no_certificate_error(
        "build_certificate: no candidate interval kept a positive gap");
  }
  return best;
}

namespace {

// f+ - f- without cancellation: (f+^2 - f-^2) / (f+ + f-).
double f_gap(double a, double eps, double D) {
  const double ae = a * eps;
  const double x = ae * (2.0 + ae);
  const double fp = std::sqrt(1.0 + x);
  const double fm2 = 1.0 - x / D;
  if (!(fm2 > 0.0)) {
    throw envelope_error("stability weight: lower comparison bound lost positivity");
  }
  return x * (1.0 + 1.0 / D) / (fp + std::sqrt(fm2));
}

double weight_scale_m(const StripGeometry& g, const CurvatureEnvelope& env) {
  const auto [fm0, fp0] = f_bounds(g, env, 0.0);
  return std::min(1.0 / fp0, fm0);
}

}  // namespace

double stability_weight(const StripGeometry& g, const CurvatureEnvelope& env,
                        const HardyCertificate& cert, double s) {
  const double a = g.half_width();
  const double asig = a * g.sigma_sup_bound();
  const double D = 1.0 + asig * asig;
  const double m = weight_scale_m(g, env);
  const double d = s - cert.s0;
  const double E1 = first_mode_energy(a);
  return cert.c_bound * m / (1.0 + d * d) - E1 * f_gap(a, env(s), D);
}

nlohmann::ordered_json StabilityReport::to_json() const {
  nlohmann::ordered_json j;
  j["eps0_max"] = eps0_max;
  j["w_min"] = w_min;
  j["asymptotic_margin"] = asymptotic_margin;
  j["certificate"] = certificate.to_json();
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : samples) {
    arr.push_back({{"s", r.s}, {"w", r.w}});
  }
  j["samples"] = arr;
  return j;
}

namespace {

struct StabilityScan {
  double w_min;
  double asymptotic_margin;
  bool feasible;
};

StabilityScan scan_weight(const StripGeometry& g, const HardyCertificate& cert,
                          double eps0, const StabilityOptions& opt) {
  const CurvatureEnvelope env{eps0};
  const double a = g.half_width();
  const double asig = a * g.sigma_sup_bound();
  const double D = 1.0 + asig * asig;
  const double E1 = first_mode_energy(a);
  const double m = weight_scale_m(g, env);

  StabilityScan scan;
  scan.w_min = std::numeric_limits<double>::infinity();
  auto w_at = [&](double s) {
    const double d = s - cert.s0;
    return cert.c_bound * m / (1.0 + d * d) - E1 * f_gap(a, env(s), D);
  };
  for (int i = 0; i < opt.samples; ++i) {
    const double s = cert.s0 - opt.span + 2.0 * opt.span * i / (opt.samples - 1);
    scan.w_min = std::min(scan.w_min, w_at(s));
  }
  for (double s = opt.span; s <= 1e6; s *= 2.0) {
    scan.w_min = std::min(scan.w_min, std::min(w_at(cert.s0 + s), w_at(cert.s0 - s)));
  }
  // rho^2-scaled weight at infinity: c m - E1 lim (1 + (s-s0)^2)(f+ - f-).
  const double far = 1e3;
  double margin = std::numeric_limits<double>::infinity();
  for (double s : {cert.s0 + far, cert.s0 - far}) {
    const double d = s - cert.s0;
    margin = std::min(margin, cert.c_bound * m -
                                  E1 * (1.0 + d * d) * f_gap(a, env(s), D));
  }
  scan.asymptotic_margin = margin;
  scan.feasible = scan.w_min > 0.0 && margin > 0.0;
  return scan;
}

}  // namespace

StabilityReport stability_threshold(const StripGeometry& g,
                                    const HardyCertificate& cert,
                                    const StabilityOptions& opt) {
  const double a = g.half_width();
  const double cap = (1.0 / (3.0 * a)) * (1.0 - 1e-9);

  double lo = 0.0, hi = cap;
  if (scan_weight(g, cert, cap, opt).feasible) {
    lo = cap;
  } else {
    for (int it = 0; it < opt.bisect_iters; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (scan_weight(g, cert, mid, opt).feasible) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }

  StabilityReport report;
  report.eps0_max = lo;
  report.certificate = cert;
  const auto scan = scan_weight(g, cert, lo, opt);
  report.w_min = scan.w_min;
  report.asymptotic_margin = scan.asymptotic_margin;
  const CurvatureEnvelope env{lo};
  report.samples.reserve(opt.report_samples);
  for (int i = 0; i < opt.report_samples; ++i) {
    const double s = cert.s0 - opt.span + 2.0 * opt.span * i / (opt.report_samples - 1);
    report.samples.push_back({s, stability_weight(g, env, cert, s)});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Inequality verification

nlohmann::ordered_json InequalityReport::to_json() const {
  nlohmann::ordered_json j;
  j["inequality"] = inequality;
  j["tol"] = tol;
  j["min_defect_rel"] = min_defect_rel;
  j["pass"] = pass;
  if (std::isfinite(max_ratio)) j["max_ratio"] = max_ratio;
  if (std::isfinite(empirical_c)) j["empirical_c"] = empirical_c;
  if (std::isfinite(c_bound)) j["c_bound"] = c_bound;
  nlohmann::ordered_json rows_json = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["trial"] = r.trial;
    row["norm_sq"] = r.norm_sq;
    row["defect"] = r.defect;
    row["defect_rel"] = r.defect_rel;
    if (std::isfinite(r.extra)) row["extra"] = r.extra;
    rows_json.push_back(row);
  }
  j["trials"] = rows_json;
  return j;
}

void InequalityReport::write_csv(std::ostream& os) const {
  os << "trial,norm_sq,defect,defect_rel,extra\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "\"%s\",%.17g,%.17g,%.17g,%.17g\n",
                  r.trial.c_str(), r.norm_sq, r.defect, r.defect_rel, r.extra);
    os << buf;
  }
}

InequalityReport verify_hardy_1d(const std::vector<Trial1D>& trials, double tol) {
  if (trials.empty()) {
    throw std::invalid_argument("verify_hardy_1d: no trials");
  }
  InequalityReport rep;
  rep.inequality = "hardy_1d";
  rep.tol = tol;
  rep.max_ratio = 0.0;
  rep.min_defect_rel = std::numeric_limits<double>::infinity();
  for (const auto& u : trials) {
    const double lhs = u.hardy_lhs();
    const double rhs = 4.0 * u.dirichlet();
    TrialDefect row;
    row.trial = u.describe();
    row.norm_sq = rhs;
    row.defect = rhs - lhs;
    row.defect_rel = row.defect / rhs;
    row.extra = lhs / u.dirichlet();  // the Hardy quotient, at most 4
    rep.max_ratio = std::max(rep.max_ratio, row.extra);
    rep.min_defect_rel = std::min(rep.min_defect_rel, row.defect_rel);
    rep.rows.push_back(std::move(row));
  }
  rep.pass = rep.max_ratio <= 4.0 + tol;
  return rep;
}

namespace {

struct TrialIntegrals {
  double norm_h0 = 0.0, norm_h = 0.0;
  double q0 = 0.0, q = 0.0;
  double grad_s_h0 = 0.0;
  double lambda_term = 0.0;
  double rho_term = 0.0;
  double chi_term = 0.0;
  double w_term = 0.0;
};

struct EngineNeeds {
  bool full_metric = false;  // q, norm_h
  bool lambda = false;
  bool rho = false;
  bool chi = false;
  bool weight = false;
};

// Longitudinal quadrature panels: the trial's own breakpoints plus any
// check-specific ones, each gap subdivided against the finest bump scale but
// capped so bridge gaps stay cheap.
std::vector<double> build_panels(const TrialFunction& psi,
                                 const std::vector<double>& extra,
                                 const VerifyOptions& opt) {
  std::vector<double> breaks = psi.support_breakpoints();
  const double lo = breaks.front(), hi = breaks.back();
  for (double x : extra) {
    if (x > lo && x < hi) breaks.push_back(x);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double x, double y) { return std::abs(x - y) < 1e-12; }),
               breaks.end());

  const double h_fine = 0.5 * psi.min_width();
  std::vector<double> out;
  out.push_back(breaks.front());
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double gap = breaks[i + 1] - breaks[i];
    const int n_sub = std::clamp(static_cast<int>(std::ceil(gap / h_fine)), 1,
                                 opt.max_panels_per_gap);
    for (int k = 1; k <= n_sub; ++k) {
      out.push_back(breaks[i] + gap * k / n_sub);
    }
  }
  return out;
}

TrialIntegrals integrate_trial(const StripGeometry& g, const TrialFunction& psi,
                               const EngineNeeds& needs, const VerifyOptions& opt,
                               const LambdaInterpolant* lambda_tab,
                               const HardyCertificate* cert,
                               const std::function<double(double)>* weight_fn) {
  const double a = g.half_width();
  std::vector<double> extra;
  if (cert != nullptr) {
    extra = {cert->interval_lo(), cert->s0, cert->interval_hi()};
  }
  const auto breaks = build_panels(psi, extra, opt);

  std::vector<double> s_nodes, s_weights;
  panel_nodes(breaks, opt.s_nodes_per_panel, s_nodes, s_weights);

  const auto& t_rule = gauss_legendre::rule(opt.t_nodes);
  std::vector<double> t_nodes(opt.t_nodes), t_weights(opt.t_nodes);
  std::vector<double> X(opt.t_nodes), Xp(opt.t_nodes);
  for (int j = 0; j < opt.t_nodes; ++j) {
    t_nodes[j] = a * t_rule.nodes[j];
    t_weights[j] = a * t_rule.weights[j];
    X[j] = psi.transverse(t_nodes[j]);
    Xp[j] = psi.transverse_derivative(t_nodes[j]);
  }

  TrialIntegrals I;
  for (size_t is = 0; is < s_nodes.size(); ++is) {
    const double s = s_nodes[is];
    const double ws = s_weights[is];

    const double gval = psi.longitudinal().value(s);
    const double gder = psi.longitudinal().derivative(s);
    const double sg = g.sigma(s);
    const double sg2 = sg * sg;
    const double kk = needs.full_metric ? g.k(s) : 0.0;

    const double lam = needs.lambda ? (*lambda_tab)(sg2) : 0.0;
    double rho_inv_sq = 0.0, chi = 0.0, wval = 0.0;
    if (needs.rho || needs.chi || needs.weight) {
      if (needs.rho) {
        const double d = s - cert->s0;
        rho_inv_sq = 1.0 / (1.0 + d * d);
      }
      if (needs.chi) {
        chi = (s >= cert->interval_lo() && s <= cert->interval_hi()) ? 1.0 : 0.0;
      }
      if (needs.weight) {
        wval = std::max(0.0, (*weight_fn)(s));
      }
    }

    for (int j = 0; j < opt.t_nodes; ++j) {
      const double t = t_nodes[j];
      const double wt = ws * t_weights[j];

      const double h0 = std::sqrt(1.0 + t * t * sg2);
      const double v = gval * X[j];
      const double vs = gder * X[j];
      const double vt = gval * Xp[j];

      const double v2h0 = v * v * h0;
      I.norm_h0 += wt * v2h0;
      I.q0 += wt * (vs * vs / h0 + h0 * vt * vt);
      I.grad_s_h0 += wt * vs * vs / h0;
      if (needs.lambda) I.lambda_term += wt * lam * v2h0;
      if (needs.rho) I.rho_term += wt * rho_inv_sq * v2h0;
      if (needs.chi) I.chi_term += wt * chi * v2h0;
      if (needs.weight) I.w_term += wt * wval * v2h0;
      if (needs.full_metric) {
        const double u = 1.0 - t * kk;
        const double h = std::sqrt(u * u + t * t * sg2);
        I.norm_h += wt * v * v * h;
        I.q += wt * (vs * vs / h + h * vt * vt);
      }
    }
  }
  return I;
}

void finalize(InequalityReport& rep) {
  rep.min_defect_rel = std::numeric_limits<double>::infinity();
  for (const auto& r : rep.rows) {
    rep.min_defect_rel = std::min(rep.min_defect_rel, r.defect_rel);
  }
  rep.pass = rep.min_defect_rel >= -rep.tol;
}

LambdaInterpolant make_gap_table(const StripGeometry& g, const VerifyOptions& opt) {
  const double sup = g.sigma_sup_bound();
  return LambdaInterpolant(g.half_width(), sup * sup, opt.lambda_nodes,
                           opt.transverse_n);
}

}  // namespace

InequalityReport verify_local_hardy(const StripGeometry& g,
                                    const std::vector<TrialFunction>& trials,
                                    const VerifyOptions& opt) {
  if (!(g.half_width() * g.sigma_sup_bound() < std::numbers::sqrt2)) {
    throw hypothesis_error("verify_local_hardy: requires a * sup|sigma| < sqrt(2)");
  }
  const LambdaInterpolant tab = make_gap_table(g, opt);
  const double E1 = first_mode_energy(g.half_width());

  InequalityReport rep;
  rep.inequality = "local_hardy";
  rep.tol = opt.tol;
  EngineNeeds needs;
  needs.lambda = true;
  for (const auto& psi : trials) {
    const auto I = integrate_trial(g, psi, needs, opt, &tab, nullptr, nullptr);
    TrialDefect row;
    row.trial = psi.describe();
    row.norm_sq = I.norm_h0;
    row.defect = I.q0 - E1 * I.norm_h0 - I.grad_s_h0 - I.lambda_term;
    row.defect_rel = row.defect / I.norm_h0;
    rep.rows.push_back(std::move(row));
  }
  finalize(rep);
  return rep;
}

InequalityReport verify_theorem1(const StripGeometry& g, const HardyCertificate& cert,
                                 const std::vector<TrialFunction>& trials,
                                 const VerifyOptions& opt) {
  if (g.sigma_identically_zero()) {
    throw hypothesis_error("verify_theorem1: hypothesis failed: sigma == 0");
  }
  if (!(g.half_width() * g.sigma_sup_bound() < std::numbers::sqrt2)) {
    throw hypothesis_error("verify_theorem1: requires a * sup|sigma| < sqrt(2)");
  }
  const double E1 = first_mode_energy(g.half_width());

  InequalityReport rep;
  rep.inequality = "theorem1";
  rep.tol = opt.tol;
  rep.c_bound = cert.c_bound;
  rep.empirical_c = std::numeric_limits<double>::infinity();
  EngineNeeds needs;
  needs.rho = true;
  for (const auto& psi : trials) {
    const auto I = integrate_trial(g, psi, needs, opt, nullptr, &cert, nullptr);
    TrialDefect row;
    row.trial = psi.describe();
    row.norm_sq = I.norm_h0;
    row.defect = I.q0 - E1 * I.norm_h0 - cert.c_bound * I.rho_term;
    row.defect_rel = row.defect / I.norm_h0;
    row.extra = (I.q0 - E1 * I.norm_h0) / I.rho_term;  // per-trial constant
    rep.empirical_c = std::min(rep.empirical_c, row.extra);
    rep.rows.push_back(std::move(row));
  }
  finalize(rep);
  rep.pass = rep.pass && rep.empirical_c >= rep.c_bound - 1e-10;
  return rep;
}

InequalityReport verify_lemma_kinetic(const StripGeometry& g,
                                      const HardyCertificate& cert,
                                      const std::vector<TrialFunction>& trials,
                                      const VerifyOptions& opt) {
  const double a = g.half_width();
  const double asig = a * g.sigma_sup_bound();
  const double D = 1.0 + asig * asig;
  const double len = cert.interval_length();
  const double window_coeff = 2.0 + 64.0 / (len * len);

  InequalityReport rep;
  rep.inequality = "lemma_kinetic";
  rep.tol = opt.tol;
  EngineNeeds needs;
  needs.rho = true;
  needs.chi = true;
  for (const auto& psi : trials) {
    const auto I = integrate_trial(g, psi, needs, opt, nullptr, &cert, nullptr);
    TrialDefect row;
    row.trial = psi.describe();
    row.norm_sq = I.norm_h0;
    row.defect = 16.0 * std::sqrt(D) * I.grad_s_h0 + window_coeff * I.chi_term -
                 I.rho_term / std::sqrt(D);
    row.defect_rel = row.defect / I.norm_h0;
    rep.rows.push_back(std::move(row));
  }
  finalize(rep);
  return rep;
}

InequalityReport verify_curved_hardy(const StripGeometry& g,
                                     const CurvatureEnvelope& env,
                                     const HardyCertificate& cert,
                                     const StabilityReport& stability,
                                     const std::vector<TrialFunction>& trials,
                                     const VerifyOptions& opt) {
  if (env.eps0 > stability.eps0_max) {
    throw hypothesis_error(
        "verify_curved_hardy: envelope exceeds the certified stability threshold");
  }
  // Re-certify positivity at this envelope before allowing the zero clamp.
  const auto scan = scan_weight(g, cert, env.eps0, StabilityOptions{});
  if (!(scan.w_min >= 0.0) || !(scan.asymptotic_margin > 0.0)) {
    throw std::logic_error(
        "verify_curved_hardy: weight negative at a certified envelope "
        "(internal inconsistency)");
  }
  const double E1 = first_mode_energy(g.half_width());
  const std::function<double(double)> weight_fn = [&](double s) {
    return stability_weight(g, env, cert, s);
  };

  InequalityReport rep;
  rep.inequality = "curved_hardy";
  rep.tol = opt.tol;
  EngineNeeds needs;
  needs.full_metric = true;
  needs.weight = true;
  for (const auto& psi : trials) {
    const auto I = integrate_trial(g, psi, needs, opt, nullptr, &cert, &weight_fn);
    TrialDefect row;
    row.trial = psi.describe();
    row.norm_sq = I.norm_h;
    row.defect = I.q - E1 * I.norm_h - I.w_term;
    row.defect_rel = row.defect / I.norm_h;
    rep.rows.push_back(std::move(row));
  }
  finalize(rep);
  return rep;
}

InequalityReport verify_curved_hardy(const StripGeometry& g,
                                     const CurvatureEnvelope& env,
                                     const HardyCertificate& cert,
                                     const std::vector<TrialFunction>& trials,
                                     const VerifyOptions& opt) {
  const StabilityReport report = stability_threshold(g, cert);
  return verify_curved_hardy(g, env, cert, report, trials, opt);
}

}  // namespace strips
