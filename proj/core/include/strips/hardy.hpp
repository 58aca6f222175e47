#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "strips/geometry.hpp"
#include "strips/transverse.hpp"
#include "strips/trial.hpp"

namespace strips {

/// Certified lower bound c for the weighted Hardy inequality
///   Q0[psi] - E1 ||psi||^2  >=  c ||rho^{-1} psi||^2,   rho^2 = 1 + (s-s0)^2,
/// derived from the transverse gap on the interval [s0 - b, s0 + b].
struct HardyCertificate {
  double s0 = 0.0;
  double half_width_b = 0.0;
  double min_lambda_on_interval = 0.0;
  double c_bound = 0.0;
  double sup_sigma = 0.0;  // the safe sup-norm bound used in the constant
  double a = 0.0;

  double interval_lo() const { return s0 - half_width_b; }
  double interval_hi() const { return s0 + half_width_b; }
  double interval_length() const { return 2.0 * half_width_b; }

  nlohmann::ordered_json to_json() const;
};

/// The certified constant
///   c = min( min_lambda / ((2 + 64/|I|^2) sqrt(1 + (a sup_sigma)^2)),
///            1 / (16 (1 + (a sup_sigma)^2)) ).
/// Both arguments of the min are positive for positive inputs.
double hardy_constant(double min_lambda, double interval_len, double a,
                      double sup_sigma);

struct CertificateSearch {
  int profile_samples = 201;    // gap profile used to locate the peak
  double profile_min_span = 10.0;
  int n_centers = 17;           // candidate centers over [peak - 2, peak + 2]
  double center_span = 2.0;
  std::vector<double> widths{0.5, 1.0, 2.0, 4.0, 8.0};
  int interval_samples = 64;    // transverse solves per candidate interval
  int transverse_n = 2048;
  double lambda_floor = 1e-8;   // below this the gap counts as zero
};

/// Scans candidate intervals around the peak of the transverse gap profile
/// and returns the certificate with the largest constant (ties broken toward
/// wider intervals, then centers closer to the peak).  Throws
/// no_certificate_error when the gap profile never rises above the floor
/// (sigma identically — or effectively — zero).
HardyCertificate build_certificate(const StripGeometry& g,
                                   const CertificateSearch& search = {});

/// The t-independent stability weight
///   w(s) = c min(f+(0)^{-1}, f-(0)) / (1 + (s - s0)^2) - E1 (f+(s) - f-(s)),
/// evaluated in a cancellation-free form.  Requires the envelope to keep f-
/// positive (eps0 <= 1/(3a) suffices).
double stability_weight(const StripGeometry& g, const CurvatureEnvelope& env,
                        const HardyCertificate& cert, double s);

struct StabilitySample {
  double s = 0.0;
  double w = 0.0;
};

struct StabilityReport {
  double eps0_max = 0.0;          // largest envelope with positive weight
  double w_min = 0.0;             // sampled inf of w at eps0_max
  double asymptotic_margin = 0.0; // sign of w at infinity, rho^2-scaled
  HardyCertificate certificate;
  std::vector<StabilitySample> samples;

  nlohmann::ordered_json to_json() const;
};

struct StabilityOptions {
  double span = 80.0;    // dense sampling range around s0
  int samples = 6401;
  int bisect_iters = 60;
  int report_samples = 101;
};

/// Bisects on eps0 in (0, 1/(3a)) for the largest envelope keeping the
/// sampled weight positive everywhere (including log-spaced tail probes and
/// the scaled limit at infinity).  eps0 = 0 is always feasible.
StabilityReport stability_threshold(const StripGeometry& g,
                                    const HardyCertificate& cert,
                                    const StabilityOptions& opt = {});

struct TrialDefect {
  std::string trial;
  double norm_sq = 0.0;     // squared norm the defect is measured against
  double defect = 0.0;      // inequality slack (>= 0 up to tolerance)
  double defect_rel = 0.0;  // defect / norm_sq
  double extra = std::numeric_limits<double>::quiet_NaN();  // per-check value
};

struct InequalityReport {
  std::string inequality;
  double tol = 1e-8;
  std::vector<TrialDefect> rows;
  double min_defect_rel = 0.0;
  bool pass = false;

  // check-specific summary values
  double max_ratio = std::numeric_limits<double>::quiet_NaN();    // 1D Hardy
  double empirical_c = std::numeric_limits<double>::quiet_NaN();  // weighted checks
  double c_bound = std::numeric_limits<double>::quiet_NaN();

  nlohmann::ordered_json to_json() const;
  void write_csv(std::ostream& os) const;
};

struct VerifyOptions {
  double tol = 1e-8;           // relative defect tolerance
  int t_nodes = 64;            // transverse Gauss-Legendre nodes
  int s_nodes_per_panel = 16;
  int max_panels_per_gap = 8;
  int transverse_n = 2048;     // grid behind the gap interpolant
  int lambda_nodes = 65;
};

/// int u^2/x^2 <= 4 int u'^2 for u(0) = 0; reports the worst quotient.
InequalityReport verify_hardy_1d(const std::vector<Trial1D>& trials,
                                 double tol = 1e-8);

/// Q0[psi] - E1 ||psi||^2 >= ||h0^{-1} d_s psi||^2 + ||lambda^{1/2} psi||^2
/// (all norms weighted by h0).
InequalityReport verify_local_hardy(const StripGeometry& g,
                                    const std::vector<TrialFunction>& trials,
                                    const VerifyOptions& opt = {});

/// Q0[psi] - E1 ||psi||^2 >= c ||rho^{-1} psi||^2 with the certified c; also
/// reports the empirical constant (the infimum of the trial quotients).
InequalityReport verify_theorem1(const StripGeometry& g, const HardyCertificate& cert,
                                 const std::vector<TrialFunction>& trials,
                                 const VerifyOptions& opt = {});

/// The kinetic-energy bound relating ||rho^{-1} psi||^2 to the longitudinal
/// energy and the window term over the certificate interval.
InequalityReport verify_lemma_kinetic(const StripGeometry& g,
                                      const HardyCertificate& cert,
                                      const std::vector<TrialFunction>& trials,
                                      const VerifyOptions& opt = {});

/// Q[psi] - E1 ||psi||_h^2 >= int w psi^2 h0 at an envelope certified by the
/// stability report (w is clamped at zero only under that certificate).
InequalityReport verify_curved_hardy(const StripGeometry& g,
                                     const CurvatureEnvelope& env,
                                     const HardyCertificate& cert,
                                     const StabilityReport& stability,
                                     const std::vector<TrialFunction>& trials,
                                     const VerifyOptions& opt = {});

/// Convenience overload computing the stability threshold internally.
InequalityReport verify_curved_hardy(const StripGeometry& g,
                                     const CurvatureEnvelope& env,
                                     const HardyCertificate& cert,
                                     const std::vector<TrialFunction>& trials,
                                     const VerifyOptions& opt = {});

}  // namespace strips
