#include "strips/trial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "strips/quadrature.hpp"

namespace strips {

namespace {

double urand(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double urand(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * urand(gen);
}

void flatten(const FunctionSpec& f, std::vector<const FunctionSpec*>& out) {
  if (f.family() == FuncFamily::kSum) {
    for (const auto& t : f.terms()) flatten(t, out);
  } else {
    out.push_back(&f);
  }
}

}  // namespace

TrialFunction::TrialFunction(FunctionSpec longitudinal, double a, double second_mode)
    : longitudinal_(std::move(longitudinal)), a_(a), beta_(second_mode) {
  if (!(a_ > 0.0)) throw std::invalid_argument("TrialFunction: a must be positive");
  std::vector<const FunctionSpec*> bumps;
  flatten(longitudinal_, bumps);
  if (bumps.empty()) throw std::invalid_argument("TrialFunction: empty profile");
  for (const auto* b : bumps) {
    if (b->family() != FuncFamily::kGaussianBump &&
        b->family() != FuncFamily::kCompactBump) {
      throw std::invalid_argument(
          "TrialFunction: longitudinal profile must be built from decaying bumps");
    }
  }
}

double TrialFunction::transverse(double t) const {
  const double ph = std::numbers::pi * (t + a_) / (2.0 * a_);
  double X = std::sin(ph);
  if (beta_ != 0.0) X += beta_ * std::sin(2.0 * ph);
  return X;
}

double TrialFunction::transverse_derivative(double t) const {
  const double q = std::numbers::pi / (2.0 * a_);
  const double ph = q * (t + a_);
  double Xp = q * std::cos(ph);
  if (beta_ != 0.0) Xp += beta_ * 2.0 * q * std::cos(2.0 * ph);
  return Xp;
}

double TrialFunction::value(double s, double t) const {
  return longitudinal_.value(s) * transverse(t);
}

double TrialFunction::d_s(double s, double t) const {
  return longitudinal_.derivative(s) * transverse(t);
}

double TrialFunction::d_t(double s, double t) const {
  return longitudinal_.value(s) * transverse_derivative(t);
}

std::vector<double> TrialFunction::support_breakpoints() const {
  std::vector<const FunctionSpec*> bumps;
  flatten(longitudinal_, bumps);
  std::vector<double> pts;
  static const double kOffsets[] = {-8.1, -4.0, -2.0, -1.0, -0.5, 0.0,
                                    0.5,  1.0,  2.0,  4.0,  8.1};
  for (const auto* b : bumps) {
    if (b->family() == FuncFamily::kGaussianBump) {
      for (double o : kOffsets) pts.push_back(b->center() + o * b->width());
    } else {
      for (double o : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        pts.push_back(b->center() + o * b->width());
      }
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double x, double y) { return std::abs(x - y) < 1e-12; }),
            pts.end());
  return pts;
}

double TrialFunction::min_width() const {
  std::vector<const FunctionSpec*> bumps;
  flatten(longitudinal_, bumps);
  double w = bumps.front()->width();
  for (const auto* b : bumps) w = std::min(w, b->width());
  return w;
}

std::string TrialFunction::describe() const {
  std::ostringstream os;
  os << longitudinal_.describe() << " x mode1";
  if (beta_ != 0.0) os << "+" << beta_ << "*mode2";
  return os.str();
}

TrialFunction TrialFunction::random(std::mt19937_64& rng, const RandomParams& p) {
  const int n_bumps = 1 + static_cast<int>(urand(rng) * p.max_bumps) % p.max_bumps;
  std::vector<FunctionSpec> bumps;
  for (int i = 0; i < n_bumps; ++i) {
    const double amp = urand(rng, p.amp_lo, p.amp_hi) * (urand(rng) < 0.5 ? -1.0 : 1.0);
    const double center = urand(rng, p.s0 - 10.0, p.s0 + 10.0);
    const double width = urand(rng, p.width_lo, p.width_hi);
    if (urand(rng) < 0.5) {
      bumps.push_back(FunctionSpec::gaussian_bump(amp, center, width));
    } else {
      bumps.push_back(FunctionSpec::compact_bump(amp, center, width));
    }
  }
  FunctionSpec profile =
      bumps.size() == 1 ? bumps.front() : FunctionSpec::sum(std::move(bumps));
  const double beta =
      urand(rng) < 0.5 ? 0.0 : urand(rng, -p.second_mode_max, p.second_mode_max);
  return TrialFunction(std::move(profile), p.a, beta);
}

std::vector<TrialFunction> random_trials(std::mt19937_64& rng, int count,
                                         const TrialFunction::RandomParams& p) {
  std::vector<TrialFunction> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(TrialFunction::random(rng, p));
  return out;
}

// ---------------------------------------------------------------------------
// Trial1D

Trial1D Trial1D::odd_gaussian(double A, double B, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("Trial1D: alpha must be positive");
  Trial1D u;
  u.kind_ = Kind::kSmoothOdd;
  u.A_ = A;
  u.B_ = B;
  u.alpha_ = alpha;
  std::ostringstream os;
  os << "x(" << A << (B >= 0 ? "+" : "") << B << "x^2)exp(-" << alpha << "x^2/2)";
  u.label_ = os.str();
  return u;
}

Trial1D Trial1D::half_line_bump() {
  Trial1D u;
  u.kind_ = Kind::kHalfLine;
  u.label_ = "x^2 exp(-x) on x>0";
  return u;
}

Trial1D Trial1D::sharpened_sqrt_spline(double knot_ratio, double inner, double outer) {
  if (!(knot_ratio > 1.0)) {
    throw std::invalid_argument("Trial1D: knot ratio must exceed 1");
  }
  if (!(inner > 0.0 && inner < 1.0 && outer > 1.0)) {
    throw std::invalid_argument("Trial1D: need 0 < inner < 1 < outer");
  }
  Trial1D u;
  u.kind_ = Kind::kPiecewiseLinear;
  u.knots_.push_back(0.0);
  u.values_.push_back(0.0);
  for (double x = inner; x < 1.0; x *= knot_ratio) {
    u.knots_.push_back(x);
    u.values_.push_back(std::sqrt(x));
  }
  u.knots_.push_back(1.0);
  u.values_.push_back(1.0);
  u.knots_.push_back(outer);
  u.values_.push_back(0.0);
  std::ostringstream os;
  os << "sqrt-spline(r=" << knot_ratio << ", " << u.knots_.size() - 1 << " segments)";
  u.label_ = os.str();
  return u;
}

double Trial1D::smooth_value(double x) const {
  switch (kind_) {
    case Kind::kSmoothOdd:
      return x * (A_ + B_ * x * x) * std::exp(-0.5 * alpha_ * x * x);
    case Kind::kHalfLine:
      return x > 0.0 ? x * x * std::exp(-x) : 0.0;
    case Kind::kPiecewiseLinear:
      break;
  }
  return 0.0;
}

double Trial1D::smooth_derivative(double x) const {
  switch (kind_) {
    case Kind::kSmoothOdd: {
      const double x2 = x * x;
      return (A_ + 3.0 * B_ * x2 - alpha_ * x2 * (A_ + B_ * x2)) *
             std::exp(-0.5 * alpha_ * x2);
    }
    case Kind::kHalfLine:
      return x > 0.0 ? (2.0 * x - x * x) * std::exp(-x) : 0.0;
    case Kind::kPiecewiseLinear:
      break;
  }
  return 0.0;
}

double Trial1D::hardy_lhs() const {
  if (kind_ == Kind::kPiecewiseLinear) {
    // Exact per-segment integrals of (p + q x)^2 / x^2; doubled for the odd
    // extension.
    double acc = 0.0;
    for (size_t i = 0; i + 1 < knots_.size(); ++i) {
      const double x1 = knots_[i], x2 = knots_[i + 1];
      const double q = (values_[i + 1] - values_[i]) / (x2 - x1);
      const double p = values_[i] - q * x1;
      if (x1 == 0.0) {
        acc += q * q * (x2 - x1);  // p = 0 on the innermost segment
      } else {
        acc += p * p * (1.0 / x1 - 1.0 / x2) + 2.0 * p * q * std::log(x2 / x1) +
               q * q * (x2 - x1);
      }
    }
    return 2.0 * acc;
  }
  const double span = kind_ == Kind::kHalfLine ? 40.0 : 12.0 / std::sqrt(alpha_);
  const auto breaks = uniform_breaks(0.0, span, span / 48.0);
  const double half =
      integrate_panels(breaks, 16, [this](double x) {
        if (x == 0.0) return smooth_derivative(0.0) * smooth_derivative(0.0);
        const double u = smooth_value(x);
        return u * u / (x * x);
      });
  return kind_ == Kind::kHalfLine ? half : 2.0 * half;
}

double Trial1D::dirichlet() const {
  if (kind_ == Kind::kPiecewiseLinear) {
    double acc = 0.0;
    for (size_t i = 0; i + 1 < knots_.size(); ++i) {
      const double q =
          (values_[i + 1] - values_[i]) / (knots_[i + 1] - knots_[i]);
      acc += q * q * (knots_[i + 1] - knots_[i]);
    }
    return 2.0 * acc;
  }
  const double span = kind_ == Kind::kHalfLine ? 40.0 : 12.0 / std::sqrt(alpha_);
  const auto breaks = uniform_breaks(0.0, span, span / 48.0);
  const double half = integrate_panels(breaks, 16, [this](double x) {
    const double du = smooth_derivative(x);
    return du * du;
  });
  return kind_ == Kind::kHalfLine ? half : 2.0 * half;
}

}  // namespace strips
