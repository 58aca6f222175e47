#include "strips/function_spec.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "strips/errors.hpp"

namespace strips {

namespace {

void require_width(double width) {
  if (!(width > 0.0)) {
    throw std::invalid_argument("FunctionSpec: width must be positive");
  }
}

// sup over u>0 of |d/du exp(1 - 1/(1-u^2))| on (0,1), found once by
// golden-section search (the profile is unimodal there).
double compact_bump_deriv_sup() {
  static const double cached = [] {
    auto g = [](double u) {
      const double r = 1.0 - u * u;
      return std::exp(1.0 - 1.0 / r) * 2.0 * u / (r * r);
    };
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 0.0, b = 1.0 - 1e-12;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    for (int i = 0; i < 200; ++i) {
      if (g(c) < g(d)) {
        a = c;
      } else {
        b = d;
      }
      c = b - phi * (b - a);
      d = a + phi * (b - a);
    }
    return g(0.5 * (a + b));
  }();
  return cached;
}

// Effective support half-width of a unit-width gaussian at the 1e-14 level.
constexpr double kGaussianSupport = 8.1;

}  // namespace

FunctionSpec FunctionSpec::constant(double value) {
  FunctionSpec f;
  f.family_ = FuncFamily::kConstant;
  f.amplitude_ = value;
  return f;
}

FunctionSpec FunctionSpec::gaussian_bump(double amplitude, double center, double width) {
  require_width(width);
  FunctionSpec f;
  f.family_ = FuncFamily::kGaussianBump;
  f.amplitude_ = amplitude;
  f.center_ = center;
  f.width_ = width;
  return f;
}

FunctionSpec FunctionSpec::rational_decay(double amplitude, double center, double width) {
  require_width(width);
  FunctionSpec f;
  f.family_ = FuncFamily::kRationalDecay;
  f.amplitude_ = amplitude;
  f.center_ = center;
  f.width_ = width;
  return f;
}

FunctionSpec FunctionSpec::compact_bump(double amplitude, double center, double width) {
  require_width(width);
  FunctionSpec f;
  f.family_ = FuncFamily::kCompactBump;
  f.amplitude_ = amplitude;
  f.center_ = center;
  f.width_ = width;
  return f;
}

FunctionSpec FunctionSpec::sum(std::vector<FunctionSpec> terms) {
  FunctionSpec f;
  f.family_ = FuncFamily::kSum;
  f.terms_ = std::move(terms);
  return f;
}

double FunctionSpec::value(double s) const {
  switch (family_) {
    case FuncFamily::kConstant:
      return amplitude_;
    case FuncFamily::kGaussianBump: {
      const double u = (s - center_) / width_;
      return amplitude_ * std::exp(-0.5 * u * u);
    }
    case FuncFamily::kRationalDecay: {
      const double u = (s - center_) / width_;
      return amplitude_ / (1.0 + u * u);
    }
    case FuncFamily::kCompactBump: {
      const double u = (s - center_) / width_;
      if (std::abs(u) >= 1.0) return 0.0;
      return amplitude_ * std::exp(1.0 - 1.0 / (1.0 - u * u));
    }
    case FuncFamily::kSum: {
      double acc = 0.0;
      for (const auto& t : terms_) acc += t.value(s);
      return acc;
    }
  }
  return 0.0;
}

double FunctionSpec::derivative(double s) const {
  switch (family_) {
    case FuncFamily::kConstant:
      return 0.0;
    case FuncFamily::kGaussianBump: {
      const double u = (s - center_) / width_;
      return -amplitude_ * u / width_ * std::exp(-0.5 * u * u);
    }
    case FuncFamily::kRationalDecay: {
      const double u = (s - center_) / width_;
      const double d = 1.0 + u * u;
      return -2.0 * amplitude_ * u / (width_ * d * d);
    }
    case FuncFamily::kCompactBump: {
      const double u = (s - center_) / width_;
      if (std::abs(u) >= 1.0) return 0.0;
      const double r = 1.0 - u * u;
      return -amplitude_ * std::exp(1.0 - 1.0 / r) * 2.0 * u / (width_ * r * r);
    }
    case FuncFamily::kSum: {
      double acc = 0.0;
      for (const auto& t : terms_) acc += t.derivative(s);
      return acc;
    }
  }
  return 0.0;
}

double FunctionSpec::sup_abs() const {
  switch (family_) {
    case FuncFamily::kConstant:
    case FuncFamily::kGaussianBump:
    case FuncFamily::kRationalDecay:
    case FuncFamily::kCompactBump:
      return std::abs(amplitude_);
    case FuncFamily::kSum: {
      double acc = 0.0;
      for (const auto& t : terms_) acc += t.sup_abs();
      return acc;
    }
  }
  return 0.0;
}

double FunctionSpec::derivative_sup_abs() const {
  switch (family_) {
    case FuncFamily::kConstant:
      return 0.0;
    case FuncFamily::kGaussianBump:
      // max of |u| e^{-u^2/2} is e^{-1/2} at u = 1
      return std::abs(amplitude_) * std::exp(-0.5) / width_;
    case FuncFamily::kRationalDecay:
      // max of 2|u|/(1+u^2)^2 is 3*sqrt(3)/8 at u = 1/sqrt(3)
      return std::abs(amplitude_) * (3.0 * std::sqrt(3.0) / 8.0) / width_;
    case FuncFamily::kCompactBump:
      return std::abs(amplitude_) * compact_bump_deriv_sup() / width_;
    case FuncFamily::kSum: {
      double acc = 0.0;
      for (const auto& t : terms_) acc += t.derivative_sup_abs();
      return acc;
    }
  }
  return 0.0;
}

bool FunctionSpec::identically_zero() const {
  if (family_ == FuncFamily::kSum) {
    for (const auto& t : terms_) {
      if (!t.identically_zero()) return false;
    }
    return true;
  }
  return amplitude_ == 0.0;
}

bool FunctionSpec::derivative_identically_zero() const {
  if (family_ == FuncFamily::kSum) {
    for (const auto& t : terms_) {
      if (!t.derivative_identically_zero()) return false;
    }
    return true;
  }
  return family_ == FuncFamily::kConstant || amplitude_ == 0.0;
}

std::vector<double> FunctionSpec::feature_points() const {
  std::vector<double> pts;
  switch (family_) {
    case FuncFamily::kConstant:
      break;
    case FuncFamily::kGaussianBump:
    case FuncFamily::kRationalDecay:
      pts = {center_ - kGaussianSupport * width_, center_, center_ + kGaussianSupport * width_};
      break;
    case FuncFamily::kCompactBump:
      pts = {center_ - width_, center_, center_ + width_};
      break;
    case FuncFamily::kSum:
      for (const auto& t : terms_) {
        auto sub = t.feature_points();
        pts.insert(pts.end(), sub.begin(), sub.end());
      }
      break;
  }
  return pts;
}

FunctionSpec FunctionSpec::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family")) {
    throw config_error("funcspec: expected object with a \"family\" field");
  }
  const std::string family = j.at("family").get<std::string>();
  if (family == "sum") {
    if (!j.contains("terms") || !j.at("terms").is_array()) {
      throw config_error("funcspec: family \"sum\" needs a \"terms\" array");
    }
    std::vector<FunctionSpec> terms;
    for (const auto& t : j.at("terms")) terms.push_back(from_json(t));
    return sum(std::move(terms));
  }

  const auto params = j.value("params", nlohmann::json::object());
  auto get = [&](const char* name, bool required, double fallback) {
    if (params.contains(name)) return params.at(name).get<double>();
    if (required) {
      throw config_error(std::string("funcspec: family \"") + family +
                         "\" is missing parameter \"" + name + "\"");
    }
    return fallback;
  };

  try {
    if (family == "constant") {
      return constant(get("value", true, 0.0));
    }
    const double amplitude = get("amplitude", true, 0.0);
    const double center = get("center", false, 0.0);
    const double width = get("width", true, 1.0);
    if (family == "gaussian_bump") return gaussian_bump(amplitude, center, width);
    if (family == "rational_decay") return rational_decay(amplitude, center, width);
    if (family == "compact_bump") return compact_bump(amplitude, center, width);
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("funcspec: ") + e.what());
  }
  throw config_error("funcspec: unknown family \"" + family + "\"");
}

nlohmann::ordered_json FunctionSpec::to_json() const {
  nlohmann::ordered_json j;
  switch (family_) {
    case FuncFamily::kConstant:
      j["family"] = "constant";
      j["params"] = {{"value", amplitude_}};
      break;
    case FuncFamily::kGaussianBump:
      j["family"] = "gaussian_bump";
      j["params"] = {{"amplitude", amplitude_}, {"center", center_}, {"width", width_}};
      break;
    case FuncFamily::kRationalDecay:
      j["family"] = "rational_decay";
      j["params"] = {{"amplitude", amplitude_}, {"center", center_}, {"width", width_}};
      break;
    case FuncFamily::kCompactBump:
      j["family"] = "compact_bump";
      j["params"] = {{"amplitude", amplitude_}, {"center", center_}, {"width", width_}};
      break;
    case FuncFamily::kSum: {
      j["family"] = "sum";
      auto arr = nlohmann::ordered_json::array();
      for (const auto& t : terms_) arr.push_back(t.to_json());
      j["terms"] = arr;
      break;
    }
  }
  return j;
}

std::string FunctionSpec::describe() const {
  std::ostringstream os;
  switch (family_) {
    case FuncFamily::kConstant:
      os << "const(" << amplitude_ << ")";
      break;
    case FuncFamily::kGaussianBump:
      os << "gauss(A=" << amplitude_ << ",c=" << center_ << ",w=" << width_ << ")";
      break;
    case FuncFamily::kRationalDecay:
      os << "rational(A=" << amplitude_ << ",c=" << center_ << ",w=" << width_ << ")";
      break;
    case FuncFamily::kCompactBump:
      os << "compact(A=" << amplitude_ << ",c=" << center_ << ",w=" << width_ << ")";
      break;
    case FuncFamily::kSum: {
      os << "sum(";
      for (size_t i = 0; i < terms_.size(); ++i) {
        if (i) os << " + ";
        os << terms_[i].describe();
      }
      os << ")";
      break;
    }
  }
  return os.str();
}

}  // namespace strips
