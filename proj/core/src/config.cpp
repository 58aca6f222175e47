#include "strips/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "strips/errors.hpp"

namespace strips {

GeometryConfig parse_geometry_config(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw config_error("geometry config: expected a JSON object");
  }
  for (const char* field : {"a", "kappa", "tau", "theta"}) {
    if (!j.contains(field)) {
      throw config_error(std::string("geometry config: missing field \"") + field +
                         "\"");
    }
  }
  double a = 0.0;
  try {
    a = j.at("a").get<double>();
  } catch (const nlohmann::json::exception&) {
    throw config_error("geometry config: \"a\" must be a number");
  }

  try {
    StripGeometry geom(a, FunctionSpec::from_json(j.at("kappa")),
                       FunctionSpec::from_json(j.at("tau")),
                       FunctionSpec::from_json(j.at("theta")));
    GeometryConfig cfg{std::move(geom), std::nullopt};
    if (j.contains("eps0")) {
      const double eps0 = j.at("eps0").get<double>();
      if (eps0 < 0.0) throw config_error("geometry config: eps0 must be >= 0");
      cfg.envelope = CurvatureEnvelope{eps0};
    }
    return cfg;
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("geometry config: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("geometry config: ") + e.what());
  }
}

GeometryConfig load_geometry_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw config_error("geometry config: cannot open \"" + path + "\"");
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw config_error("geometry config: parse error in \"" + path + "\": " + e.what());
  }
  return parse_geometry_config(j);
}

}  // namespace strips
