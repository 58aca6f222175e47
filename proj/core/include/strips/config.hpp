#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "strips/geometry.hpp"

namespace strips {

/// Geometry document:
///   { "a": real, "kappa": funcspec, "tau": funcspec, "theta": funcspec,
///     "eps0": real? }
/// with funcspec = { "family": ..., "params": {...} } or
///                 { "family": "sum", "terms": [funcspec...] }.
struct GeometryConfig {
  StripGeometry geometry;
  std::optional<CurvatureEnvelope> envelope;
};

GeometryConfig parse_geometry_config(const nlohmann::json& j);
GeometryConfig load_geometry_config(const std::string& path);

}  // namespace strips
