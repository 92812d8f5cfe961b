#pragma once

#include <json.hpp>

#include "tilt/tilt.hpp"

namespace tilt {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// {"group": ..., "params": [...]} plus "fep_grid" for rotational maps and a
/// row-major 3x3 "homography" for affine and projective maps.
Json to_json(const TransformParams& tau);
TransformParams transform_from_json(const Json& j);

Json to_json(const WindowSpec& window);
WindowSpec window_from_json(const Json& j);

/// Scalar fields, traces and provenance; I0/E are written separately (PNG/CSV).
Json to_json(const SolveResult& result);
SolveResult solve_result_from_json(const Json& j);

}  // namespace tilt
