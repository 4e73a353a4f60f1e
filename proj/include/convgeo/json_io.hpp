// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <string>

#include "convgeo/bodies.hpp"
#include "convgeo/core.hpp"
#include "convgeo/dimension.hpp"
#include "convgeo/ellipsoid_rep.hpp"
#include "convgeo/planar_rep.hpp"

namespace convgeo {

using nlohmann::json;

// Formats, one object each:
//   geometry   {"elements": [...], "convex_sets": [[indices], ...]}
//   orderings  {"elements": [...], "orders": [[indices first-to-last], ...]}
//   points     {"dim": d, "points": [{"label": "...", "coords": ["p/q", ...]}]}
//   bodies     {"bodies": [{"label": "...", "kind": "circle|ellipse|polygon|sampled", ...}]}
// Parsers throw Errc::parse on malformed input.

json geometry_to_json(const ConvexGeometry& geometry);
ConvexGeometry geometry_from_json(const json& j);

json family_to_json(const SetFamily& family);
SetFamily family_from_json(const json& j);  // no axiom validation

json orderings_to_json(const OrderingFamily& orderings);
OrderingFamily orderings_from_json(const json& j);

json point_config_to_json(const RationalPointConfig& config);
RationalPointConfig point_config_from_json(const json& j);

json bodies_to_json(const BodyFamily& family);
BodyFamily bodies_from_json(const json& j);

std::string shape_to_string(ShapeMode shape);
ShapeMode shape_from_string(const std::string& text);

json planar_rep_to_json(const PlanarRepresentation& rep);
PlanarRepresentation planar_rep_from_json(const json& j);

json ellipsoid_rep_to_json(const EllipsoidRepresentation& rep);
EllipsoidRepresentation ellipsoid_rep_from_json(const json& j);

json axiom_report_to_json(const AxiomReport& report, const GroundSet& ground);
json anti_exchange_report_to_json(const AntiExchangeReport& report,
                                  const GroundSet& ground);

json parse_json_text(const std::string& text);

}  // namespace convgeo
