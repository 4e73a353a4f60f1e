// SPDX-License-Identifier: Apache-2.0
#include "convgeo/json_io.hpp"

#include <algorithm>

namespace convgeo {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(Errc::parse, what); }

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field: ") + key);
  return j.at(key);
}

GroundSet ground_from(const json& j) {
  std::vector<std::string> labels;
  for (const auto& e : need(j, "elements")) {
    if (!e.is_string()) bad("elements must be strings");
    labels.push_back(e.get<std::string>());
  }
  return GroundSet(labels);
}

json ground_to(const GroundSet& g) { return json(g.labels()); }

std::vector<int> index_list(const json& j, int n, const char* what) {
  std::vector<int> out;
  for (const auto& e : j) {
    if (!e.is_number_integer()) bad(std::string(what) + " must hold integers");
    int v = e.get<int>();
    if (v < 0 || v >= n) bad(std::string(what) + " index out of range");
    out.push_back(v);
  }
  return out;
}

Rat coord_from(const json& j) {
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number()) return rat_from_double(j.get<double>());
  bad("coordinates must be numbers or rational strings");
}

Vec2 vec2_from(const json& j) {
  if (!j.is_array() || j.size() != 2) bad("expected a [x, y] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

json parse_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) bad("malformed JSON");
  return j;
}

json family_to_json(const SetFamily& family) {
  json sets = json::array();
  for (Mask m : family.members()) sets.push_back(mask_to_indices(m));
  return json{{"elements", ground_to(family.ground())}, {"convex_sets", sets}};
}

SetFamily family_from_json(const json& j) {
  GroundSet ground = ground_from(j);
  std::vector<Mask> members;
  for (const auto& s : need(j, "convex_sets"))
    members.push_back(mask_from_indices(index_list(s, ground.size(), "convex_sets"),
                                        ground.size()));
  return SetFamily(std::move(ground), std::move(members));
}

json geometry_to_json(const ConvexGeometry& geometry) {
  return family_to_json(geometry.family());
}

ConvexGeometry geometry_from_json(const json& j) {
  return ConvexGeometry::from_family(family_from_json(j));
}

json orderings_to_json(const OrderingFamily& orderings) {
  return json{{"elements", ground_to(orderings.ground())},
              {"orders", orderings.orders()}};
}

OrderingFamily orderings_from_json(const json& j) {
  GroundSet ground = ground_from(j);
  std::vector<std::vector<int>> orders;
  for (const auto& o : need(j, "orders"))
    orders.push_back(index_list(o, ground.size(), "orders"));
  return OrderingFamily(std::move(ground), std::move(orders));
}

json point_config_to_json(const RationalPointConfig& config) {
  json points = json::array();
  for (size_t i = 0; i < config.points.size(); ++i) {
    json coords = json::array();
    for (const Rat& c : config.points[i]) coords.push_back(rat_to_string(c));
    points.push_back(json{{"label", config.labels[i]}, {"coords", coords}});
  }
  return json{{"dim", config.dim}, {"points", points}};
}

RationalPointConfig point_config_from_json(const json& j) {
  RationalPointConfig config;
  config.dim = need(j, "dim").get<int>();
  for (const auto& p : need(j, "points")) {
    config.labels.push_back(need(p, "label").get<std::string>());
    std::vector<Rat> coords;
    for (const auto& c : need(p, "coords")) coords.push_back(coord_from(c));
    config.points.push_back(std::move(coords));
  }
  return config;
}

json bodies_to_json(const BodyFamily& family) {
  json bodies = json::array();
  for (int i = 0; i < family.size(); ++i) {
    json b{{"label", family.labels[i]}};
    const PlanarBody& body = family.bodies[i];
    if (const auto* c = std::get_if<Circle>(&body)) {
      b["kind"] = "circle";
      b["center"] = {c->center.x, c->center.y};
      b["r"] = c->radius;
    } else if (const auto* e = std::get_if<EllipseBody>(&body)) {
      b["kind"] = "ellipse";
      b["center"] = {e->center.x, e->center.y};
      b["a"] = e->a;
      b["b"] = e->b;
      b["theta"] = e->theta;
    } else if (const auto* p = std::get_if<PolygonBody>(&body)) {
      b["kind"] = "polygon";
      json verts = json::array();
      for (size_t k = 0; k < p->vertices.size(); ++k) {
        if (p->rational_coords)
          verts.push_back({rat_to_string(p->vertices[k].x),
                           rat_to_string(p->vertices[k].y)});
        else
          verts.push_back({p->vertices_f[k].x, p->vertices_f[k].y});
      }
      b["vertices"] = verts;
    } else {
      const auto& s = std::get<SampledBody>(body);
      b["kind"] = "sampled";
      json pts = json::array();
      for (Vec2 q : s.points) pts.push_back({q.x, q.y});
      b["points"] = pts;
    }
    bodies.push_back(std::move(b));
  }
  return json{{"bodies", bodies}};
}

BodyFamily bodies_from_json(const json& j) {
  BodyFamily family;
  for (const auto& b : need(j, "bodies")) {
    family.labels.push_back(need(b, "label").get<std::string>());
    std::string kind = need(b, "kind").get<std::string>();
    if (kind == "circle") {
      family.bodies.push_back(
          Circle{vec2_from(need(b, "center")), need(b, "r").get<double>()});
    } else if (kind == "ellipse") {
      family.bodies.push_back(EllipseBody{vec2_from(need(b, "center")),
                                          need(b, "a").get<double>(),
                                          need(b, "b").get<double>(),
                                          need(b, "theta").get<double>()});
    } else if (kind == "polygon") {
      bool any_string = false;
      for (const auto& v : need(b, "vertices"))
        for (const auto& c : v)
          if (c.is_string()) any_string = true;
      if (any_string) {
        std::vector<RatVec2> verts;
        for (const auto& v : b.at("vertices")) {
          if (!v.is_array() || v.size() != 2) bad("polygon vertices must be pairs");
          verts.push_back({coord_from(v[0]), coord_from(v[1])});
        }
        family.bodies.push_back(PolygonBody::from_rationals(std::move(verts)));
      } else {
        std::vector<Vec2> verts;
        for (const auto& v : b.at("vertices")) verts.push_back(vec2_from(v));
        family.bodies.push_back(PolygonBody::from_doubles(verts));
      }
    } else if (kind == "sampled") {
      std::vector<Vec2> pts;
      for (const auto& p : need(b, "points")) pts.push_back(vec2_from(p));
      family.bodies.push_back(SampledBody::from_points(std::move(pts)));
    } else {
      bad("unknown body kind: " + kind);
    }
  }
  family.validate();
  return family;
}

std::string shape_to_string(ShapeMode shape) {
  switch (shape) {
    case ShapeMode::inner_polygon: return "inner-polygon";
    case ShapeMode::outer_polygon: return "outer-polygon";
    case ShapeMode::midpoint_polygon: return "midpoint-polygon";
    case ShapeMode::semialgebraic: return "semialgebraic";
  }
  fail(Errc::internal, "unhandled shape mode");
}

ShapeMode shape_from_string(const std::string& text) {
  if (text == "inner-polygon") return ShapeMode::inner_polygon;
  if (text == "outer-polygon") return ShapeMode::outer_polygon;
  if (text == "midpoint-polygon") return ShapeMode::midpoint_polygon;
  if (text == "semialgebraic") return ShapeMode::semialgebraic;
  bad("unknown shape mode: " + text);
}

namespace {

json ratvec_to_json(const RatVec2& v) {
  return {rat_to_string(v.x), rat_to_string(v.y)};
}

RatVec2 ratvec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) bad("expected a rational [x, y] pair");
  return {coord_from(j[0]), coord_from(j[1])};
}

}  // namespace

json planar_rep_to_json(const PlanarRepresentation& rep) {
  const auto& pinched = rep.pinched;
  json directions = json::array();
  for (const auto& u : pinched.frame.directions) directions.push_back(ratvec_to_json(u));
  json pinch = json::array();
  for (const auto& pair : pinched.pairs) {
    json rho1 = json::array(), rho2 = json::array();
    json f1 = json::array(), f2 = json::array();
    for (int i = 0; i < pinched.frame.m; ++i) {
      rho1.push_back(rat_to_string(pair.rho1[i]));
      rho2.push_back(rat_to_string(pair.rho2[i]));
      f1.push_back(ratvec_to_json(pair.f1[i]));
      f2.push_back(ratvec_to_json(pair.f2[i]));
    }
    pinch.push_back(json{{"element", pair.element},
                         {"rho1", rho1},
                         {"rho2", rho2},
                         {"f1", f1},
                         {"f2", f2}});
  }
  return json{{"type", "planar"},
              {"mode", pinched.frame.exact ? "exact" : "float"},
              {"m", pinched.frame.m},
              {"epsilon", rat_to_string(pinched.frame.epsilon)},
              {"shape", shape_to_string(rep.shape)},
              {"elements", ground_to(pinched.orderings.ground())},
              {"orders", pinched.orderings.orders()},
              {"directions", directions},
              {"pinch", pinch},
              {"bodies", bodies_to_json(rep.bodies)}};
}

PlanarRepresentation planar_rep_from_json(const json& j) {
  if (need(j, "type").get<std::string>() != "planar")
    bad("not a planar representation");
  PlanarRepresentation rep;
  DirectionFrame frame;
  frame.m = need(j, "m").get<int>();
  frame.exact = need(j, "mode").get<std::string>() == "exact";
  frame.epsilon = rat_from_string(need(j, "epsilon").get<std::string>());
  frame.epsilon_f = rat_to_double(frame.epsilon);
  for (const auto& d : need(j, "directions")) {
    RatVec2 u = ratvec_from_json(d);
    frame.directions.push_back(u);
    frame.directions_f.push_back({rat_to_double(u.x), rat_to_double(u.y)});
  }
  if (static_cast<int>(frame.directions.size()) != frame.m)
    bad("direction count differs from m");

  GroundSet ground = ground_from(j);
  std::vector<std::vector<int>> orders;
  for (const auto& o : need(j, "orders"))
    orders.push_back(index_list(o, ground.size(), "orders"));
  OrderingFamily orderings(ground, std::move(orders));
  if (orderings.count() != frame.m) bad("order count differs from m");

  rep.pinched.frame = std::move(frame);
  rep.pinched.orderings = std::move(orderings);
  for (const auto& p : need(j, "pinch")) {
    PinchedPair pair;
    pair.element = need(p, "element").get<int>();
    for (const auto& r : need(p, "rho1")) pair.rho1.push_back(coord_from(r));
    for (const auto& r : need(p, "rho2")) pair.rho2.push_back(coord_from(r));
    for (const auto& f : need(p, "f1")) pair.f1.push_back(ratvec_from_json(f));
    for (const auto& f : need(p, "f2")) pair.f2.push_back(ratvec_from_json(f));
    rep.pinched.pairs.push_back(std::move(pair));
  }
  if (rep.pinched.pairs.size() != static_cast<size_t>(ground.size()))
    bad("pinch data does not cover the ground set");
  rep.shape = shape_from_string(need(j, "shape").get<std::string>());
  rep.bodies = bodies_from_json(need(j, "bodies"));
  if (rep.bodies.size() != ground.size()) bad("body count differs from ground set");
  return rep;
}

json ellipsoid_rep_to_json(const EllipsoidRepresentation& rep) {
  json elements = json::array();
  for (int g = 0; g < rep.orderings.n(); ++g)
    elements.push_back(json{{"label", rep.orderings.ground().label(g)},
                            {"semiaxes", rep.ellipsoids[g].semiaxes}});
  return json{{"type", "ellipsoid"},
              {"dim", rep.dprime},
              {"s", rep.s},
              {"elements", elements},
              {"orderings_used", rep.orderings.orders()}};
}

EllipsoidRepresentation ellipsoid_rep_from_json(const json& j) {
  if (need(j, "type").get<std::string>() != "ellipsoid")
    bad("not an ellipsoid representation");
  int dim = need(j, "dim").get<int>();
  double s = need(j, "s").get<double>();
  std::vector<std::string> labels;
  std::vector<AxisEllipsoid> ellipsoids;
  for (const auto& e : need(j, "elements")) {
    labels.push_back(need(e, "label").get<std::string>());
    AxisEllipsoid ell;
    for (const auto& a : need(e, "semiaxes")) ell.semiaxes.push_back(a.get<double>());
    if (ell.dim() != dim) bad("semiaxis count differs from dim");
    ellipsoids.push_back(std::move(ell));
  }
  GroundSet ground(labels);
  std::vector<std::vector<int>> orders;
  for (const auto& o : need(j, "orderings_used"))
    orders.push_back(index_list(o, ground.size(), "orderings_used"));
  OrderingFamily orderings(ground, std::move(orders));
  if (orderings.count() != dim) bad("ordering count differs from dim");

  // rebuild and cross-check against the serialized semiaxes
  EllipsoidRepresentation rep = represent_ellipsoids(orderings, s);
  if (rep.dprime != dim) bad("dim is inconsistent with the orderings");
  for (size_t g = 0; g < ellipsoids.size(); ++g)
    for (int i = 0; i < dim; ++i)
      if (std::fabs(rep.ellipsoids[g].semiaxes[i] - ellipsoids[g].semiaxes[i]) > 1e-9)
        bad("semiaxes do not match the construction over orderings_used");
  return rep;
}

json axiom_report_to_json(const AxiomReport& report, const GroundSet& ground) {
  json j{{"valid", report.valid}};
  if (!report.valid) {
    j["violated_axiom"] = report.violated_axiom;
    j["message"] = report.message;
    if (report.witness_x) j["witness_x"] = mask_to_indices(*report.witness_x);
    if (report.witness_y) j["witness_y"] = mask_to_indices(*report.witness_y);
  }
  return j;
}

json anti_exchange_report_to_json(const AntiExchangeReport& report,
                                  const GroundSet& ground) {
  json j{{"valid", report.valid}, {"empty_is_fixed", report.empty_is_fixed}};
  if (!report.valid) {
    j["failure"] = report.failure;
    j["message"] = report.message;
    j["witness_set"] = mask_to_indices(report.witness_set);
    if (report.witness_x >= 0) j["witness_x"] = report.witness_x;
    if (report.witness_y >= 0) j["witness_y"] = report.witness_y;
  }
  return j;
}

}  // namespace convgeo
