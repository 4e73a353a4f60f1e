// SPDX-License-Identifier: Apache-2.0
#include "convgeo/planar_rep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace convgeo {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950;

}  // namespace

double default_epsilon(int m) {
  if (m < 3) fail(Errc::invalid_argument, "frames need at least 3 directions");
  double c = std::cos(2 * kPi / m);
  double bound = std::fabs(c) < 1e-12 ? 1.0 : 1.0 / std::fabs(c) - 1.0;
  return std::min(bound, 1.0) / 2.0;
}

DirectionFrame float_frame(int m, const Rat& epsilon) {
  if (m < 3) fail(Errc::invalid_argument, "frames need at least 3 directions");
  DirectionFrame frame;
  frame.m = m;
  frame.exact = false;
  frame.epsilon = epsilon;
  frame.epsilon_f = rat_to_double(epsilon);
  if (!(frame.epsilon_f > 0)) fail(Errc::invalid_argument, "epsilon must be positive");
  for (int k = 0; k < m; ++k) {
    double angle = 2 * kPi * k / m;
    Vec2 u = unit_at(angle);
    frame.directions_f.push_back(u);
    frame.directions.push_back({rat_from_double(u.x), rat_from_double(u.y)});
  }
  return frame;
}

DirectionFrame rational_frame(int m, const Rat& epsilon) {
  if (m < 3) fail(Errc::invalid_argument, "frames need at least 3 directions");
  DirectionFrame frame;
  frame.m = m;
  frame.exact = true;
  frame.epsilon = epsilon;
  frame.epsilon_f = rat_to_double(epsilon);
  if (!(epsilon > 0)) fail(Errc::invalid_argument, "epsilon must be positive");
  for (int k = 0; k < m; ++k) {
    RatVec2 u;
    if (2 * k == m) {
      u = {Rat(-1), Rat(0)};  // tan of the half angle blows up at pi
    } else {
      // t = tan(pi*k/m) rationalized; u = ((1-t^2), 2t)/(1+t^2) is exactly
      // on the unit circle
      Rat t = rat_approx(std::tan(kPi * k / m), 4096);
      Rat t2 = t * t;
      u = {(1 - t2) / (1 + t2), 2 * t / (1 + t2)};
    }
    frame.directions.push_back(u);
    frame.directions_f.push_back({rat_to_double(u.x), rat_to_double(u.y)});
  }
  return frame;
}

LineCheck validate_line_property(const PinchedSet& pinched) {
  LineCheck check;
  const int m = pinched.frame.m;
  const int n = pinched.orderings.n();
  if (n == 0) return check;
  // extremes per ray: every ray carries the same set of places 1..n
  // min rho = 1 + eps/(2m) (place 1, inner), max rho = 1 + n*eps/m (place n, outer)
  const Rat& eps = pinched.frame.epsilon;
  Rat rho_min = 1 + eps / (2 * m);
  Rat rho_max = 1 + Rat(2 * n) * eps / (2 * m);
  check.margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      if (k == i) continue;
      const RatVec2& ui = pinched.frame.directions[i];
      const RatVec2& uk = pinched.frame.directions[k];
      Rat c = dot(uk, ui);
      Rat uu = dot(ui, ui);
      // worst point on ray k against the innermost line on ray i
      Rat lhs = (c > 0 ? rho_max : rho_min) * c;
      Rat margin = rho_min * uu - lhs;
      double margin_f = rat_to_double(margin);
      if (margin_f < check.margin) {
        check.margin = margin_f;
        if (margin <= 0) {
          check.ok = false;
          check.ray_i = i;
          check.ray_k = k;
          return check;
        }
      }
    }
  return check;
}

bool validate_disjoint_property(const PinchedSet& pinched) {
  const int n = pinched.orderings.n();
  const int m = pinched.frame.m;
  if (n == 0) return true;
  for (int i = 0; i < m; ++i) {
    // radial intervals per place must be pairwise disjoint
    std::vector<std::pair<Rat, Rat>> intervals;
    for (const auto& pair : pinched.pairs)
      intervals.emplace_back(pair.rho1[i], pair.rho2[i]);
    std::sort(intervals.begin(), intervals.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t j = 0; j + 1 < intervals.size(); ++j) {
      if (!(intervals[j].second < intervals[j + 1].first)) return false;
      if (!(intervals[j].first < intervals[j].second)) return false;
    }
  }
  return true;
}

PinchedSet build_pinched(const OrderingFamily& orderings, int m_request,
                         std::optional<Rat> epsilon, bool exact_frame,
                         bool validate) {
  const int m = std::max({m_request, orderings.count(), 3});
  std::vector<std::vector<int>> padded;
  for (int i = 0; i < m; ++i) padded.push_back(orderings.orders()[i % orderings.count()]);
  OrderingFamily full(orderings.ground(), std::move(padded));

  Rat eps = epsilon ? *epsilon : rat_from_double(default_epsilon(m));
  PinchedSet pinched;
  pinched.frame = exact_frame ? rational_frame(m, eps) : float_frame(m, eps);
  pinched.orderings = full;

  const int n = full.n();
  for (int x = 0; x < n; ++x) {
    PinchedPair pair;
    pair.element = x;
    for (int i = 0; i < m; ++i) {
      int j = full.place(i, x);
      Rat rho1 = 1 + Rat(2 * j - 1) * eps / (2 * m);
      Rat rho2 = 1 + Rat(2 * j) * eps / (2 * m);
      pair.rho1.push_back(rho1);
      pair.rho2.push_back(rho2);
      pair.f1.push_back(rho1 * pinched.frame.directions[i]);
      pair.f2.push_back(rho2 * pinched.frame.directions[i]);
    }
    pinched.pairs.push_back(std::move(pair));
  }

  if (validate) {
    LineCheck line = validate_line_property(pinched);
    if (!line.ok)
      fail(Errc::line_property_violated,
           "epsilon " + rat_to_string(eps) +
               " breaks the separation property between rays " +
               std::to_string(line.ray_i) + " and " + std::to_string(line.ray_k));
    if (!validate_disjoint_property(pinched))
      fail(Errc::internal, "radial segments of distinct elements overlap");
  }
  return pinched;
}

namespace {

PolygonBody polygon_from(const std::vector<RatVec2>& vertices) {
  return PolygonBody::from_rationals(vertices);
}

SampledBody semialgebraic_from_pinch(const PinchedPair& pair, const PinchedSet& pinched) {
  std::vector<RatVec2> mid;
  for (size_t i = 0; i < pair.f1.size(); ++i)
    mid.push_back(Rat(1, 2) * (pair.f1[i] + pair.f2[i]));
  PolygonBody midpoly = polygon_from(mid);
  // alpha at half the worst inner-vertex product keeps the inner polygon
  // inside the level set; the level set sits inside the midpoint polygon
  auto planes_product = [&](Vec2 p) {
    const auto& v = midpoly.vertices_f;
    double acc = 1;
    for (size_t i = 0; i < v.size(); ++i) {
      Vec2 a = v[i], b = v[(i + 1) % v.size()];
      Vec2 inward{-(b.y - a.y), b.x - a.x};
      double len = norm(inward);
      acc *= (dot(inward, p) - dot(inward, a)) / len;
    }
    return acc;
  };
  double alpha = std::numeric_limits<double>::infinity();
  for (const auto& f : pair.f1)
    alpha = std::min(alpha, planes_product({rat_to_double(f.x), rat_to_double(f.y)}));
  if (!(alpha > 0))
    fail(Errc::shape_containment_failed,
         "inner polygon vertex landed outside the midpoint polygon");
  SampledBody body = semialgebraic_body(midpoly, alpha / 2, 720);

  // verify the pinch: every trace point inside the outer polygon and every
  // inner vertex inside the trace
  std::vector<RatVec2> outer_hull = convex_hull(pair.f2);
  std::vector<RatVec2> trace;
  for (Vec2 p : body.points) trace.push_back({rat_from_double(p.x), rat_from_double(p.y)});
  for (const auto& p : trace)
    if (!point_in_ccw_hull(p, outer_hull))
      fail(Errc::shape_containment_failed, "trace left the outer polygon");
  auto trace_hull = convex_hull(trace);
  for (const auto& f : pair.f1)
    if (!point_in_ccw_hull(f, trace_hull))
      fail(Errc::shape_containment_failed, "trace does not cover the inner polygon");
  return body;
}

}  // namespace

BodyFamily make_bodies(const PinchedSet& pinched, ShapeMode shape) {
  BodyFamily fam;
  fam.labels = pinched.orderings.ground().labels();
  for (const auto& pair : pinched.pairs) {
    switch (shape) {
      case ShapeMode::inner_polygon:
        fam.bodies.push_back(polygon_from(pair.f1));
        break;
      case ShapeMode::outer_polygon:
        fam.bodies.push_back(polygon_from(pair.f2));
        break;
      case ShapeMode::midpoint_polygon: {
        std::vector<RatVec2> mid;
        for (size_t i = 0; i < pair.f1.size(); ++i)
          mid.push_back(Rat(1, 2) * (pair.f1[i] + pair.f2[i]));
        fam.bodies.push_back(polygon_from(mid));
        break;
      }
      case ShapeMode::semialgebraic:
        fam.bodies.push_back(semialgebraic_from_pinch(pair, pinched));
        break;
    }
  }
  fam.validate();
  return fam;
}

PlanarRepresentation represent_planar(const OrderingFamily& orderings, int m,
                                      double epsilon, ShapeMode shape,
                                      bool exact_frame) {
  PlanarRepresentation rep;
  if (epsilon > 0) {
    rep.pinched = build_pinched(orderings, m, rat_from_double(epsilon), exact_frame);
  } else {
    const int rays = std::max({m, orderings.count(), 3});
    Rat eps = rat_from_double(default_epsilon(rays));
    PinchedSet pinched;
    bool ok = false;
    for (int tries = 0; tries < 80; ++tries) {
      pinched = build_pinched(orderings, m, eps, exact_frame, false);
      if (validate_line_property(pinched).ok && validate_disjoint_property(pinched)) {
        ok = true;
        break;
      }
      eps /= 2;
    }
    if (!ok)
      fail(Errc::line_property_violated,
           "no epsilon satisfied the separation property");
    rep.pinched = std::move(pinched);
  }
  rep.shape = shape;
  rep.bodies = make_bodies(rep.pinched, shape);
  return rep;
}

PlanarIsoResult verify_isomorphism_planar(const ConvexGeometry& geometry,
                                          const PlanarRepresentation& rep,
                                          const NumericOptions& opts) {
  PlanarIsoResult result;
  if (geometry.ground() != rep.pinched.orderings.ground()) {
    result.note = "representation was built over a different ground set";
    return result;
  }
  ConvexGeometry derived = geometry_from_bodies(rep.bodies, HullMode::automatic, opts);
  if (derived.family() == geometry.family()) {
    result.ok = true;
    return result;
  }
  std::vector<Mask> diff;
  for (Mask x : geometry.family().members())
    if (!derived.family().contains(x)) diff.push_back(x);
  for (Mask x : derived.family().members())
    if (!geometry.family().contains(x)) diff.push_back(x);
  std::sort(diff.begin(), diff.end(), canonical_mask_less);
  result.witness = diff.empty() ? std::optional<Mask>{} : std::optional<Mask>{diff[0]};
  result.note = "derived and abstract families disagree";
  return result;
}

namespace {

// Minkowski functional of the frame polygon conv{u_k}, evaluated exactly.
Rat frame_gauge(const std::vector<RatVec2>& frame_hull, const RatVec2& p) {
  Rat best(0);
  const size_t n = frame_hull.size();
  for (size_t i = 0; i < n; ++i) {
    const RatVec2& a = frame_hull[i];
    const RatVec2& b = frame_hull[(i + 1) % n];
    RatVec2 outward{b.y - a.y, -(b.x - a.x)};
    Rat denom = dot(outward, a);
    if (denom <= 0) fail(Errc::internal, "frame polygon does not contain the origin");
    Rat val = dot(outward, p) / denom;
    if (val > best) best = val;
  }
  return best;
}

std::vector<RatVec2> body_points_exact(const PlanarBody& body) {
  if (const auto* poly = std::get_if<PolygonBody>(&body)) return poly->vertices;
  if (const auto* s = std::get_if<SampledBody>(&body)) {
    std::vector<RatVec2> out;
    for (Vec2 p : s->points) out.push_back({rat_from_double(p.x), rat_from_double(p.y)});
    return out;
  }
  fail(Errc::invalid_argument, "sandwich check expects polygonal or sampled bodies");
}

}  // namespace

SandwichReport sandwich_check(const PlanarRepresentation& rep) {
  SandwichReport report;
  const auto& frame = rep.pinched.frame;
  report.bound = 1 + frame.epsilon_f;
  auto frame_hull = convex_hull(frame.directions);
  if (frame_hull.size() != frame.directions.size())
    fail(Errc::internal, "frame directions not in convex position");

  report.inner_ok = true;
  Rat worst_scale(0);
  for (int x = 0; x < rep.bodies.size(); ++x) {
    auto pts = body_points_exact(rep.bodies.bodies[x]);
    auto body_hull = convex_hull(pts);
    for (const auto& u : frame.directions)
      if (!point_in_ccw_hull(u, body_hull)) report.inner_ok = false;
    for (const auto& p : pts) {
      Rat g = frame_gauge(frame_hull, p);
      if (g > worst_scale) worst_scale = g;
    }
  }
  report.outer_scale = rat_to_double(worst_scale);
  report.outer_ok = worst_scale <= Rat(1) + frame.epsilon;
  return report;
}

double hausdorff_to_unit_disk(const PlanarBody& body, int samples) {
  std::vector<Vec2> pts;
  if (const auto* poly = std::get_if<PolygonBody>(&body))
    pts = poly->vertices_f;
  else if (const auto* s = std::get_if<SampledBody>(&body))
    pts = s->points;
  else
    fail(Errc::invalid_argument, "hausdorff check expects polygonal or sampled bodies");

  double out_dist = 0;  // how far the body pokes out of the disk
  for (Vec2 p : pts) out_dist = std::max(out_dist, norm(p) - 1);

  double in_dist = 0;  // how far the disk pokes out of the body
  const size_t n = pts.size();
  for (int k = 0; k < samples; ++k) {
    Vec2 z = unit_at(2 * kPi * k / samples);
    bool inside = true;
    double dist = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < n; ++i) {
      Vec2 a = pts[i], b = pts[(i + 1) % n];
      if (cross(b - a, z - a) < 0) inside = false;
      Vec2 ab = b - a;
      double t = std::clamp(dot(z - a, ab) / dot(ab, ab), 0.0, 1.0);
      dist = std::min(dist, norm(z - (a + t * ab)));
    }
    if (!inside) in_dist = std::max(in_dist, dist);
  }
  return std::max(out_dist, in_dist);
}

}  // namespace convgeo
