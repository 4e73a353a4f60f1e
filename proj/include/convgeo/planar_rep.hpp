// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "convgeo/bodies.hpp"
#include "convgeo/core.hpp"
#include "convgeo/rational.hpp"

namespace convgeo {

/// Ray directions of the construction. In exact mode these are rational
/// points on the unit circle (tan-half-angle rationalization of 2*pi*k/m),
/// so every downstream predicate is decided exactly; otherwise they are the
/// double-rounded cosine/sine pairs, embedded exactly as dyadic rationals.
struct DirectionFrame {
  int m = 0;
  bool exact = false;
  std::vector<RatVec2> directions;
  std::vector<Vec2> directions_f;
  Rat epsilon;
  double epsilon_f = 0;
};

/// Half of min(|sec(2*pi/m)| - 1, 1); the secant bound keeps every outer
/// point below the supporting lines of the other rays, and is capped at 1
/// where it degenerates (m = 4). Callers shrink further until the
/// separation property validates.
double default_epsilon(int m);

DirectionFrame float_frame(int m, const Rat& epsilon);
DirectionFrame rational_frame(int m, const Rat& epsilon);

/// Per-element data: two radii per ray pinching the element's pair of
/// polygons. With place j on ray i (of m rays):
///   rho1 = 1 + (2j-1)/(2m) * eps,   rho2 = 1 + (2j)/(2m) * eps.
struct PinchedPair {
  int element = -1;
  std::vector<Rat> rho1, rho2;
  std::vector<RatVec2> f1, f2;
};

struct PinchedSet {
  DirectionFrame frame;
  OrderingFamily orderings;  // input orderings padded cyclically to frame.m
  std::vector<PinchedPair> pairs;
};

struct LineCheck {
  bool ok = true;
  int ray_i = -1, ray_k = -1;  // offending ray pair when not ok
  double margin = 0;           // worst separation, exact sign
};

/// For every construction point P on ray i, every point of every other ray
/// lies strictly on the origin side of the line through P with normal u_i.
/// (Points on ray i itself are ordered radially by the disjointness
/// property instead.) Decided exactly on the stored coordinates.
LineCheck validate_line_property(const PinchedSet& pinched);

/// Segments F1F2 of distinct elements are disjoint on every ray.
bool validate_disjoint_property(const PinchedSet& pinched);

/// Builds frame, radii and points. Pads the ordering family cyclically to
/// max(m_request, count, 3) rays. With validate set, throws
/// Errc::line_property_violated when epsilon is too large for the frame.
PinchedSet build_pinched(const OrderingFamily& orderings, int m_request,
                         std::optional<Rat> epsilon, bool exact_frame,
                         bool validate = true);

enum class ShapeMode { inner_polygon, outer_polygon, midpoint_polygon, semialgebraic };

/// One body per element, pinched between its two polygons.
BodyFamily make_bodies(const PinchedSet& pinched, ShapeMode shape);

struct PlanarRepresentation {
  PinchedSet pinched;
  ShapeMode shape = ShapeMode::inner_polygon;
  BodyFamily bodies;
};

/// The full construction. epsilon <= 0 picks the default and halves it until
/// the separation property holds; an explicit epsilon must validate as is.
PlanarRepresentation represent_planar(const OrderingFamily& orderings, int m = 0,
                                      double epsilon = 0,
                                      ShapeMode shape = ShapeMode::inner_polygon,
                                      bool exact_frame = true);

struct PlanarIsoResult {
  bool ok = false;
  std::optional<Mask> witness;  // first subset convex on one side only
  std::string note;
};

/// Derives the geometry of the representation bodies and compares it with
/// the abstract geometry under the element-to-body correspondence.
PlanarIsoResult verify_isomorphism_planar(const ConvexGeometry& geometry,
                                          const PlanarRepresentation& rep,
                                          const NumericOptions& opts = {});

struct SandwichReport {
  bool inner_ok = false;   // frame polygon inside every body
  bool outer_ok = false;   // every body inside (1 + eps) * frame polygon
  double outer_scale = 0;  // smallest verified enclosing scale
  double bound = 0;        // 1 + eps
};

/// Checks R_m subseteq K(x) subseteq scale * R_m for all elements, exactly
/// for polygon shapes. outer_ok compares against 1 + eps, which requires at
/// least as many rays as places.
SandwichReport sandwich_check(const PlanarRepresentation& rep);

/// max(sup_K d(., unit disk), sup_disk d(., K)), sampled on the circle.
double hausdorff_to_unit_disk(const PlanarBody& body, int samples = 2048);

}  // namespace convgeo
