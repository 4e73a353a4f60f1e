// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "convgeo/core.hpp"
#include "convgeo/rational.hpp"

namespace convgeo {

struct Vec2 {
  double x = 0, y = 0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 v);
Vec2 unit_at(double angle);

struct Circle {
  Vec2 center;
  double radius = 1;
};

struct EllipseBody {
  Vec2 center;
  double a = 1;  // semi-axes, a >= b > 0
  double b = 1;
  double theta = 0;  // rotation of the a-axis
};

/// Convex polygon, counterclockwise. Exact rational vertices are always
/// kept (doubles are embedded exactly as dyadic rationals), so all-polygon
/// computations can run on exact predicates.
struct PolygonBody {
  std::vector<RatVec2> vertices;
  std::vector<Vec2> vertices_f;  // cached double view
  bool rational_coords = false;  // serialized as rational strings when set

  static PolygonBody from_doubles(const std::vector<Vec2>& vertices);
  static PolygonBody from_rationals(std::vector<RatVec2> vertices);
};

/// Dense counterclockwise convex polyline standing in for a smooth body.
/// Operations see it through its vertex support maximum; accuracy is
/// bounded by the sampling density and not certified.
struct SampledBody {
  std::vector<Vec2> points;

  static SampledBody from_points(std::vector<Vec2> points, double convexity_tol = 1e-9);
};

using PlanarBody = std::variant<Circle, EllipseBody, PolygonBody, SampledBody>;

struct BodyFamily {
  std::vector<std::string> labels;
  std::vector<PlanarBody> bodies;

  int size() const { return static_cast<int>(bodies.size()); }
  GroundSet ground() const { return GroundSet(labels); }
  void validate() const;  // distinct labels, shapes well-formed
  bool all_polygons() const;
};

struct NumericOptions {
  int hull_grid = 4096;       // direction grid for containment margins
  int crossing_grid = 8192;   // direction grid for support-equality roots
  double tolerance = 1e-9;    // margin below which containment is inconclusive
  double tangency_tol = 1e-10;
  double root_refine = 1e-12;  // bisection width target for crossing roots
};

/// h(K,u) = max over K of <u,y>; u must be unit (checked to 1e-12).
double support(const PlanarBody& body, Vec2 u);

/// Support of the convex hull of the union of the selected bodies:
/// max over the subset of the individual supports. Throws on empty subsets.
double hull_support(const BodyFamily& family, Mask subset, Vec2 u);

enum class HullMode { automatic, exact, numeric };

struct HullCertificate {
  bool exact = false;
  double margin = 0;    // min over directions of hull support minus body support
  Vec2 direction;       // where the margin is attained (numeric mode)
};

struct InHullResult {
  bool inside = false;
  HullCertificate certificate;
};

/// Is body `index` contained in the convex hull of the union of `subset`?
/// Exact mode requires polygons throughout; numeric mode scans a direction
/// grid with local refinement and throws Errc::tolerance_inconclusive when
/// the margin lands within +-tolerance.
InHullResult in_hull(const BodyFamily& family, int index, Mask subset,
                     HullMode mode = HullMode::automatic,
                     const NumericOptions& opts = {});

/// conv closure on indices: everything inside the hull of the subset.
Mask conv_closure(const BodyFamily& family, Mask subset,
                  HullMode mode = HullMode::automatic,
                  const NumericOptions& opts = {});

/// Memoizing subset-closure evaluator over one family (shared support
/// tables); usable as a ClosureOperator for the anti-exchange check.
ClosureOperator body_closure_operator(const BodyFamily& family,
                                      HullMode mode = HullMode::automatic,
                                      const NumericOptions& opts = {});

/// The convex geometry of conv-closed subsets. Requires n <= 12 and finite
/// pairwise common supporting directions (Errc::infinite_contact otherwise).
ConvexGeometry geometry_from_bodies(const BodyFamily& family,
                                    HullMode mode = HullMode::automatic,
                                    const NumericOptions& opts = {});

/// Directions u on the unit circle where the two support functions agree;
/// each corresponds to a common supporting line with both bodies on the
/// same side. Tangential touches count once. Throws
/// Errc::degenerate_identical when the difference vanishes on an interval.
std::vector<double> common_supporting_directions(const PlanarBody& b1,
                                                 const PlanarBody& b2,
                                                 const NumericOptions& opts = {});

struct SweepResult {
  OrderingFamily orderings;           // deduplicated regular-direction orders
  std::vector<double> crossing_angles;  // union over pairs, deduplicated
  std::vector<std::vector<int>> pair_counts;  // [i][j] crossing count, i<j
  int max_pair_count = 0;             // k in the bound k*C(n,2)
  int total_crossings = 0;            // sum over pairs
};

/// Partitions the circle by all pairwise support crossings, picks one
/// regular direction per arc, and orders the bodies by support value there.
SweepResult sweep_orderings(const BodyFamily& family,
                            const NumericOptions& opts = {});

struct UpperBoundCheck {
  bool skipped = false;  // fewer than two bodies: the bound concerns pairs
  bool ok = true;
  int k = 0;
  int bound = 0;
  int cdim_value = 0;
};

/// cdim of the derived geometry against k * n(n-1)/2.
UpperBoundCheck cdim_upper_bound_check(const BodyFamily& family,
                                       HullMode mode = HullMode::automatic,
                                       const NumericOptions& opts = {});

/// No selected body lies in the hull of the others. |subset| >= 2.
bool convex_position(const BodyFamily& family, Mask subset,
                     HullMode mode = HullMode::automatic,
                     const NumericOptions& opts = {});

/// Level set { prod of edge halfplane forms >= alpha } of a convex polygon,
/// traced by radial bisection from the interior maximizer of the product.
/// Strictly convex approximation of the polygon for small alpha.
SampledBody semialgebraic_body(const PolygonBody& polygon, double alpha,
                               int samples = 720);

/// Largest value of the halfplane product over the polygon (the alpha cap).
double halfplane_product_peak(const PolygonBody& polygon);

}  // namespace convgeo
