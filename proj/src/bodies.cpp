// SPDX-License-Identifier: Apache-2.0
#include "convgeo/bodies.hpp"

#include "convgeo/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <set>
#include <unordered_map>

namespace convgeo {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0) a += kTwoPi;
  return a;
}

void check_unit(Vec2 u) {
  if (std::fabs(dot(u, u) - 1.0) > 1e-12)
    fail(Errc::invalid_argument, "direction must be a unit vector");
}

// golden-section minimum of f on [lo, hi]
std::pair<double, double> golden_min(const std::function<double(double)>& f,
                                     double lo, double hi, int iters = 90) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters && (b - a) > 1e-15; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

}  // namespace

double norm(Vec2 v) { return std::hypot(v.x, v.y); }
Vec2 unit_at(double angle) { return {std::cos(angle), std::sin(angle)}; }

PolygonBody PolygonBody::from_doubles(const std::vector<Vec2>& vertices) {
  PolygonBody p;
  p.vertices_f = vertices;
  p.vertices.reserve(vertices.size());
  for (Vec2 v : vertices)
    p.vertices.push_back({rat_from_double(v.x), rat_from_double(v.y)});
  return p;
}

PolygonBody PolygonBody::from_rationals(std::vector<RatVec2> vertices) {
  PolygonBody p;
  p.rational_coords = true;
  p.vertices = std::move(vertices);
  p.vertices_f.reserve(p.vertices.size());
  for (const auto& v : p.vertices)
    p.vertices_f.push_back({rat_to_double(v.x), rat_to_double(v.y)});
  return p;
}

SampledBody SampledBody::from_points(std::vector<Vec2> points, double convexity_tol) {
  if (points.size() < 3)
    fail(Errc::invalid_argument, "sampled boundary needs at least 3 points");
  double scale = 0;
  for (Vec2 p : points) scale = std::max({scale, std::fabs(p.x), std::fabs(p.y)});
  const double tol = convexity_tol * std::max(1.0, scale * scale);
  const size_t n = points.size();
  double area2 = 0;
  for (size_t i = 0; i < n; ++i) area2 += cross(points[i], points[(i + 1) % n]);
  if (area2 <= 0)
    fail(Errc::invalid_argument, "sampled boundary must be counterclockwise");
  for (size_t i = 0; i < n; ++i) {
    Vec2 a = points[i], b = points[(i + 1) % n], c = points[(i + 2) % n];
    if (cross(b - a, c - b) < -tol)
      fail(Errc::non_convex_trace, "sampled boundary is not convex within tolerance");
  }
  return SampledBody{std::move(points)};
}

void BodyFamily::validate() const {
  if (labels.size() != bodies.size())
    fail(Errc::invalid_argument, "labels and bodies differ in count");
  GroundSet check(labels);  // throws on duplicates
  for (const auto& body : bodies) {
    if (const auto* c = std::get_if<Circle>(&body)) {
      if (!(c->radius > 0)) fail(Errc::invalid_argument, "circle radius must be positive");
    } else if (const auto* e = std::get_if<EllipseBody>(&body)) {
      if (!(e->a >= e->b && e->b > 0))
        fail(Errc::invalid_argument, "ellipse needs a >= b > 0");
    } else if (const auto* p = std::get_if<PolygonBody>(&body)) {
      if (p->vertices.empty())
        fail(Errc::invalid_argument, "polygon needs at least one vertex");
      for (size_t i = 0; i < p->vertices.size(); ++i)
        for (size_t j = i + 1; j < p->vertices.size(); ++j)
          if (p->vertices[i] == p->vertices[j])
            fail(Errc::invalid_argument, "polygon has repeated vertices");
      if (p->vertices.size() >= 3) {
        const size_t k = p->vertices.size();
        for (size_t i = 0; i < k; ++i)
          if (orient2d(p->vertices[i], p->vertices[(i + 1) % k],
                       p->vertices[(i + 2) % k]) <= 0)
            fail(Errc::invalid_argument,
                 "polygon vertices must be in strictly convex counterclockwise position");
      }
    }
  }
}

bool BodyFamily::all_polygons() const {
  for (const auto& b : bodies)
    if (!std::holds_alternative<PolygonBody>(b)) return false;
  return !bodies.empty();
}

double support(const PlanarBody& body, Vec2 u) {
  check_unit(u);
  if (const auto* c = std::get_if<Circle>(&body)) return dot(c->center, u) + c->radius;
  if (const auto* e = std::get_if<EllipseBody>(&body)) {
    Vec2 axis1{std::cos(e->theta), std::sin(e->theta)};
    Vec2 axis2{-axis1.y, axis1.x};
    double p = e->a * dot(u, axis1);
    double q = e->b * dot(u, axis2);
    return dot(e->center, u) + std::sqrt(p * p + q * q);
  }
  if (const auto* p = std::get_if<PolygonBody>(&body)) {
    double best = -std::numeric_limits<double>::infinity();
    for (Vec2 v : p->vertices_f) best = std::max(best, dot(v, u));
    return best;
  }
  const auto& s = std::get<SampledBody>(body);
  double best = -std::numeric_limits<double>::infinity();
  for (Vec2 v : s.points) best = std::max(best, dot(v, u));
  return best;
}

double hull_support(const BodyFamily& family, Mask subset, Vec2 u) {
  if (subset == 0) fail(Errc::empty_subset, "hull support of the empty subset");
  double best = -std::numeric_limits<double>::infinity();
  for (int i : mask_to_indices(subset)) best = std::max(best, support(family.bodies[i], u));
  return best;
}

namespace {

std::vector<RatVec2> gather_vertices(const BodyFamily& family, Mask subset) {
  std::vector<RatVec2> pts;
  for (int i : mask_to_indices(subset)) {
    const auto& poly = std::get<PolygonBody>(family.bodies[i]);
    pts.insert(pts.end(), poly.vertices.begin(), poly.vertices.end());
  }
  return pts;
}

bool subset_all_polygons(const BodyFamily& family, Mask subset) {
  for (int i : mask_to_indices(subset))
    if (!std::holds_alternative<PolygonBody>(family.bodies[i])) return false;
  return true;
}

InHullResult in_hull_exact(const BodyFamily& family, int index, Mask subset) {
  auto hull = convex_hull(gather_vertices(family, subset));
  const auto& body = std::get<PolygonBody>(family.bodies[index]);
  InHullResult result;
  result.certificate.exact = true;
  result.inside = true;
  for (const auto& v : body.vertices)
    if (!point_in_ccw_hull(v, hull)) {
      result.inside = false;
      break;
    }
  return result;
}

struct MarginScan {
  double min_margin = std::numeric_limits<double>::infinity();
  double at_angle = 0;
};

// global minimum of margin(theta) = hull_support - body_support via grid
// plus golden-section refinement of every grid-local minimum near the floor
MarginScan scan_margin(const std::function<double(double)>& margin, int grid) {
  std::vector<double> vals(grid);
  for (int j = 0; j < grid; ++j) vals[j] = margin(kTwoPi * j / grid);
  MarginScan scan;
  int arg = 0;
  for (int j = 0; j < grid; ++j)
    if (vals[j] < scan.min_margin) {
      scan.min_margin = vals[j];
      arg = j;
    }
  scan.at_angle = kTwoPi * arg / grid;
  const double band = scan.min_margin + 1e-4;
  const double step = kTwoPi / grid;
  for (int j = 0; j < grid; ++j) {
    double prev = vals[(j + grid - 1) % grid], next = vals[(j + 1) % grid];
    if (vals[j] > band || vals[j] > prev || vals[j] > next) continue;
    double lo = kTwoPi * j / grid - step, hi = kTwoPi * j / grid + step;
    auto [x, fx] = golden_min(margin, lo, hi);
    if (fx < scan.min_margin) {
      scan.min_margin = fx;
      scan.at_angle = wrap_angle(x);
    }
  }
  return scan;
}

// sign of A + B*sqrt(T), all rational, T >= 0
int sign_with_radical(const Rat& a, const Rat& b, const Rat& t) {
  int sa = a == 0 ? 0 : (a > 0 ? 1 : -1);
  int sb = b == 0 ? 0 : (b > 0 ? 1 : -1);
  if (t == 0 || sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  Rat cmp = a * a - b * b * t;
  int sc = cmp == 0 ? 0 : (cmp > 0 ? 1 : -1);
  return sa > 0 ? sc : -sc;
}

// Exact containment of a circle in the hull of circles with rational data.
// The violating directions {u : h_body(u) > max_i h_i(u)} form an
// intersection of open arcs V_i = {u : <d_i,u> + rho_i < 0}; the subset is
// nonempty iff the ccw start of some arc continues into every other arc.
// Arc endpoints carry a single radical sqrt(T_i), so every sign test is
// exact. Tangential touching therefore decides as contained.
bool circle_in_hull_exact(const Circle& body, const std::vector<Circle>& hull) {
  struct Arc {
    RatVec2 d;   // center difference
    Rat rho;     // radius difference
    Rat dd;      // |d|^2
    Rat t;       // dd - rho^2 (>= 0 for proper arcs)
  };
  std::vector<Arc> proper;
  bool any_full = false;
  RatVec2 c{rat_from_double(body.center.x), rat_from_double(body.center.y)};
  Rat r = rat_from_double(body.radius);
  for (const Circle& other : hull) {
    RatVec2 ci{rat_from_double(other.center.x), rat_from_double(other.center.y)};
    Rat ri = rat_from_double(other.radius);
    RatVec2 d = ci - c;
    Rat rho = ri - r;
    Rat dd = dot(d, d);
    if (dd == 0) {
      if (rho >= 0) return true;  // that circle alone contains the body
      any_full = true;
      continue;
    }
    Rat rho2 = rho * rho;
    if (rho >= 0 && rho2 >= dd) return true;   // V_i empty: dominated everywhere
    if (rho < 0 && rho2 > dd) {                // V_i is the full circle
      any_full = true;
      continue;
    }
    proper.push_back({d, rho, dd, dd - rho2});
  }
  if (proper.empty()) return !any_full;

  // candidate = ccw start of arc i: ((-rho*dx - dy*sqrt(T))/dd,
  //                                  (dx*sqrt(T) - rho*dy)/dd)
  for (const Arc& ai : proper) {
    // components as (A + B*sqrt(t_i)) / dd; the positive factor dd drops out
    Rat sx_a = -ai.rho * ai.d.x, sx_b = -ai.d.y;
    Rat sy_a = -ai.rho * ai.d.y, sy_b = ai.d.x;
    bool ok = true;
    for (const Arc& aj : proper) {
      // <d_j, s> + rho_j, scaled by dd_i > 0
      Rat va = aj.d.x * sx_a + aj.d.y * sy_a + aj.rho * ai.dd;
      Rat vb = aj.d.x * sx_b + aj.d.y * sy_b;
      int sv = sign_with_radical(va, vb, ai.t);
      if (sv > 0) {
        ok = false;
        break;
      }
      if (sv == 0 && aj.t != 0) {
        // s is an endpoint of arc j; continuing ccw stays inside only from
        // the start endpoint, i.e. when cross(-d_j, s) < 0
        Rat ca = -aj.d.x * sy_a + aj.d.y * sx_a;
        Rat cb = -aj.d.x * sy_b + aj.d.y * sx_b;
        if (sign_with_radical(ca, cb, ai.t) > 0) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return false;  // a direction just past this start violates everywhere
  }
  return true;
}

bool subset_all_circles(const BodyFamily& family, int index, Mask subset) {
  if (!std::holds_alternative<Circle>(family.bodies[index])) return false;
  for (int i : mask_to_indices(subset))
    if (!std::holds_alternative<Circle>(family.bodies[i])) return false;
  return true;
}

InHullResult in_hull_circles(const BodyFamily& family, int index, Mask subset,
                             const NumericOptions& opts) {
  std::vector<Circle> hull;
  for (int i : mask_to_indices(subset))
    hull.push_back(std::get<Circle>(family.bodies[i]));
  InHullResult result;
  result.certificate.exact = true;
  result.inside = circle_in_hull_exact(std::get<Circle>(family.bodies[index]), hull);
  // decision is exact; the margin scan only feeds the certificate
  auto margin = [&](double theta) {
    Vec2 u = unit_at(theta);
    return hull_support(family, subset, u) - support(family.bodies[index], u);
  };
  MarginScan scan = scan_margin(margin, opts.hull_grid);
  result.certificate.margin = scan.min_margin;
  result.certificate.direction = unit_at(scan.at_angle);
  return result;
}

InHullResult in_hull_numeric(const BodyFamily& family, int index, Mask subset,
                             const NumericOptions& opts) {
  auto margin = [&](double theta) {
    Vec2 u = unit_at(theta);
    return hull_support(family, subset, u) - support(family.bodies[index], u);
  };
  MarginScan scan = scan_margin(margin, opts.hull_grid);
  InHullResult result;
  result.certificate.exact = false;
  result.certificate.margin = scan.min_margin;
  result.certificate.direction = unit_at(scan.at_angle);
  if (std::fabs(scan.min_margin) <= opts.tolerance)
    fail(Errc::tolerance_inconclusive,
         "containment margin " + std::to_string(scan.min_margin) +
             " within +-tolerance; refine the grid or perturb the family");
  result.inside = scan.min_margin > 0;
  return result;
}

}  // namespace

InHullResult in_hull(const BodyFamily& family, int index, Mask subset,
                     HullMode mode, const NumericOptions& opts) {
  if (subset == 0) fail(Errc::empty_subset, "containment against the empty subset");
  if (index < 0 || index >= family.size())
    fail(Errc::invalid_argument, "body index out of range");
  if (has_bit(subset, index)) {
    InHullResult r;
    r.inside = true;
    r.certificate.exact = true;
    return r;
  }
  bool polygon_exact = std::holds_alternative<PolygonBody>(family.bodies[index]) &&
                       subset_all_polygons(family, subset);
  bool circle_exact = subset_all_circles(family, index, subset);
  if (mode == HullMode::exact && !polygon_exact && !circle_exact)
    fail(Errc::invalid_argument,
         "exact containment requires polygons or circles throughout");
  if (mode == HullMode::numeric) return in_hull_numeric(family, index, subset, opts);
  if (polygon_exact) return in_hull_exact(family, index, subset);
  if (circle_exact) return in_hull_circles(family, index, subset, opts);
  return in_hull_numeric(family, index, subset, opts);
}

Mask conv_closure(const BodyFamily& family, Mask subset, HullMode mode,
                  const NumericOptions& opts) {
  if (subset == 0) return 0;
  Mask out = subset;
  for (int i = 0; i < family.size(); ++i) {
    if (has_bit(subset, i)) continue;
    if (in_hull(family, i, subset, mode, opts).inside) out |= bit(i);
  }
  return out;
}

namespace {

// Memoized subset closures over one family. Numeric mode shares one support
// table across all queries; near-zero crude margins are re-derived with
// golden-section refinement before deciding.
class DerivedClosure {
public:
  DerivedClosure(BodyFamily family, HullMode mode, NumericOptions opts)
      : family_(std::move(family)), opts_(opts) {
    if (mode != HullMode::numeric) {
      exact_ = family_.all_polygons();
      exact_circles_ = true;
      for (const auto& b : family_.bodies)
        if (!std::holds_alternative<Circle>(b)) exact_circles_ = false;
      if (family_.bodies.empty()) exact_circles_ = false;
    }
    if (mode == HullMode::exact && !exact_ && !exact_circles_)
      fail(Errc::invalid_argument, "exact closure requires polygons or circles throughout");
    if (!exact_ && !exact_circles_) {
      const int grid = opts_.hull_grid;
      table_.assign(family_.size(), std::vector<double>(grid));
      for (int i = 0; i < family_.size(); ++i)
        for (int j = 0; j < grid; ++j)
          table_[i][j] = support(family_.bodies[i], unit_at(kTwoPi * j / grid));
    }
  }

  const BodyFamily& family() const { return family_; }

  Mask closure(Mask subset) {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = memo_.find(subset);
      if (it != memo_.end()) return it->second;
    }
    Mask result = 0;
    if (subset != 0)
      result = exact_           ? close_exact(subset)
               : exact_circles_ ? close_circles(subset)
                                : close_numeric(subset);
    std::lock_guard<std::mutex> lock(mutex_);
    memo_.emplace(subset, result);
    return result;
  }

private:
  Mask close_exact(Mask subset) {
    auto hull = convex_hull(gather_vertices(family_, subset));
    Mask out = subset;
    for (int i = 0; i < family_.size(); ++i) {
      if (has_bit(subset, i)) continue;
      bool inside = true;
      for (const auto& v : std::get<PolygonBody>(family_.bodies[i]).vertices)
        if (!point_in_ccw_hull(v, hull)) {
          inside = false;
          break;
        }
      if (inside) out |= bit(i);
    }
    return out;
  }

  Mask close_circles(Mask subset) {
    std::vector<Circle> hull;
    for (int i : mask_to_indices(subset))
      hull.push_back(std::get<Circle>(family_.bodies[i]));
    Mask out = subset;
    for (int i = 0; i < family_.size(); ++i) {
      if (has_bit(subset, i)) continue;
      if (circle_in_hull_exact(std::get<Circle>(family_.bodies[i]), hull))
        out |= bit(i);
    }
    return out;
  }

  Mask close_numeric(Mask subset) {
    const int grid = opts_.hull_grid;
    std::vector<double> hmax(grid, -std::numeric_limits<double>::infinity());
    for (int i : mask_to_indices(subset))
      for (int j = 0; j < grid; ++j) hmax[j] = std::max(hmax[j], table_[i][j]);
    Mask out = subset;
    for (int i = 0; i < family_.size(); ++i) {
      if (has_bit(subset, i)) continue;
      double crude = std::numeric_limits<double>::infinity();
      for (int j = 0; j < grid; ++j) crude = std::min(crude, hmax[j] - table_[i][j]);
      double margin = crude;
      if (std::fabs(crude) < 1e-4) {
        auto fn = [&](double theta) {
          Vec2 u = unit_at(theta);
          return hull_support(family_, subset, u) - support(family_.bodies[i], u);
        };
        margin = scan_margin(fn, grid).min_margin;
      }
      if (std::fabs(margin) <= opts_.tolerance)
        fail(Errc::tolerance_inconclusive,
             "closure margin for body " + family_.labels[i] +
                 " within +-tolerance");
      if (margin > 0) out |= bit(i);
    }
    return out;
  }

  BodyFamily family_;
  NumericOptions opts_;
  bool exact_ = false;
  bool exact_circles_ = false;
  std::vector<std::vector<double>> table_;
  std::mutex mutex_;
  std::unordered_map<Mask, Mask> memo_;
};

}  // namespace

ClosureOperator body_closure_operator(const BodyFamily& family, HullMode mode,
                                      const NumericOptions& opts) {
  family.validate();
  auto closure = std::make_shared<DerivedClosure>(family, mode, opts);
  return ClosureOperator{family.ground(),
                         [closure](Mask s) { return closure->closure(s); }};
}

ConvexGeometry geometry_from_bodies(const BodyFamily& family, HullMode mode,
                                    const NumericOptions& opts) {
  family.validate();
  const int n = family.size();
  if (n > 12)
    fail(Errc::ground_too_large, "body families limited to 12 members");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      try {
        common_supporting_directions(family.bodies[i], family.bodies[j], opts);
      } catch (const Error& e) {
        if (e.code() == Errc::degenerate_identical)
          fail(Errc::infinite_contact,
               "bodies " + family.labels[i] + " and " + family.labels[j] +
                   " appear to share support values on an interval");
        throw;
      }
    }

  DerivedClosure closure(family, mode, opts);
  std::vector<Mask> members;
  const std::uint64_t count = Mask{1} << n;
  for (std::uint64_t x = 0; x < count; ++x) {
    Mask X = static_cast<Mask>(x);
    if (closure.closure(X) == X) members.push_back(X);
  }
  return ConvexGeometry::from_family(SetFamily(family.ground(), std::move(members)));
}

namespace {

std::vector<double> circle_circle_directions(const Circle& c1, const Circle& c2,
                                             const NumericOptions& opts) {
  Vec2 d = c2.center - c1.center;
  double len = norm(d);
  double rd = c1.radius - c2.radius;
  if (len < 1e-15) {
    if (std::fabs(rd) < 1e-15)
      fail(Errc::degenerate_identical, "identical circles");
    return {};
  }
  double delta = rd / len;
  Vec2 dhat = (1.0 / len) * d;
  double base = std::atan2(dhat.y, dhat.x);
  if (std::fabs(std::fabs(delta) - 1.0) * len <= opts.tangency_tol) {
    // internal tangency: exactly one direction
    return {wrap_angle(delta > 0 ? base : base + kTwoPi / 2)};
  }
  if (std::fabs(delta) > 1) return {};
  double off = std::acos(delta);
  return {wrap_angle(base + off), wrap_angle(base - off)};
}

struct RatDir {
  BigInt x, y;  // primitive integer direction, sign preserved
  bool operator<(const RatDir& o) const {
    return x < o.x || (x == o.x && y < o.y);
  }
};

RatDir primitive_direction(const Rat& x, const Rat& y) {
  BigInt nx = numerator(x) * denominator(y);
  BigInt ny = numerator(y) * denominator(x);
  BigInt g = gcd(abs(nx), abs(ny));
  if (g == 0) fail(Errc::internal, "zero direction");
  return {nx / g, ny / g};
}

Rat poly_support_exact(const PolygonBody& p, const RatVec2& u) {
  Rat best;
  bool first = true;
  for (const auto& v : p.vertices) {
    Rat val = dot(v, u);
    if (first || val > best) {
      best = val;
      first = false;
    }
  }
  return best;
}

// Outward normal cone of vertex k in a ccw polygon, as an angle interval.
std::pair<double, double> normal_cone(const PolygonBody& p, size_t k) {
  const size_t n = p.vertices_f.size();
  Vec2 prev = p.vertices_f[(k + n - 1) % n];
  Vec2 cur = p.vertices_f[k];
  Vec2 next = p.vertices_f[(k + 1) % n];
  Vec2 e_in = cur - prev, e_out = next - cur;
  double lo = std::atan2(-e_in.x, e_in.y);    // outward normal of incoming edge
  double hi = std::atan2(-e_out.x, e_out.y);  // outward normal of outgoing edge
  lo = wrap_angle(lo);
  hi = wrap_angle(hi);
  if (hi < lo) hi += kTwoPi;
  return {lo, hi};
}

std::vector<double> polygon_polygon_directions(const PolygonBody& p1,
                                               const PolygonBody& p2) {
  // supporting functions of strictly convex polygons agree on an interval
  // only through a shared extreme vertex with overlapping normal cones
  for (size_t i = 0; i < p1.vertices.size(); ++i)
    for (size_t j = 0; j < p2.vertices.size(); ++j)
      if (p1.vertices[i] == p2.vertices[j] && p1.vertices.size() >= 3 &&
          p2.vertices.size() >= 3) {
        auto [lo1, hi1] = normal_cone(p1, i);
        auto [lo2, hi2] = normal_cone(p2, j);
        for (double shift : {-kTwoPi, 0.0, kTwoPi}) {
          double lo = std::max(lo1, lo2 + shift), hi = std::min(hi1, hi2 + shift);
          if (hi - lo > 1e-9)
            fail(Errc::degenerate_identical,
                 "polygons share an extreme vertex with overlapping normal cones");
        }
      }

  std::set<RatDir> roots;
  for (const auto& v : p1.vertices)
    for (const auto& w : p2.vertices) {
      if (v == w) continue;
      RatVec2 diff = v - w;
      RatVec2 perp{-diff.y, diff.x};
      for (int sign : {+1, -1}) {
        RatVec2 u{Rat(sign) * perp.x, Rat(sign) * perp.y};
        if (poly_support_exact(p1, u) == poly_support_exact(p2, u))
          roots.insert(primitive_direction(u.x, u.y));
      }
    }
  std::vector<double> angles;
  for (const auto& r : roots)
    angles.push_back(
        wrap_angle(std::atan2(r.y.convert_to<double>(), r.x.convert_to<double>())));
  std::sort(angles.begin(), angles.end());
  return angles;
}

std::vector<double> generic_directions(const PlanarBody& b1, const PlanarBody& b2,
                                       const NumericOptions& opts) {
  const int grid = opts.crossing_grid;
  auto diff = [&](double theta) {
    Vec2 u = unit_at(theta);
    return support(b1, u) - support(b2, u);
  };
  std::vector<double> vals(grid);
  double scale = 1;
  for (int j = 0; j < grid; ++j) {
    vals[j] = diff(kTwoPi * j / grid);
    scale = std::max(scale, std::fabs(vals[j]));
  }

  // interval agreement: a long run of (near-)zero difference
  int run = 0, max_run = 0;
  for (int j = 0; j < 2 * grid; ++j) {
    if (std::fabs(vals[j % grid]) < 1e-12 * scale) {
      ++run;
      max_run = std::max(max_run, run);
    } else {
      run = 0;
    }
    if (max_run >= grid) break;
  }
  if (max_run >= 8)
    fail(Errc::degenerate_identical,
         "support difference vanishes on a sampled sub-interval");

  const double step = kTwoPi / grid;
  std::vector<double> roots;
  for (int j = 0; j < grid; ++j) {
    double a = vals[j], b = vals[(j + 1) % grid];
    double ta = step * j, tb = step * (j + 1);
    if (a == 0.0) {
      roots.push_back(ta);
      continue;
    }
    if (a * b < 0) {
      for (int it = 0; it < 100 && (tb - ta) > opts.root_refine; ++it) {
        double tm = 0.5 * (ta + tb);
        double fm = diff(tm);
        if (fm == 0.0) {
          ta = tb = tm;
          break;
        }
        if ((a < 0) == (fm < 0)) {
          ta = tm;
          a = fm;
        } else {
          tb = tm;
        }
      }
      roots.push_back(wrap_angle(0.5 * (ta + tb)));
    }
  }

  // tangential touches: local minima of |diff| dipping under the threshold
  for (int j = 0; j < grid; ++j) {
    double cur = std::fabs(vals[j]);
    if (cur > 1e-5 * scale) continue;
    double prev = std::fabs(vals[(j + grid - 1) % grid]);
    double next = std::fabs(vals[(j + 1) % grid]);
    if (cur > prev || cur > next) continue;
    double center = step * j;
    bool near_root = false;
    for (double r : roots) {
      double d = std::fabs(wrap_angle(r - center));
      d = std::min(d, kTwoPi - d);
      if (d < 2 * step) near_root = true;
    }
    if (near_root) continue;
    auto [x, fx] = golden_min([&](double t) { return std::fabs(diff(t)); },
                              center - step, center + step);
    if (std::fabs(fx) < opts.tangency_tol * scale) roots.push_back(wrap_angle(x));
  }

  std::sort(roots.begin(), roots.end());
  std::vector<double> unique_roots;
  for (double r : roots)
    if (unique_roots.empty() || r - unique_roots.back() > 1e-9) unique_roots.push_back(r);
  if (unique_roots.size() >= 2 &&
      (unique_roots.front() + kTwoPi) - unique_roots.back() <= 1e-9)
    unique_roots.pop_back();
  return unique_roots;
}

bool same_body(const PlanarBody& a, const PlanarBody& b) {
  if (a.index() != b.index()) return false;
  if (const auto* c1 = std::get_if<Circle>(&a)) {
    const auto& c2 = std::get<Circle>(b);
    return c1->center.x == c2.center.x && c1->center.y == c2.center.y &&
           c1->radius == c2.radius;
  }
  if (const auto* e1 = std::get_if<EllipseBody>(&a)) {
    const auto& e2 = std::get<EllipseBody>(b);
    return e1->center.x == e2.center.x && e1->center.y == e2.center.y &&
           e1->a == e2.a && e1->b == e2.b && e1->theta == e2.theta;
  }
  if (const auto* p1 = std::get_if<PolygonBody>(&a))
    return p1->vertices == std::get<PolygonBody>(b).vertices;
  return std::get<SampledBody>(a).points.size() == std::get<SampledBody>(b).points.size() &&
         [&] {
           const auto& s1 = std::get<SampledBody>(a);
           const auto& s2 = std::get<SampledBody>(b);
           for (size_t i = 0; i < s1.points.size(); ++i)
             if (s1.points[i].x != s2.points[i].x || s1.points[i].y != s2.points[i].y)
               return false;
           return true;
         }();
}

}  // namespace

std::vector<double> common_supporting_directions(const PlanarBody& b1,
                                                 const PlanarBody& b2,
                                                 const NumericOptions& opts) {
  if (same_body(b1, b2))
    fail(Errc::degenerate_identical, "the two bodies coincide as sets");
  if (std::holds_alternative<Circle>(b1) && std::holds_alternative<Circle>(b2))
    return circle_circle_directions(std::get<Circle>(b1), std::get<Circle>(b2), opts);
  if (std::holds_alternative<PolygonBody>(b1) && std::holds_alternative<PolygonBody>(b2))
    return polygon_polygon_directions(std::get<PolygonBody>(b1),
                                      std::get<PolygonBody>(b2));
  return generic_directions(b1, b2, opts);
}

SweepResult sweep_orderings(const BodyFamily& family, const NumericOptions& opts) {
  family.validate();
  const int n = family.size();
  SweepResult result;
  result.pair_counts.assign(n, std::vector<int>(n, 0));

  std::vector<double> all_angles;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto dirs = common_supporting_directions(family.bodies[i], family.bodies[j], opts);
      int c = static_cast<int>(dirs.size());
      result.pair_counts[i][j] = result.pair_counts[j][i] = c;
      result.max_pair_count = std::max(result.max_pair_count, c);
      result.total_crossings += c;
      all_angles.insert(all_angles.end(), dirs.begin(), dirs.end());
    }

  std::sort(all_angles.begin(), all_angles.end());
  for (double a : all_angles)
    if (result.crossing_angles.empty() || a - result.crossing_angles.back() > 1e-9)
      result.crossing_angles.push_back(a);
  if (result.crossing_angles.size() >= 2 &&
      (result.crossing_angles.front() + kTwoPi) - result.crossing_angles.back() <= 1e-9)
    result.crossing_angles.pop_back();

  // one regular direction per arc between consecutive crossing directions
  std::vector<std::pair<double, double>> arcs;
  const auto& cs = result.crossing_angles;
  if (cs.empty()) {
    arcs.emplace_back(0.0, kTwoPi);
  } else {
    for (size_t t = 0; t < cs.size(); ++t) {
      double lo = cs[t];
      double hi = (t + 1 < cs.size()) ? cs[t + 1] : cs[0] + kTwoPi;
      arcs.emplace_back(lo, hi);
    }
  }

  std::vector<std::vector<int>> orders;
  std::set<std::vector<int>> seen;
  const double fractions[] = {0.5, 0.6180339887, 0.3819660113, 0.25, 0.75,
                              0.1, 0.9, 0.33, 0.66, 0.05, 0.95, 0.45};
  for (auto [lo, hi] : arcs) {
    std::vector<int> order;
    bool regular = false;
    for (double frac : fractions) {
      double theta = wrap_angle(lo + frac * (hi - lo));
      Vec2 u = unit_at(theta);
      std::vector<std::pair<double, int>> vals;
      double scale = 1;
      for (int i = 0; i < n; ++i) {
        double h = support(family.bodies[i], u);
        vals.emplace_back(h, i);
        scale = std::max(scale, std::fabs(h));
      }
      std::sort(vals.begin(), vals.end());
      bool tie = false;
      for (int i = 0; i + 1 < n; ++i)
        if (vals[i + 1].first - vals[i].first <= 1e-12 * scale) tie = true;
      if (tie) continue;
      order.clear();
      for (auto& [h, i] : vals) order.push_back(i);
      regular = true;
      break;
    }
    if (!regular)
      fail(Errc::no_regular_direction,
           "no tie-free direction found inside a sweep arc");
    if (seen.insert(order).second) orders.push_back(order);
  }

  result.orderings = OrderingFamily(family.ground(), std::move(orders));
  return result;
}

UpperBoundCheck cdim_upper_bound_check(const BodyFamily& family, HullMode mode,
                                       const NumericOptions& opts) {
  UpperBoundCheck check;
  const int n = family.size();
  if (n < 2) {
    check.skipped = true;
    return check;
  }
  SweepResult sweep = sweep_orderings(family, opts);
  check.k = sweep.max_pair_count;
  check.bound = check.k * n * (n - 1) / 2;
  check.cdim_value = cdim(geometry_from_bodies(family, mode, opts));
  check.ok = check.cdim_value <= check.bound;
  return check;
}

bool convex_position(const BodyFamily& family, Mask subset, HullMode mode,
                     const NumericOptions& opts) {
  if (popcount(subset) < 2)
    fail(Errc::invalid_argument, "convex position needs at least two bodies");
  for (int i : mask_to_indices(subset)) {
    if (in_hull(family, i, subset & ~bit(i), mode, opts).inside) return false;
  }
  return true;
}

namespace {

struct HalfPlane {
  double a, b, c;  // a*x + b*y - c >= 0 inside
};

// unit inward normals, so the product is a product of edge distances
std::vector<HalfPlane> polygon_halfplanes(const PolygonBody& polygon) {
  const auto& v = polygon.vertices_f;
  if (v.size() < 3)
    fail(Errc::invalid_argument, "halfplane trace needs a full polygon");
  std::vector<HalfPlane> planes;
  for (size_t i = 0; i < v.size(); ++i) {
    Vec2 p = v[i], q = v[(i + 1) % v.size()];
    Vec2 inward{-(q.y - p.y), q.x - p.x};  // ccw polygon: interior on the left
    double len = norm(inward);
    inward = (1.0 / len) * inward;
    planes.push_back({inward.x, inward.y, dot(inward, p)});
  }
  return planes;
}

double plane_value(const HalfPlane& h, Vec2 p) { return h.a * p.x + h.b * p.y - h.c; }

double log_product(const std::vector<HalfPlane>& planes, Vec2 p) {
  double acc = 0;
  for (const auto& h : planes) {
    double v = plane_value(h, p);
    if (v <= 0) return -std::numeric_limits<double>::infinity();
    acc += std::log(v);
  }
  return acc;
}

double ray_to_boundary(const std::vector<HalfPlane>& planes, Vec2 p, Vec2 dir) {
  double tmax = std::numeric_limits<double>::infinity();
  for (const auto& h : planes) {
    double slope = h.a * dir.x + h.b * dir.y;
    if (slope < 0) tmax = std::min(tmax, plane_value(h, p) / (-slope));
  }
  return tmax;
}

// interior maximizer of the (log-concave) halfplane product
Vec2 product_maximizer(const std::vector<HalfPlane>& planes, Vec2 start) {
  Vec2 p = start;
  for (int iter = 0; iter < 200; ++iter) {
    Vec2 grad{0, 0};
    for (const auto& h : planes) {
      double v = plane_value(h, p);
      grad.x += h.a / v;
      grad.y += h.b / v;
    }
    double g = norm(grad);
    if (g < 1e-13) break;
    Vec2 dir = (1.0 / g) * grad;
    double tmax = 0.999 * ray_to_boundary(planes, p, dir);
    if (!(tmax > 0)) break;
    auto [t, neg] = golden_min(
        [&](double s) { return -log_product(planes, p + s * dir); }, 0, tmax);
    if (-neg <= log_product(planes, p) + 1e-15) break;
    p = p + t * dir;
  }
  return p;
}

}  // namespace

double halfplane_product_peak(const PolygonBody& polygon) {
  auto planes = polygon_halfplanes(polygon);
  Vec2 centroid{0, 0};
  for (Vec2 v : polygon.vertices_f) centroid = centroid + v;
  centroid = (1.0 / polygon.vertices_f.size()) * centroid;
  Vec2 peak = product_maximizer(planes, centroid);
  return std::exp(log_product(planes, peak));
}

SampledBody semialgebraic_body(const PolygonBody& polygon, double alpha, int samples) {
  if (!(alpha > 0)) fail(Errc::invalid_argument, "alpha must be positive");
  samples = std::max(samples, 720);
  auto planes = polygon_halfplanes(polygon);
  Vec2 centroid{0, 0};
  for (Vec2 v : polygon.vertices_f) centroid = centroid + v;
  centroid = (1.0 / polygon.vertices_f.size()) * centroid;
  Vec2 peak = product_maximizer(planes, centroid);
  double log_peak = log_product(planes, peak);
  double log_alpha = std::log(alpha);
  if (log_alpha >= log_peak)
    fail(Errc::alpha_too_large, "alpha exceeds the product maximum; level set empty");

  std::vector<Vec2> points;
  points.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    double theta = kTwoPi * k / samples;
    Vec2 dir = unit_at(theta);
    double hi = ray_to_boundary(planes, peak, dir);
    double lo = 0;
    // product decreases along the ray from its interior maximum: bisect
    for (int it = 0; it < 70; ++it) {
      double mid = 0.5 * (lo + hi);
      if (log_product(planes, peak + mid * dir) > log_alpha)
        lo = mid;
      else
        hi = mid;
    }
    points.push_back(peak + (0.5 * (lo + hi)) * dir);
  }
  return SampledBody::from_points(std::move(points));
}

}  // namespace convgeo
