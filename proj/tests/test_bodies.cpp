// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "convgeo/bodies.hpp"
#include "convgeo/dimension.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace convgeo;
using testutil::Rng;

namespace {

BodyFamily circles(std::vector<Circle> cs) {
  BodyFamily fam;
  for (size_t i = 0; i < cs.size(); ++i) {
    fam.labels.push_back("K" + std::to_string(i));
    fam.bodies.push_back(cs[i]);
  }
  return fam;
}

PolygonBody unit_square() {
  return PolygonBody::from_doubles({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

PolygonBody random_convex_polygon(Rng& rng, Vec2 center, double radius, int verts) {
  // vertices on a circle are automatically in strictly convex position
  std::vector<double> angles;
  for (int i = 0; i < verts; ++i) angles.push_back(rng.uniform(0, 6.283185307));
  std::sort(angles.begin(), angles.end());
  for (size_t i = 0; i + 1 < angles.size(); ++i)
    if (angles[i + 1] - angles[i] < 1e-3) return random_convex_polygon(rng, center, radius, verts);
  std::vector<Vec2> pts;
  for (double a : angles) pts.push_back(center + radius * unit_at(a));
  return PolygonBody::from_doubles(pts);
}

}  // namespace

TEST_CASE("support of the basic shapes") {
  Circle disk{{0, 0}, 1};
  CHECK(support(disk, {1, 0}) == doctest::Approx(1.0));
  CHECK(support(disk, {0, -1}) == doctest::Approx(1.0));

  EllipseBody e{{0, 0}, 2, 1, 0};
  CHECK(support(e, {1, 0}) == doctest::Approx(2.0));
  CHECK(support(e, {0, 1}) == doctest::Approx(1.0));
  double r = 1 / std::sqrt(2.0);
  CHECK(support(e, {r, r}) == doctest::Approx(std::sqrt(2.5)));

  CHECK(support(PlanarBody{unit_square()}, {1, 0}) == doctest::Approx(1.0));
  CHECK(support(PlanarBody{unit_square()}, {-1, 0}) == doctest::Approx(0.0));
}

TEST_CASE("support of a rotated ellipse follows the axes") {
  double th = 0.7;
  EllipseBody e{{0.5, -0.25}, 3, 1, th};
  Vec2 axis{std::cos(th), std::sin(th)};
  CHECK(support(e, axis) == doctest::Approx(dot(e.center, axis) + 3.0));
}

TEST_CASE("support rejects non-unit directions") {
  Circle disk{{0, 0}, 1};
  CHECK_THROWS_AS(support(disk, {2, 0}), Error);
}

TEST_CASE("support is sublinear over sampled direction pairs") {
  Rng rng(10);
  std::vector<PlanarBody> bodies = {Circle{{0.5, -1}, 2},
                                    EllipseBody{{1, 1}, 2, 0.5, 0.3},
                                    PlanarBody{unit_square()}};
  for (const auto& body : bodies)
    for (int t = 0; t < 200; ++t) {
      Vec2 u = unit_at(rng.uniform(0, 6.2831853));
      Vec2 v = unit_at(rng.uniform(0, 6.2831853));
      Vec2 sum = u + v;
      double len = norm(sum);
      if (len < 1e-6) continue;
      double lhs = support(body, (1.0 / len) * sum) * len;
      CHECK(lhs <= support(body, u) + support(body, v) + 1e-9);
    }
}

TEST_CASE("hull support is the max over the subset") {
  auto fam = circles({{{0, 0}, 1}, {{3, 0}, 1}});
  CHECK(hull_support(fam, 0b01, {1, 0}) == doctest::Approx(1.0));
  CHECK(hull_support(fam, 0b11, {1, 0}) == doctest::Approx(4.0));
  CHECK(hull_support(fam, 0b11, {0, 1}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(hull_support(fam, 0, {1, 0}), Error);
}

TEST_CASE("in_hull: members, sandwiched disk, separated disk") {
  auto fam = circles({{{0, 0}, 1}, {{2, 0}, 1}, {{1, 0}, 1}, {{0, 3}, 1}});
  CHECK(in_hull(fam, 0, 0b0001).inside);  // member of the subset
  auto mid = in_hull(fam, 2, 0b0011);
  CHECK(mid.inside);  // disk between two others of the same radius
  auto far = in_hull(fam, 3, 0b0011);
  CHECK_FALSE(far.inside);
  CHECK(far.certificate.margin == doctest::Approx(-3.0).epsilon(1e-6));
  CHECK(std::fabs(far.certificate.direction.y) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("in_hull exact mode for polygons") {
  BodyFamily fam;
  fam.labels = {"A", "B", "C"};
  fam.bodies.push_back(PolygonBody::from_doubles({{0, 0}, {1, 0}, {0, 1}}));
  fam.bodies.push_back(PolygonBody::from_doubles({{4, 0}, {5, 0}, {4, 1}}));
  fam.bodies.push_back(PolygonBody::from_doubles({{2, 0.2}, {2.5, 0.2}, {2, 0.6}}));
  auto r = in_hull(fam, 2, 0b011, HullMode::exact);
  CHECK(r.inside);
  CHECK(r.certificate.exact);
  auto fam2 = fam;
  fam2.bodies[2] = PolygonBody::from_doubles({{2, 2}, {2.5, 2}, {2, 2.4}});
  CHECK_FALSE(in_hull(fam2, 2, 0b011, HullMode::exact).inside);
}

TEST_CASE("conv closure basics") {
  // the r=1 disk lifted 0.1 above the axis pokes out of the hull stadium;
  // shrunk to r=0.8 it fits
  auto fam = circles({{{0, 0}, 1}, {{4, 0}, 1}, {{2, 0.1}, 1}, {{2, 0.1}, 0.8}});
  CHECK(conv_closure(fam, 0) == 0);
  CHECK(conv_closure(fam, 0b1111) == 0b1111);
  CHECK(conv_closure(fam, 0b0011) == 0b1011);
}

TEST_CASE("geometry from two disjoint disks is free") {
  auto fam = circles({{{0, 0}, 1}, {{3, 0}, 1}});
  auto geo = geometry_from_bodies(fam);
  CHECK(geo.family().members().size() == 4);
}

TEST_CASE("geometry from one body") {
  auto fam = circles({{{0, 0}, 1}});
  auto geo = geometry_from_bodies(fam);
  CHECK(geo.family().members().size() == 2);
}

TEST_CASE("three collinear disks give the collinear geometry") {
  auto fam = circles({{{0, 0}, 1}, {{2, 0}, 1}, {{4, 0}, 1}});
  auto geo = geometry_from_bodies(fam);
  OrderingFamily of(testutil::letters(3), {{0, 1, 2}, {2, 1, 0}});
  auto collinear = geometry_from_orderings(of);
  CHECK(isomorphic(geo, collinear).has_value());
}

TEST_CASE("derived closure operator passes anti-exchange directly") {
  auto fam = circles({{{0, 0}, 1}, {{2.5, 0.3}, 0.8}, {{4.4, -0.2}, 1.2}});
  auto op = body_closure_operator(fam);
  auto rep = check_anti_exchange(op);
  CHECK(rep.valid);
  CHECK(rep.empty_is_fixed);
}

TEST_CASE("common supporting directions: circles") {
  Circle a{{0, 0}, 1}, b{{3, 0}, 1};
  auto dirs = common_supporting_directions(a, b);
  REQUIRE(dirs.size() == 2);
  CHECK(std::min(dirs[0], dirs[1]) == doctest::Approx(1.5707963268));
  CHECK(std::max(dirs[0], dirs[1]) == doctest::Approx(4.7123889804));

  Circle c{{0, 0}, 2};
  CHECK(common_supporting_directions(a, c).empty());  // concentric
  CHECK_THROWS_AS(common_supporting_directions(a, a), Error);  // identical

  Circle inner{{0.5, 0}, 0.2};
  CHECK(common_supporting_directions(a, inner).empty());  // nested
  Circle overlapping{{1, 0}, 1.2};
  CHECK(common_supporting_directions(a, overlapping).size() == 2);
}

TEST_CASE("common supporting directions: ellipse pairs stay at most 4") {
  Rng rng(2024);
  for (int t = 0; t < 40; ++t) {
    EllipseBody e1{{rng.uniform(-2, 2), rng.uniform(-2, 2)}, rng.uniform(0.8, 2.5),
                   rng.uniform(0.3, 0.8), rng.uniform(0, 3.14)};
    EllipseBody e2{{rng.uniform(-2, 2), rng.uniform(-2, 2)}, rng.uniform(0.8, 2.5),
                   rng.uniform(0.3, 0.8), rng.uniform(0, 3.14)};
    auto dirs = common_supporting_directions(e1, e2);
    CHECK(dirs.size() <= 4);
  }
}

TEST_CASE("common supporting directions: polygons, exact") {
  auto p1 = PolygonBody::from_doubles({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  auto p2 = PolygonBody::from_doubles({{3, 0}, {4, 0}, {4, 1}, {3, 1}});
  auto dirs = common_supporting_directions(p1, p2);
  CHECK(dirs.size() == 2);  // translates of each other: two outer tangents

  // numeric cross-check on a mixed pair
  Circle c{{0, 0}, 1};
  auto p3 = PolygonBody::from_doubles({{2.5, -1}, {4, -1}, {4, 1}, {2.5, 1}});
  auto mixed = common_supporting_directions(c, p3);
  CHECK(mixed.size() == 2);
}

TEST_CASE("common supporting directions: shared extreme vertex degenerates") {
  auto p1 = PolygonBody::from_doubles({{0, 0}, {1, 0}, {0, 1}});
  auto p2 = PolygonBody::from_doubles({{0, 0}, {1, 0}, {1, -1}});
  // They share the edge from (0,0) to (1,0); the outward normals around the
  // shared vertices overlap in a full arc.
  CHECK_THROWS_AS(common_supporting_directions(p1, p2), Error);
}

TEST_CASE("sweep orderings: one body") {
  auto fam = circles({{{0, 0}, 1}});
  auto sweep = sweep_orderings(fam);
  CHECK(sweep.total_crossings == 0);
  CHECK(sweep.orderings.count() == 1);
}

TEST_CASE("sweep orderings: two disjoint circles") {
  auto fam = circles({{{0, 0}, 1}, {{3, 0}, 1}});
  auto sweep = sweep_orderings(fam);
  CHECK(sweep.total_crossings == 2);
  CHECK(sweep.orderings.count() == 2);
  CHECK(geometry_from_orderings(sweep.orderings) == geometry_from_bodies(fam));
}

TEST_CASE("sweep orderings regenerate the derived geometry") {
  Rng rng(99);
  int done = 0;
  while (done < 12) {
    int n = rng.range(2, 4);
    std::vector<Circle> cs;
    for (int i = 0; i < n; ++i)
      cs.push_back({{rng.uniform(-3, 3), rng.uniform(-3, 3)}, rng.uniform(0.4, 1.4)});
    auto fam = circles(cs);
    bool nested = false;
    for (int i = 0; i < n && !nested; ++i)
      for (int j = i + 1; j < n; ++j) {
        auto d = common_supporting_directions(fam.bodies[i], fam.bodies[j]);
        if (d.empty()) nested = true;
      }
    if (nested) continue;  // keep every pair actually crossing
    ++done;
    auto sweep = sweep_orderings(fam);
    CHECK(sweep.orderings.count() <= std::max(1, sweep.total_crossings));
    CHECK(geometry_from_orderings(sweep.orderings) == geometry_from_bodies(fam));
  }
}

TEST_CASE("cdim upper bound: two disjoint circles and the vacuous case") {
  auto fam = circles({{{0, 0}, 1}, {{3, 0}, 1}});
  auto check = cdim_upper_bound_check(fam);
  CHECK_FALSE(check.skipped);
  CHECK(check.k == 2);
  CHECK(check.bound == 2);
  CHECK(check.cdim_value == 2);
  CHECK(check.ok);

  auto single = circles({{{0, 0}, 1}});
  CHECK(cdim_upper_bound_check(single).skipped);
}

TEST_CASE("convex position") {
  auto fam = circles({{{-5, -5}, 1}, {{5, -5}, 1}, {{5, 5}, 1}, {{-5, 5}, 1}});
  CHECK(convex_position(fam, 0b1111));

  auto fam2 = circles({{{-8, -4}, 3}, {{8, -4}, 3}, {{0, 9}, 3}, {{0, 0}, 0.5}});
  CHECK_FALSE(convex_position(fam2, 0b1111));
  CHECK(convex_position(fam2, 0b0111));

  auto two = circles({{{0, 0}, 1}, {{3, 0}, 1}});
  CHECK(convex_position(two, 0b11));
  CHECK_THROWS_AS(convex_position(two, 0b01), Error);
}

TEST_CASE("convex position is inherited by subsets") {
  Rng rng(314);
  for (int t = 0; t < 10; ++t) {
    std::vector<Circle> cs;
    for (int i = 0; i < 4; ++i) {
      double ang = 1.5707963 * i + rng.uniform(-0.3, 0.3);
      cs.push_back({{6 * std::cos(ang), 6 * std::sin(ang)}, rng.uniform(0.5, 1.2)});
    }
    auto fam = circles(cs);
    if (!convex_position(fam, 0b1111)) continue;
    for (Mask s = 0; s < 16; ++s)
      if (popcount(s) >= 2) CHECK(convex_position(fam, s));
  }
}

TEST_CASE("semialgebraic trace approximates the polygon for small alpha") {
  auto square = PolygonBody::from_doubles({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  double peak = halfplane_product_peak(square);
  CHECK(peak == doctest::Approx(1.0));  // product of four distances at the center

  auto body = semialgebraic_body(square, peak * 1e-12, 720);
  double worst = 0;
  for (Vec2 p : body.points) {
    double d = std::max(std::fabs(p.x), std::fabs(p.y));
    worst = std::max(worst, 1.0 - d);
  }
  CHECK(worst < 1e-2);  // Hausdorff-close to the square
  for (Vec2 p : body.points) {
    CHECK(std::fabs(p.x) <= 1 + 1e-12);
    CHECK(std::fabs(p.y) <= 1 + 1e-12);
  }
}

TEST_CASE("semialgebraic trace near the peak is a small convex oval") {
  auto tri = PolygonBody::from_doubles({{0, 0}, {2, 0}, {0, 2}});
  double peak = halfplane_product_peak(tri);
  auto body = semialgebraic_body(tri, peak * 0.98, 720);
  double spread = 0;
  for (Vec2 p : body.points)
    for (Vec2 q : body.points) spread = std::max(spread, norm(p - q));
  CHECK(spread < 0.5);
}

TEST_CASE("alpha beyond the product peak is rejected") {
  auto tri = PolygonBody::from_doubles({{0, 0}, {2, 0}, {0, 2}});
  double peak = halfplane_product_peak(tri);
  CHECK_THROWS_AS(semialgebraic_body(tri, peak * 1.01, 720), Error);
}

TEST_CASE("in_hull monotonicity: exact containment implies support dominance") {
  Rng rng(808);
  BodyFamily fam;
  fam.labels = {"big", "small", "other"};
  fam.bodies.push_back(PolygonBody::from_doubles({{-3, -3}, {3, -3}, {3, 3}, {-3, 3}}));
  fam.bodies.push_back(random_convex_polygon(rng, {0.2, -0.1}, 1.2, 6));
  fam.bodies.push_back(random_convex_polygon(rng, {1, 1}, 1.0, 5));
  auto r = in_hull(fam, 1, 0b101, HullMode::exact);
  REQUIRE(r.inside);
  for (int t = 0; t < 10000; ++t) {
    Vec2 u = unit_at(rng.uniform(0, 6.2831853));
    CHECK(support(fam.bodies[1], u) <= hull_support(fam, 0b101, u) + 1e-9);
  }
}

TEST_CASE("geometry_from_bodies rejects oversized and degenerate families") {
  std::vector<Circle> many(13, Circle{{0, 0}, 1});
  for (int i = 0; i < 13; ++i) many[i].center.x = i * 3.0;
  CHECK_THROWS_AS(geometry_from_bodies(circles(many)), Error);

  auto twins = circles({{{0, 0}, 1}, {{0, 0}, 1}});
  CHECK_THROWS_AS(geometry_from_bodies(twins), Error);
}

TEST_CASE("exact circle containment agrees with the numeric margin scan") {
  Rng rng(515151);
  int decisive = 0;
  for (int t = 0; t < 300; ++t) {
    int n = rng.range(2, 4);
    std::vector<Circle> cs;
    for (int i = 0; i < n; ++i)
      cs.push_back({{rng.uniform(-2, 2), rng.uniform(-2, 2)}, rng.uniform(0.3, 1.8)});
    auto fam = circles(cs);
    Mask subset = static_cast<Mask>(rng.below((Mask{1} << n) - 1) + 1);
    int body = rng.range(0, n - 1);
    if (has_bit(subset, body)) continue;
    auto exact = in_hull(fam, body, subset);  // circle route
    REQUIRE(exact.certificate.exact);
    InHullResult numeric;
    try {
      numeric = in_hull(fam, body, subset, HullMode::numeric);
    } catch (const Error&) {
      continue;  // margin within tolerance: nothing to compare
    }
    if (std::fabs(numeric.certificate.margin) < 1e-6) continue;
    ++decisive;
    CHECK(exact.inside == numeric.inside);
  }
  CHECK(decisive > 100);
}

TEST_CASE("exact polygon crossing counts agree with the generic root finder") {
  Rng rng(626262);
  int compared = 0;
  for (int t = 0; t < 60; ++t) {
    auto p1 = random_convex_polygon(rng, {rng.uniform(-2, 2), rng.uniform(-2, 2)},
                                    rng.uniform(0.5, 1.5), rng.range(3, 6));
    auto p2 = random_convex_polygon(rng, {rng.uniform(-2, 2), rng.uniform(-2, 2)},
                                    rng.uniform(0.5, 1.5), rng.range(3, 6));
    auto exact = common_supporting_directions(p1, p2);
    // the same pair through the grid path, seen as sampled boundaries
    auto as_sampled = [](const PolygonBody& p) {
      std::vector<Vec2> pts;
      const size_t n = p.vertices_f.size();
      for (size_t i = 0; i < n; ++i) {  // densify edges so the trace is convex
        Vec2 a = p.vertices_f[i], b = p.vertices_f[(i + 1) % n];
        for (int k = 0; k < 8; ++k) pts.push_back(a + (k / 8.0) * (b - a));
      }
      return SampledBody{pts};
    };
    auto numeric = common_supporting_directions(as_sampled(p1), as_sampled(p2));
    ++compared;
    CHECK(exact.size() == numeric.size());
    for (size_t i = 0; i < std::min(exact.size(), numeric.size()); ++i)
      CHECK(std::fabs(exact[i] - numeric[i]) < 1e-6);
  }
  CHECK(compared == 60);
}

TEST_CASE("random finite-crossing families satisfy the set-system laws") {
  Rng rng(777);
  int done = 0;
  while (done < 10) {
    int n = rng.range(2, 4);
    std::vector<Circle> cs;
    for (int i = 0; i < n; ++i)
      cs.push_back({{rng.uniform(-3, 3), rng.uniform(-3, 3)}, rng.uniform(0.4, 1.5)});
    auto fam = circles(cs);
    bool nested = false;
    for (int i = 0; i < n && !nested; ++i)
      for (int j = i + 1; j < n; ++j)
        if (common_supporting_directions(fam.bodies[i], fam.bodies[j]).empty())
          nested = true;
    if (nested) continue;
    ++done;
    auto geo = geometry_from_bodies(fam);
    CHECK(check_axioms(geo.family()).valid);
    CHECK(check_anti_exchange(closure_operator_of(geo)).valid);
  }
}
