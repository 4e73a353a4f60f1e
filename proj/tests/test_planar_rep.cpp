// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "convgeo/planar_rep.hpp"
#include "test_util.hpp"

using namespace convgeo;
using testutil::letters;
using testutil::Rng;

TEST_CASE("default epsilon at small ray counts") {
  CHECK(default_epsilon(3) == doctest::Approx(0.5));
  CHECK(default_epsilon(4) == doctest::Approx(0.5));  // secant degenerates, capped
  CHECK(default_epsilon(6) == doctest::Approx(0.5));
  CHECK(default_epsilon(5) == doctest::Approx(0.5));
  CHECK(default_epsilon(12) == doctest::Approx((1.0 / std::cos(2 * 3.14159265358979 / 12) - 1) / 2));
}

TEST_CASE("rational frame: m=4 gives the exact axes") {
  auto frame = rational_frame(4, Rat(1, 2));
  REQUIRE(frame.directions.size() == 4);
  CHECK(frame.directions[0] == RatVec2{Rat(1), Rat(0)});
  CHECK(frame.directions[1] == RatVec2{Rat(0), Rat(1)});
  CHECK(frame.directions[2] == RatVec2{Rat(-1), Rat(0)});
  CHECK(frame.directions[3] == RatVec2{Rat(0), Rat(-1)});
}

TEST_CASE("rational frame directions are exactly unit and near the target angles") {
  for (int m : {3, 5, 6, 7, 12}) {
    auto frame = rational_frame(m, Rat(1, 4));
    for (int k = 0; k < m; ++k) {
      const auto& u = frame.directions[k];
      CHECK(dot(u, u) == Rat(1));
      double angle = std::atan2(rat_to_double(u.y), rat_to_double(u.x));
      double target = 2 * 3.14159265358979323846 * k / m;
      double diff = std::fabs(angle - target);
      diff = std::min({diff, std::fabs(diff - 2 * 3.14159265358979323846),
                       std::fabs(diff + 2 * 3.14159265358979323846)});
      CHECK(diff < 1e-3);
    }
  }
}

TEST_CASE("pinched radii match the construction formulas") {
  OrderingFamily of(letters(3), {{0, 1, 2}});
  auto pinched = build_pinched(of, 3, Rat(1, 2), true);
  // element a has place 1 in every (duplicated) ordering
  CHECK(pinched.pairs[0].rho1[0] == Rat(13, 12));
  CHECK(pinched.pairs[0].rho2[0] == Rat(7, 6));
  // place 2: rho1 = 1 + 3/6 * 1/2 = 5/4, place 3: rho2 = 1 + 6/6 * 1/2 = 3/2
  CHECK(pinched.pairs[1].rho1[0] == Rat(5, 4));
  CHECK(pinched.pairs[2].rho2[0] == Rat(3, 2));
  for (const auto& pair : pinched.pairs)
    for (int i = 0; i < 3; ++i) CHECK(pair.rho1[i] < pair.rho2[i]);
}

TEST_CASE("line and disjointness properties validate on default builds") {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    auto of = testutil::random_orderings(rng.range(1, 5), rng.range(1, 3), rng);
    for (bool exact : {true, false}) {
      auto pinched = build_pinched(of, rng.range(3, 7), std::nullopt, exact);
      CHECK(validate_line_property(pinched).ok);
      CHECK(validate_disjoint_property(pinched));
    }
  }
}

TEST_CASE("oversized epsilon violates the line property and is rejected") {
  OrderingFamily of(letters(2), {{0, 1}, {1, 0}});
  auto loose = build_pinched(of, 5, Rat(100), true, false);
  CHECK_FALSE(validate_line_property(loose).ok);
  CHECK_THROWS_AS(build_pinched(of, 5, Rat(100), true, true), Error);
  // m=3 tolerates any epsilon: all other rays point away
  auto wide = build_pinched(of, 3, Rat(100), true, false);
  CHECK(validate_line_property(wide).ok);
}

TEST_CASE("two opposite orderings represent the free geometry on two elements") {
  OrderingFamily of(letters(2), {{0, 1}, {1, 0}});
  auto geometry = geometry_from_orderings(of);
  auto rep = represent_planar(of, 3);
  CHECK(rep.bodies.size() == 2);
  auto iso = verify_isomorphism_planar(geometry, rep);
  CHECK(iso.ok);
}

TEST_CASE("chain round-trips through the representation") {
  OrderingFamily of(letters(3), {{0, 1, 2}});
  auto geometry = geometry_from_orderings(of);
  auto rep = represent_planar(of, 3);
  CHECK(verify_isomorphism_planar(geometry, rep).ok);
}

TEST_CASE("derived geometry is independent of the chosen shape") {
  OrderingFamily of(letters(3), {{0, 1, 2}, {2, 1, 0}});
  auto geometry = geometry_from_orderings(of);
  for (auto shape : {ShapeMode::inner_polygon, ShapeMode::outer_polygon,
                     ShapeMode::midpoint_polygon, ShapeMode::semialgebraic}) {
    auto rep = represent_planar(of, 3, 0, shape);
    auto iso = verify_isomorphism_planar(geometry, rep);
    CHECK(iso.ok);
  }
}

TEST_CASE("verification flags a representation of the wrong geometry") {
  OrderingFamily chain(letters(3), {{0, 1, 2}});
  OrderingFamily both(letters(3), {{0, 1, 2}, {2, 1, 0}});
  auto collinear = geometry_from_orderings(both);
  auto rep = represent_planar(chain, 3);
  auto iso = verify_isomorphism_planar(collinear, rep);
  CHECK_FALSE(iso.ok);
  CHECK(iso.witness.has_value());
}

TEST_CASE("random families round-trip in exact inner-polygon mode") {
  Rng rng(1001);
  for (int t = 0; t < 20; ++t) {
    auto of = testutil::random_orderings(rng.range(1, 5), rng.range(1, 3), rng);
    auto geometry = geometry_from_orderings(of);
    auto rep = represent_planar(of, 3);
    CHECK(verify_isomorphism_planar(geometry, rep).ok);
  }
}

TEST_CASE("sandwich: bodies sit between the frame polygon and its blow-up") {
  OrderingFamily of(letters(3), {{0, 1, 2}});
  for (auto shape : {ShapeMode::inner_polygon, ShapeMode::outer_polygon,
                     ShapeMode::midpoint_polygon}) {
    auto rep = represent_planar(of, 3, 0, shape);
    auto report = sandwich_check(rep);
    CHECK(report.inner_ok);
    CHECK(report.outer_ok);  // three places over three rays: scale <= 1+eps exactly
    CHECK(report.outer_scale <= report.bound + 1e-15);
  }
  // more places than rays: the enclosing scale exceeds 1+eps
  OrderingFamily of4(letters(4), {{0, 1, 2, 3}});
  auto tight = represent_planar(of4, 3);
  auto report4 = sandwich_check(tight);
  CHECK(report4.inner_ok);
  CHECK_FALSE(report4.outer_ok);
  auto roomy = represent_planar(of4, 4);
  CHECK(sandwich_check(roomy).outer_ok);
}

TEST_CASE("duplicating orderings drives the bodies toward the disk") {
  OrderingFamily of(letters(2), {{0, 1}});
  double prev = std::numeric_limits<double>::infinity();
  for (int s : {1, 2, 4}) {
    auto rep = represent_planar(of, 3 * s, 0.25);
    double worst = 0;
    for (const auto& body : rep.bodies.bodies)
      worst = std::max(worst, hausdorff_to_unit_disk(body));
    CHECK(worst < prev);
    prev = worst;
  }
}

TEST_CASE("representation bodies have pairwise finitely many common supports") {
  OrderingFamily of(letters(4), {{0, 1, 2, 3}, {3, 1, 0, 2}});
  auto rep = represent_planar(of, 3);
  for (int i = 0; i < rep.bodies.size(); ++i)
    for (int j = i + 1; j < rep.bodies.size(); ++j)
      // a nested pair reports zero directions; what matters is that no pair
      // degenerates into interval agreement
      CHECK_NOTHROW(
          common_supporting_directions(rep.bodies.bodies[i], rep.bodies.bodies[j]));
}
