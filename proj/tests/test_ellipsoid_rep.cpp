// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "convgeo/dimension.hpp"
#include "convgeo/ellipsoid_rep.hpp"
#include "test_util.hpp"

using namespace convgeo;
using testutil::letters;
using testutil::Rng;

TEST_CASE("f-sequence values for d=2, s=2") {
  auto seq = FSequence::compute(2, 2.0, 3);
  CHECK(static_cast<double>(seq.f(1)) == doctest::Approx(2.0));
  CHECK(static_cast<double>(seq.f(2)) == doctest::Approx(std::sqrt(2.5)));
  CHECK(static_cast<double>(seq.f(3)) == doctest::Approx(std::sqrt(1.75)));
}

TEST_CASE("f-sequence is constant for d=1") {
  auto seq = FSequence::compute(1, 1.75, 10);
  for (int i = 1; i <= 10; ++i) CHECK(static_cast<double>(seq.f(i)) == doctest::Approx(1.75));
}

TEST_CASE("f-sequence ratio identity and monotone decay") {
  for (int d : {2, 3, 5}) {
    auto seq = FSequence::compute(d, 1.8, 30);
    for (int i = 1; i < 30; ++i) {
      CHECK(static_cast<double>(fabsl(d * seq.g(i + 1) - seq.g(i))) < 1e-12);
      CHECK(seq.g(i + 1) < seq.g(i));
      CHECK(seq.g(i + 1) > 0);
      CHECK(seq.f(i + 1) <= seq.f(i));
    }
  }
}

TEST_CASE("f-sequence rejects s <= 1") {
  CHECK_THROWS_AS(FSequence::compute(2, 1.0, 5), Error);
  CHECK_THROWS_AS(FSequence::compute(2, 0.5, 5), Error);
}

TEST_CASE("ellipsoid support") {
  AxisEllipsoid ball{{1, 1, 1}};
  double c[] = {0.6, 0.8, 0.0};
  CHECK(ellipsoid_support(ball, c) == doctest::Approx(1.0));

  AxisEllipsoid e{{2, 1}};
  double x1[] = {1.0, 0.0};
  CHECK(ellipsoid_support(e, x1) == doctest::Approx(2.0));
  double r = 1 / std::sqrt(2.0);
  double x2[] = {r, r};
  CHECK(ellipsoid_support(e, x2) == doctest::Approx(std::sqrt(2.5)));
  double bad[] = {1.0, 1.0};
  CHECK_THROWS_AS(ellipsoid_support(e, bad), Error);
}

TEST_CASE("chain representation pads to the ground size") {
  OrderingFamily of(letters(3), {{0, 1, 2}});
  auto rep = represent_ellipsoids(of, 2.0);
  CHECK(rep.dprime == 3);
  // first element sits at place 1 in every duplicated ordering
  for (double a : rep.ellipsoids[0].semiaxes)
    CHECK(a == doctest::Approx(static_cast<double>(rep.f.f(3))));
  // last element reaches f(1) = s on every axis
  for (double a : rep.ellipsoids[2].semiaxes) CHECK(a == doctest::Approx(2.0));
}

TEST_CASE("two opposite orderings give the transposed ellipsoids") {
  OrderingFamily of(letters(2), {{0, 1}, {1, 0}});
  auto rep = represent_ellipsoids(of, 1.5);
  CHECK(rep.dprime == 2);
  CHECK(rep.ellipsoids[0].semiaxes[0] == doctest::Approx(static_cast<double>(rep.f.f(2))));
  CHECK(rep.ellipsoids[0].semiaxes[1] == doctest::Approx(1.5));
  CHECK(rep.ellipsoids[1].semiaxes[0] == doctest::Approx(1.5));
  CHECK(rep.ellipsoids[1].semiaxes[1] == doctest::Approx(static_cast<double>(rep.f.f(2))));
}

TEST_CASE("representation map is injective") {
  Rng rng(88);
  for (int t = 0; t < 20; ++t) {
    auto of = testutil::random_orderings(rng.range(2, 6), rng.range(1, 3), rng);
    auto rep = represent_ellipsoids(of, 1.5);
    for (size_t i = 0; i < rep.ellipsoids.size(); ++i)
      for (size_t j = i + 1; j < rep.ellipsoids.size(); ++j)
        CHECK(rep.ellipsoids[i].semiaxes != rep.ellipsoids[j].semiaxes);
  }
}

TEST_CASE("verification: chain geometry") {
  OrderingFamily of(letters(3), {{0, 1, 2}});
  auto geometry = geometry_from_orderings(of);
  auto rep = represent_ellipsoids(of, 1.5);
  auto report = verify_isomorphism_ellipsoid(geometry, rep, 4000);
  CHECK(report.ok);
  CHECK(report.worst_oracle_margin <= 1e-9);
}

TEST_CASE("verification: free geometry on two elements") {
  OrderingFamily of(letters(2), {{0, 1}, {1, 0}});
  auto geometry = geometry_from_orderings(of);
  auto rep = represent_ellipsoids(of, 1.5);
  auto report = verify_isomorphism_ellipsoid(geometry, rep, 4000);
  CHECK(report.ok);
}

TEST_CASE("verification: crosspolytope n=2 via its four generating orderings") {
  auto geometry = crosspolytope_geometry(2);
  std::vector<std::vector<int>> orders = {
      {2, 4, 0, 3, 1}, {1, 3, 0, 4, 2}, {1, 4, 0, 2, 3}, {2, 3, 0, 1, 4}};
  OrderingFamily of(geometry.ground(), orders);
  REQUIRE(geometry_from_orderings(of) == geometry);
  auto rep = represent_ellipsoids(of, 1.5);
  CHECK(rep.dprime == 5);
  auto report = verify_isomorphism_ellipsoid(geometry, rep, 4000);
  CHECK(report.ok);
}

TEST_CASE("verification flags a mismatched geometry") {
  OrderingFamily chain(letters(3), {{0, 1, 2}});
  OrderingFamily both(letters(3), {{0, 1, 2}, {2, 1, 0}});
  auto collinear = geometry_from_orderings(both);
  auto rep = represent_ellipsoids(chain, 1.5);
  auto report = verify_isomorphism_ellipsoid(collinear, rep, 500);
  CHECK_FALSE(report.ok);
}

TEST_CASE("random families verify end to end") {
  Rng rng(404);
  for (int t = 0; t < 10; ++t) {
    auto of = testutil::random_orderings(rng.range(1, 5), rng.range(1, 3), rng);
    auto geometry = geometry_from_orderings(of);
    auto rep = represent_ellipsoids(of, 1.5);
    auto report = verify_isomorphism_ellipsoid(geometry, rep, 2000, 42 + t);
    CHECK(report.ok);
  }
}

TEST_CASE("ball closeness stays within s - 1 and shrinks with s") {
  OrderingFamily of(letters(4), {{0, 1, 2, 3}, {3, 2, 0, 1}});
  double prev = 1;
  for (double s : {1.5, 1.1, 1.01}) {
    auto rep = represent_ellipsoids(of, s);
    double c = ball_closeness(rep);
    CHECK(c <= s - 1 + 1e-15);
    CHECK(c > 0);
    CHECK(c < prev);
    prev = c;
    // every semiaxis within (1, s]
    for (const auto& e : rep.ellipsoids)
      for (double a : e.semiaxes) {
        CHECK(a > 1);
        CHECK(a <= s + 1e-15);
      }
  }
  CHECK_THROWS_AS(represent_ellipsoids(of, 1.0), Error);
}

TEST_CASE("closure derived from the ellipsoid family satisfies anti-exchange") {
  Rng rng(606);
  for (int t = 0; t < 6; ++t) {
    auto of = testutil::random_orderings(rng.range(2, 5), rng.range(1, 3), rng);
    auto geometry = geometry_from_orderings(of);
    auto rep = represent_ellipsoids(of, 1.5);
    auto op = ellipsoid_closure_operator(rep);
    auto report = check_anti_exchange(op);
    CHECK(report.valid);
    CHECK(report.empty_is_fixed);
    // and the derived closure reproduces the abstract one on every subset
    for (Mask x = 0; x <= geometry.ground().full(); ++x)
      CHECK(op.eval(x) == geometry.closure(x));
  }
}

TEST_CASE("f decays geometrically: f(40) - 1 < 1e-9 for s=2") {
  for (int d : {2, 3, 4}) {
    auto seq = FSequence::compute(d, 2.0, 40);
    CHECK(static_cast<double>(seq.f_minus_1(40)) < 1e-9);
    CHECK(seq.f_minus_1(40) > 0);
    // excess decays exactly geometrically: f(i)^2 - 1 = (s^2-1)/d^(i-1)
    long double predicted = (4.0L - 1) / powl(d, 39);
    CHECK(static_cast<double>(fabsl(seq.g(40) - predicted)) < 1e-12);
  }
}
