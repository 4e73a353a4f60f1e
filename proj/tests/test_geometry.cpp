// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "convgeo/core.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace convgeo;
using testutil::letters;
using testutil::Rng;

namespace {

SetFamily family_of(const GroundSet& g, std::vector<std::vector<int>> sets) {
  std::vector<Mask> masks;
  for (auto& s : sets) masks.push_back(mask_from_indices(s, g.size()));
  return SetFamily(g, std::move(masks));
}

// {0,{a},{b},{c},{a,b},{b,c},E}: three collinear points with b in the middle.
ConvexGeometry collinear3() {
  auto g = letters(3);
  return ConvexGeometry::from_family(
      family_of(g, {{}, {0}, {1}, {2}, {0, 1}, {1, 2}, {0, 1, 2}}));
}

ConvexGeometry chain3() {
  auto g = letters(3);
  return ConvexGeometry::from_family(family_of(g, {{}, {0}, {0, 1}, {0, 1, 2}}));
}

ConvexGeometry free_geometry(int n) {
  auto g = letters(n);
  std::vector<Mask> all;
  for (Mask x = 0; x < (Mask{1} << n); ++x) all.push_back(x);
  return ConvexGeometry::from_family(SetFamily(g, std::move(all)));
}

}  // namespace

TEST_CASE("axioms: chain of prefixes is a convex geometry") {
  auto g = letters(3);
  auto rep = check_axioms(family_of(g, {{}, {0}, {0, 1}, {0, 1, 2}}));
  CHECK(rep.valid);
}

TEST_CASE("axioms: missing empty set violates axiom 1") {
  auto g = letters(3);
  auto rep = check_axioms(family_of(g, {{0}, {0, 1, 2}}));
  CHECK_FALSE(rep.valid);
  CHECK(rep.violated_axiom == 1);
  CHECK(*rep.witness_x == Mask{0});
}

TEST_CASE("axioms: empty set without one-point extension violates axiom 3") {
  auto g = letters(3);
  auto rep = check_axioms(family_of(g, {{}, {0, 1}, {0, 1, 2}}));
  CHECK_FALSE(rep.valid);
  CHECK(rep.violated_axiom == 3);
  CHECK(*rep.witness_x == Mask{0});
}

TEST_CASE("axioms: family not closed under intersection violates axiom 2") {
  auto g = letters(3);
  auto rep = check_axioms(family_of(g, {{}, {0, 1}, {1, 2}, {0, 1, 2}}));
  CHECK_FALSE(rep.valid);
  CHECK(rep.violated_axiom == 2);
}

TEST_CASE("closure basics") {
  auto geo = collinear3();
  CHECK(geo.closure(geo.ground().full()) == geo.ground().full());
  CHECK(geo.closure(0) == 0);
  // {a,c} spans the whole segment
  CHECK(geo.closure(bit(0) | bit(2)) == (bit(0) | bit(1) | bit(2)));
  // closure agrees with the brute-force superset intersection on all subsets
  for (Mask x = 0; x < 8; ++x)
    CHECK(geo.closure(x) == oracles::closure_by_supersets(geo.family(), x));
}

TEST_CASE("anti-exchange: collinear geometry closure is a convex closure") {
  auto geo = collinear3();
  auto rep = check_anti_exchange(closure_operator_of(geo));
  CHECK(rep.valid);
  CHECK(rep.empty_is_fixed);
}

TEST_CASE("anti-exchange: collapse-to-everything operator fails") {
  auto g = letters(3);
  ClosureOperator op{g, [&](Mask x) -> Mask { return x == 0 ? 0 : Mask{7}; }};
  auto rep = check_anti_exchange(op);
  CHECK_FALSE(rep.valid);
  CHECK(rep.failure == "anti_exchange");
  CHECK(rep.witness_set == Mask{0});
}

TEST_CASE("anti-exchange: identity closure is valid") {
  auto g = letters(4);
  ClosureOperator op{g, [](Mask x) { return x; }};
  auto rep = check_anti_exchange(op);
  CHECK(rep.valid);
}

TEST_CASE("anti-exchange: cap produces ground_too_large") {
  std::vector<std::string> labels;
  for (int i = 0; i < 21; ++i) labels.push_back("p" + std::to_string(i));
  ClosureOperator op{GroundSet(labels), [](Mask x) { return x; }};
  CHECK_THROWS_AS(check_anti_exchange(op), Error);
}

TEST_CASE("generation: single chain gives prefix family") {
  OrderingFamily of(letters(3), {{0, 1, 2}});
  auto geo = geometry_from_orderings(of);
  CHECK(geo == chain3());
}

TEST_CASE("generation: opposite chains give the collinear geometry") {
  OrderingFamily of(letters(3), {{0, 1, 2}, {2, 1, 0}});
  auto geo = geometry_from_orderings(of);
  CHECK(geo == collinear3());
}

TEST_CASE("generation: ground set is always convex") {
  Rng rng(7);
  auto of = testutil::random_orderings(5, 3, rng);
  auto geo = geometry_from_orderings(of);
  CHECK(geo.family().contains(geo.ground().full()));
  CHECK(geo.family().contains(0));
}

TEST_CASE("generation matches the definition oracle on random instances") {
  Rng rng(1234);
  for (int trial = 0; trial < 60; ++trial) {
    int n = rng.range(1, 5);
    int m = rng.range(1, 3);
    auto of = testutil::random_orderings(n, m, rng);
    auto geo = geometry_from_orderings(of);
    CHECK(geo.family().members() == oracles::definition3_family(of));
  }
}

TEST_CASE("generated geometries pass the axioms and anti-exchange") {
  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    int n = rng.range(1, 6);
    int m = rng.range(1, 4);
    auto of = testutil::random_orderings(n, m, rng);
    auto geo = geometry_from_orderings(of);
    CHECK(check_axioms(geo.family()).valid);
    CHECK(check_anti_exchange(closure_operator_of(geo)).valid);
  }
}

TEST_CASE("duplicating an ordering never changes the generated geometry") {
  Rng rng(4242);
  for (int trial = 0; trial < 30; ++trial) {
    int n = rng.range(2, 6);
    int m = rng.range(1, 3);
    auto of = testutil::random_orderings(n, m, rng);
    auto orders = of.orders();
    orders.push_back(orders[rng.below(orders.size())]);
    OrderingFamily doubled(of.ground(), orders);
    CHECK(geometry_from_orderings(of) == geometry_from_orderings(doubled));
  }
}

TEST_CASE("isomorphic: geometry vs itself accepts the identity") {
  auto geo = collinear3();
  auto phi = isomorphic(geo, geo);
  REQUIRE(phi.has_value());
  Mask mapped = 0;
  for (int e : mask_to_indices(bit(0) | bit(1))) mapped |= bit((*phi)[e]);
  CHECK(geo.family().contains(mapped));
}

TEST_CASE("isomorphic: chains over different labels map in order") {
  OrderingFamily of1(letters(3), {{0, 1, 2}});
  OrderingFamily of2(GroundSet({"x", "y", "z"}), {{0, 1, 2}});
  auto phi = isomorphic(geometry_from_orderings(of1), geometry_from_orderings(of2));
  REQUIRE(phi.has_value());
  CHECK(*phi == std::vector<int>{0, 1, 2});
}

TEST_CASE("isomorphic: chain vs free geometry differ (family sizes 4 vs 8)") {
  CHECK_FALSE(isomorphic(chain3(), free_geometry(3)).has_value());
}

TEST_CASE("isomorphic: random relabelings are recovered") {
  Rng rng(2025);
  for (int trial = 0; trial < 25; ++trial) {
    int n = rng.range(2, 6);
    auto of = testutil::random_orderings(n, rng.range(1, 3), rng);
    auto geo = geometry_from_orderings(of);
    auto perm = testutil::random_permutation(n, rng);
    std::vector<Mask> relabeled;
    for (Mask m : geo.family().members()) {
      Mask out = 0;
      for (int e : mask_to_indices(m)) out |= bit(perm[e]);
      relabeled.push_back(out);
    }
    auto shuffled = ConvexGeometry::from_family(
        SetFamily(geo.ground(), std::move(relabeled)));
    auto phi = isomorphic(geo, shuffled);
    REQUIRE(phi.has_value());
    for (Mask m : geo.family().members()) {
      Mask image = 0;
      for (int e : mask_to_indices(m)) image |= bit((*phi)[e]);
      CHECK(shuffled.family().contains(image));
    }
  }
}

TEST_CASE("isomorphic: search cap throws") {
  auto g11 = free_geometry(11);
  CHECK_THROWS_AS(isomorphic(g11, g11), Error);
}

TEST_CASE("canonical order sorts by cardinality then index sequence") {
  auto g = letters(4);
  SetFamily fam(g, {mask_from_indices({1, 2}, 4), mask_from_indices({0, 3}, 4),
                    mask_from_indices({2}, 4), Mask{0}});
  std::vector<Mask> expected = {0, bit(2), bit(0) | bit(3), bit(1) | bit(2)};
  CHECK(fam.members() == expected);
}
