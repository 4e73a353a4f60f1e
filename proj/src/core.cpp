// SPDX-License-Identifier: Apache-2.0
#include "convgeo/core.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace convgeo {

std::vector<int> mask_to_indices(Mask m) {
  std::vector<int> out;
  while (m) {
    int i = std::countr_zero(m);
    out.push_back(i);
    m &= m - 1;
  }
  return out;
}

Mask mask_from_indices(const std::vector<int>& indices, int n) {
  Mask m = 0;
  for (int i : indices) {
    if (i < 0 || i >= n)
      fail(Errc::invalid_argument, "element index " + std::to_string(i) +
                                       " out of range for ground set of size " +
                                       std::to_string(n));
    m |= bit(i);
  }
  return m;
}

bool canonical_mask_less(Mask a, Mask b) {
  int pa = popcount(a), pb = popcount(b);
  if (pa != pb) return pa < pb;
  if (a == b) return false;
  // Equal cardinality: the sorted index sequences agree below the lowest
  // differing bit, so the one holding that bit is lexicographically smaller.
  int i = std::countr_zero(a ^ b);
  return has_bit(a, i);
}

GroundSet::GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() > 64)
    fail(Errc::ground_too_large, "ground set exceeds 64 elements");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_)
    if (!seen.insert(l).second)
      fail(Errc::invalid_argument, "duplicate element label: " + l);
}

int GroundSet::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (labels_[i] == label) return i;
  return -1;
}

SetFamily::SetFamily(GroundSet ground, std::vector<Mask> members)
    : ground_(std::move(ground)), members_(std::move(members)) {
  Mask full = ground_.full();
  for (Mask m : members_)
    if ((m & ~full) != 0)
      fail(Errc::invalid_argument, "family member not a subset of the ground set");
  std::sort(members_.begin(), members_.end(), canonical_mask_less);
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool SetFamily::contains(Mask m) const {
  return std::binary_search(members_.begin(), members_.end(), m,
                            canonical_mask_less);
}

namespace {

std::string describe_mask(const GroundSet& g, Mask m) {
  std::string s = "{";
  bool first = true;
  for (int i : mask_to_indices(m)) {
    if (!first) s += ",";
    s += g.label(i);
    first = false;
  }
  return s + "}";
}

}  // namespace

AxiomReport check_axioms(const SetFamily& family) {
  AxiomReport report;
  const Mask full = family.ground().full();
  if (!family.contains(0) || !family.contains(full)) {
    report.valid = false;
    report.violated_axiom = 1;
    report.witness_x = family.contains(0) ? full : Mask{0};
    report.message = "axiom 1: " +
                     describe_mask(family.ground(), *report.witness_x) +
                     " missing from the family";
    return report;
  }
  const auto& mem = family.members();
  for (size_t i = 0; i < mem.size(); ++i)
    for (size_t j = i + 1; j < mem.size(); ++j) {
      Mask inter = mem[i] & mem[j];
      if (!family.contains(inter)) {
        report.valid = false;
        report.violated_axiom = 2;
        report.witness_x = mem[i];
        report.witness_y = mem[j];
        report.message = "axiom 2: intersection of " +
                         describe_mask(family.ground(), mem[i]) + " and " +
                         describe_mask(family.ground(), mem[j]) +
                         " is not in the family";
        return report;
      }
    }
  for (Mask x : mem) {
    if (x == full) continue;
    bool extends = false;
    Mask outside = full & ~x;
    for (int e : mask_to_indices(outside))
      if (family.contains(x | bit(e))) {
        extends = true;
        break;
      }
    if (!extends) {
      report.valid = false;
      report.violated_axiom = 3;
      report.witness_x = x;
      report.message = "axiom 3: " + describe_mask(family.ground(), x) +
                       " has no one-point convex extension";
      return report;
    }
  }
  return report;
}

ConvexGeometry ConvexGeometry::from_family(SetFamily family) {
  AxiomReport report = check_axioms(family);
  if (!report.valid)
    fail(Errc::invalid_argument, "family is not a convex geometry: " + report.message);
  return ConvexGeometry(std::move(family));
}

ConvexGeometry ConvexGeometry::from_family_unchecked(SetFamily family) {
  return ConvexGeometry(std::move(family));
}

Mask ConvexGeometry::closure(Mask x) const {
  Mask result = family_.ground().full();
  for (Mask m : family_.members())
    if ((x & ~m) == 0) result &= m;
  return result;
}

ClosureOperator closure_operator_of(const ConvexGeometry& geometry) {
  return ClosureOperator{geometry.ground(),
                         [geometry](Mask x) { return geometry.closure(x); }};
}

OrderingFamily::OrderingFamily(GroundSet ground, std::vector<std::vector<int>> orders)
    : ground_(std::move(ground)), orders_(std::move(orders)) {
  if (orders_.empty())
    fail(Errc::invalid_argument, "ordering family requires at least one ordering");
  const int n = ground_.size();
  places_.assign(orders_.size(), std::vector<int>(n, 0));
  for (size_t i = 0; i < orders_.size(); ++i) {
    const auto& ord = orders_[i];
    if (static_cast<int>(ord.size()) != n)
      fail(Errc::invalid_argument, "ordering " + std::to_string(i) +
                                       " is not a permutation of the ground set");
    std::vector<bool> seen(n, false);
    for (int pos = 0; pos < n; ++pos) {
      int x = ord[pos];
      if (x < 0 || x >= n || seen[x])
        fail(Errc::invalid_argument, "ordering " + std::to_string(i) +
                                         " is not a permutation of the ground set");
      seen[x] = true;
      places_[i][x] = pos + 1;
    }
  }
}

AntiExchangeReport check_anti_exchange(const ClosureOperator& op, int exhaustive_cap) {
  const int n = op.ground.size();
  if (n > exhaustive_cap)
    fail(Errc::ground_too_large,
         "anti-exchange check needs 2^" + std::to_string(n) +
             " closure evaluations, above the cap of 2^" +
             std::to_string(exhaustive_cap));
  AntiExchangeReport report;
  const Mask full = op.ground.full();
  const std::uint64_t count = Mask{1} << n;
  std::vector<Mask> phi(count);
  for (std::uint64_t a = 0; a < count; ++a) phi[a] = op.eval(static_cast<Mask>(a));

  report.empty_is_fixed = (phi[0] == 0);

  for (std::uint64_t a = 0; a < count; ++a) {
    Mask A = static_cast<Mask>(a);
    if ((A & ~phi[a]) != 0) {
      report.valid = false;
      report.failure = "not_extensive";
      report.witness_set = A;
      report.message = "operator is not extensive";
      return report;
    }
    if (phi[phi[a]] != phi[a]) {
      report.valid = false;
      report.failure = "not_idempotent";
      report.witness_set = A;
      report.message = "operator is not idempotent";
      return report;
    }
    // Monotone iff adding one element never shrinks the closure; general
    // X subseteq Y monotonicity follows by induction along added elements.
    for (int e : mask_to_indices(full & ~A)) {
      if ((phi[a] & ~phi[a | bit(e)]) != 0) {
        report.valid = false;
        report.failure = "not_monotone";
        report.witness_set = A;
        report.witness_x = e;
        report.message = "operator is not monotone";
        return report;
      }
    }
  }

  for (std::uint64_t a = 0; a < count; ++a) {
    Mask A = static_cast<Mask>(a);
    Mask outside = full & ~phi[a];
    auto out = mask_to_indices(outside);
    for (size_t i = 0; i < out.size(); ++i)
      for (size_t j = i + 1; j < out.size(); ++j) {
        if (phi[a | bit(out[i])] == phi[a | bit(out[j])]) {
          report.valid = false;
          report.failure = "anti_exchange";
          report.witness_set = A;
          report.witness_x = out[i];
          report.witness_y = out[j];
          report.message = "anti-exchange fails: two distinct outside elements "
                           "close to the same set";
          return report;
        }
      }
  }
  return report;
}

ConvexGeometry geometry_from_orderings(const OrderingFamily& orderings,
                                       int exhaustive_cap) {
  const int n = orderings.n();
  if (n > exhaustive_cap)
    fail(Errc::ground_too_large,
         "generation scans 2^" + std::to_string(n) + " subsets, above the cap");
  const int m = orderings.count();
  const std::uint64_t count = Mask{1} << n;

  // max place per order over each subset, built up along lowest set bits
  std::vector<std::vector<std::uint8_t>> maxplace(
      m, std::vector<std::uint8_t>(count, 0));
  for (int i = 0; i < m; ++i) {
    auto& mp = maxplace[i];
    for (std::uint64_t x = 1; x < count; ++x) {
      int low = std::countr_zero(x);
      std::uint8_t rest = mp[x & (x - 1)];
      std::uint8_t p = static_cast<std::uint8_t>(orderings.place(i, low));
      mp[x] = std::max(rest, p);
    }
  }

  std::vector<Mask> members;
  for (std::uint64_t x = 0; x < count; ++x) {
    Mask X = static_cast<Mask>(x);
    bool convex = true;
    for (int y = 0; y < n && convex; ++y) {
      if (has_bit(X, y)) continue;
      bool dominated = false;
      for (int i = 0; i < m; ++i)
        if (orderings.place(i, y) > maxplace[i][x]) {
          dominated = true;
          break;
        }
      convex = dominated;
    }
    if (convex) members.push_back(X);
  }
  return ConvexGeometry::from_family_unchecked(
      SetFamily(orderings.ground(), std::move(members)));
}

namespace {

// Per-element profile: for each cardinality, how many convex sets of that
// cardinality contain the element. Isomorphisms preserve these.
std::vector<std::vector<int>> degree_profiles(const ConvexGeometry& g) {
  const int n = g.n();
  std::vector<std::vector<int>> prof(n, std::vector<int>(n + 1, 0));
  for (Mask m : g.family().members())
    for (int e : mask_to_indices(m)) prof[e][popcount(m)]++;
  return prof;
}

bool extend_bijection(const ConvexGeometry& g1, const ConvexGeometry& g2,
                      const std::vector<std::vector<char>>& allowed,
                      std::vector<int>& phi, std::vector<bool>& used, int next) {
  const int n = g1.n();
  if (next == n) {
    for (Mask m : g1.family().members()) {
      Mask image = 0;
      for (int e : mask_to_indices(m)) image |= bit(phi[e]);
      if (!g2.family().contains(image)) return false;
    }
    return true;
  }
  for (int target = 0; target < n; ++target) {
    if (used[target] || !allowed[next][target]) continue;
    phi[next] = target;
    used[target] = true;
    if (extend_bijection(g1, g2, allowed, phi, used, next + 1)) return true;
    used[target] = false;
  }
  phi[next] = -1;
  return false;
}

}  // namespace

std::optional<std::vector<int>> isomorphic(const ConvexGeometry& g1,
                                           const ConvexGeometry& g2,
                                           int search_cap) {
  if (g1.n() != g2.n()) return std::nullopt;
  if (g1.family().members().size() != g2.family().members().size())
    return std::nullopt;
  const int n = g1.n();
  if (n > search_cap)
    fail(Errc::search_cap, "isomorphism search capped at ground sets of size " +
                               std::to_string(search_cap));
  auto p1 = degree_profiles(g1);
  auto p2 = degree_profiles(g2);
  std::vector<std::vector<char>> allowed(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a) {
    bool any = false;
    for (int b = 0; b < n; ++b) {
      allowed[a][b] = (p1[a] == p2[b]);
      any = any || allowed[a][b];
    }
    if (!any) return std::nullopt;
  }
  std::vector<int> phi(n, -1);
  std::vector<bool> used(n, false);
  if (n == 0) return phi;
  if (extend_bijection(g1, g2, allowed, phi, used, 0)) return phi;
  return std::nullopt;
}

}  // namespace convgeo
