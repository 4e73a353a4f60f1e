// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "convgeo/errors.hpp"

namespace convgeo {

/// Subsets of a ground set are fixed-width bit vectors. Element i of the
/// ground set occupies bit i. Ground sets are capped at 64 elements; the
/// exhaustive operations impose a much smaller configurable cap.
using Mask = std::uint64_t;

inline constexpr int kExhaustiveCap = 20;

inline Mask bit(int i) { return Mask{1} << i; }
inline bool has_bit(Mask m, int i) { return (m >> i) & 1u; }
inline int popcount(Mask m) { return std::popcount(m); }

std::vector<int> mask_to_indices(Mask m);
Mask mask_from_indices(const std::vector<int>& indices, int n);

/// Canonical order on subsets: by cardinality, then lexicographically on the
/// sorted index sequence. Families stored in this order compare with ==.
bool canonical_mask_less(Mask a, Mask b);

/// A finite ordered set of labelled elements. Indices 0..n-1 are stable.
class GroundSet {
public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> labels);

  int size() const { return static_cast<int>(labels_.size()); }
  Mask full() const { return size() == 64 ? ~Mask{0} : bit(size()) - 1; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_[i]; }
  int index_of(const std::string& label) const;

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

private:
  std::vector<std::string> labels_;
};

/// A duplicate-free family of subsets of a ground set, kept in canonical
/// order so that equality of families is plain vector equality.
class SetFamily {
public:
  SetFamily() = default;
  SetFamily(GroundSet ground, std::vector<Mask> members);

  const GroundSet& ground() const { return ground_; }
  const std::vector<Mask>& members() const { return members_; }
  int n() const { return ground_.size(); }
  bool contains(Mask m) const;

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

private:
  GroundSet ground_;
  std::vector<Mask> members_;
};

struct AxiomReport {
  bool valid = true;
  int violated_axiom = 0;  // 1, 2 or 3 when invalid
  std::optional<Mask> witness_x;
  std::optional<Mask> witness_y;
  std::string message;
};

/// Checks the three set-system axioms: empty set and ground set present,
/// closure under pairwise intersection, and the one-point extension property.
AxiomReport check_axioms(const SetFamily& family);

/// A set family certified to satisfy all three axioms.
class ConvexGeometry {
public:
  /// Throws Errc::invalid_argument when the family fails an axiom.
  static ConvexGeometry from_family(SetFamily family);
  /// Skips the axiom check; for internal construction paths that are
  /// correct by construction and large enough to make re-checking wasteful.
  static ConvexGeometry from_family_unchecked(SetFamily family);

  const SetFamily& family() const { return family_; }
  const GroundSet& ground() const { return family_.ground(); }
  int n() const { return family_.n(); }

  /// Smallest convex set containing X (intersection of supersets).
  Mask closure(Mask x) const;

  friend bool operator==(const ConvexGeometry&, const ConvexGeometry&) = default;

private:
  explicit ConvexGeometry(SetFamily family) : family_(std::move(family)) {}
  SetFamily family_;
};

/// A family of total orders on a ground set. orders[i] lists element
/// indices from first place to last; place(i, x) is 1-based.
class OrderingFamily {
public:
  OrderingFamily() = default;
  OrderingFamily(GroundSet ground, std::vector<std::vector<int>> orders);

  const GroundSet& ground() const { return ground_; }
  const std::vector<std::vector<int>>& orders() const { return orders_; }
  int count() const { return static_cast<int>(orders_.size()); }
  int n() const { return ground_.size(); }
  int place(int order, int element) const { return places_[order][element]; }
  bool precedes(int order, int x, int y) const {
    return places_[order][x] < places_[order][y];
  }

private:
  GroundSet ground_;
  std::vector<std::vector<int>> orders_;
  std::vector<std::vector<int>> places_;  // places_[i][x] = 1-based place
};

/// An arbitrary subset evaluator paired with its ground set. Used for
/// closure-law and anti-exchange checks on operators that do not come with
/// a materialized family (e.g. closures derived from body families).
struct ClosureOperator {
  GroundSet ground;
  std::function<Mask(Mask)> eval;
};

ClosureOperator closure_operator_of(const ConvexGeometry& geometry);

struct AntiExchangeReport {
  bool valid = true;
  /// "", "not_extensive", "not_monotone", "not_idempotent", "anti_exchange"
  std::string failure;
  Mask witness_set = 0;
  int witness_x = -1;
  int witness_y = -1;
  bool empty_is_fixed = true;  // informational: whether eval(0) == 0
  std::string message;
};

/// Exhaustively verifies the closure laws, then the anti-exchange property:
/// for all A and distinct x, y outside eval(A), eval(A+x) != eval(A+y).
/// Throws Errc::ground_too_large when 2^n exceeds the cap.
AntiExchangeReport check_anti_exchange(const ClosureOperator& op,
                                       int exhaustive_cap = kExhaustiveCap);

/// The family generated by a collection of orderings: X is convex iff every
/// outside element dominates all of X in some ordering.
ConvexGeometry geometry_from_orderings(const OrderingFamily& orderings,
                                       int exhaustive_cap = kExhaustiveCap);

/// Searches for a bijection phi with phi(X) convex iff X convex. Backtracking
/// over label assignments, pruned by per-element membership degree profiles.
/// Throws Errc::search_cap when the ground sets exceed the cap.
std::optional<std::vector<int>> isomorphic(const ConvexGeometry& g1,
                                           const ConvexGeometry& g2,
                                           int search_cap = 10);

}  // namespace convgeo
