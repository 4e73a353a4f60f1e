// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "convgeo/core.hpp"

namespace convgeo {

/// f(1) = s, f(i+1) = sqrt((f(i)^2 + d - 1)/d). Strictly decreasing toward 1
/// for d >= 2 (constant at s for d = 1). The recurrence divides the excess
/// f(i)^2 - 1 by exactly d per step, so the excess is what gets stored and
/// iterated: near the limit it stays meaningful long after f itself rounds
/// to 1.
struct FSequence {
  int d = 0;
  double s = 0;
  std::vector<long double> values;  // values[i] = f(i), 1-based; values[0] unused
  std::vector<long double> excess;  // excess[i] = f(i)^2 - 1

  static FSequence compute(int d, double s, int count);
  long double f(int i) const { return values[i]; }
  long double g(int i) const { return excess[i]; }
  /// f(i) - 1 without cancellation.
  long double f_minus_1(int i) const { return excess[i] / (1 + values[i]); }
  int count() const { return static_cast<int>(values.size()) - 1; }
};

/// Axis-aligned ellipsoid centered at the origin, given by its semi-axes.
struct AxisEllipsoid {
  std::vector<double> semiaxes;
  int dim() const { return static_cast<int>(semiaxes.size()); }
};

/// h(E, x) = sqrt(sum a_i^2 x_i^2) for unit x.
double ellipsoid_support(const AxisEllipsoid& e, std::span<const double> x);

struct EllipsoidRepresentation {
  int dprime = 0;  // effective dimension: max(ordering count, ground size)
  double s = 0;
  OrderingFamily orderings;  // padded cyclically to dprime orderings
  FSequence f;
  std::vector<AxisEllipsoid> ellipsoids;  // one per element, semiaxis i = f(d'+1-place_i)
};

/// The ellipsoid construction over a generating ordering family. Padding by
/// duplication keeps every f-index at least 1 while preserving the generated
/// geometry, so all semiaxes stay within (1, s].
EllipsoidRepresentation represent_ellipsoids(const OrderingFamily& orderings, double s);

struct EllipsoidVerifyReport {
  bool ok = false;
  Mask witness = 0;          // offending subset when not ok
  std::string note;
  int subsets_checked = 0;
  int separations_checked = 0;   // convex side: axis halfspace separations
  int containments_checked = 0;  // non-convex side: analytic + sampled checks
  double worst_oracle_margin = -1;  // max over samples of h(phi(g)) - max h(phi(h_i))
};

/// Walks every subset of the ground set. Convex subsets: every outside
/// element is separated by an axis halfspace, decided by comparing cached f
/// values. Non-convex subsets: a witness element is certified inside the
/// hull of its per-axis dominators twice, analytically via the sequence
/// identity d'(f(i+1)^2 - 1) = f(i)^2 - 1 plus semiaxis comparisons, and by
/// a seeded sampled support oracle. An oracle margin beyond tau throws
/// Errc::oracle_violation.
EllipsoidVerifyReport verify_isomorphism_ellipsoid(const ConvexGeometry& geometry,
                                                   const EllipsoidRepresentation& rep,
                                                   long samples = 20000,
                                                   std::uint64_t seed = 42,
                                                   double tau = 1e-9);

/// max over elements of (largest semiaxis - 1); at most s - 1.
double ball_closeness(const EllipsoidRepresentation& rep);

/// Hull-closure evaluator over the ellipsoid family: an element joins the
/// closure of S unless some direction puts its support above the subset
/// maximum by more than tau. The probe set is `samples` seeded sphere
/// directions plus the 2d' axis directions; separations of this
/// construction always show at an axis, so the evaluator decides the true
/// closure. Suitable input for check_anti_exchange.
ClosureOperator ellipsoid_closure_operator(const EllipsoidRepresentation& rep,
                                           long samples = 2000,
                                           std::uint64_t seed = 42,
                                           double tau = 1e-9);

}  // namespace convgeo
