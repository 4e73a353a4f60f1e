// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

#include "convgeo/errors.hpp"

namespace convgeo {

/// Exact rational scalar. All combinatorial decisions driven by point
/// coordinates go through these; floating point never feeds a family.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "p", "-p/q" or a plain integer string. Throws Errc::parse.
Rat rat_from_string(const std::string& text);
std::string rat_to_string(const Rat& value);
/// Exact conversion; every double is a dyadic rational.
Rat rat_from_double(double value);
double rat_to_double(const Rat& value);

struct RatVec2 {
  Rat x, y;
  friend bool operator==(const RatVec2&, const RatVec2&) = default;
};

inline RatVec2 operator+(const RatVec2& a, const RatVec2& b) { return {a.x + b.x, a.y + b.y}; }
inline RatVec2 operator-(const RatVec2& a, const RatVec2& b) { return {a.x - b.x, a.y - b.y}; }
inline RatVec2 operator*(const Rat& s, const RatVec2& v) { return {s * v.x, s * v.y}; }
inline Rat dot(const RatVec2& a, const RatVec2& b) { return a.x * b.x + a.y * b.y; }
inline Rat cross(const RatVec2& a, const RatVec2& b) { return a.x * b.y - a.y * b.x; }

/// Sign of the signed area of (a, b, c): +1 left turn, -1 right, 0 collinear.
int orient2d(const RatVec2& a, const RatVec2& b, const RatVec2& c);

/// Convex hull in counterclockwise order (monotone chain, exact; collinear
/// points on the hull boundary are dropped). Handles 0-, 1- and 2-point
/// degenerate inputs by returning them deduplicated.
std::vector<RatVec2> convex_hull(std::vector<RatVec2> points);

/// Point-in-convex-hull test against the hull of `points` (not necessarily
/// deduplicated or ordered); boundary counts as inside. Exact.
bool point_in_hull(const RatVec2& p, const std::vector<RatVec2>& points);

/// Same test against a hull already in counterclockwise order.
bool point_in_ccw_hull(const RatVec2& p, const std::vector<RatVec2>& hull);

/// Solves A*lambda = rhs exactly, where A is rows x cols with rows >= cols.
/// Returns the unique solution, or nullopt when the system is inconsistent
/// or rank-deficient.
std::optional<std::vector<Rat>> solve_exact(std::vector<std::vector<Rat>> a,
                                            std::vector<Rat> rhs);

/// Best rational approximation of `value` with denominator <= max_den
/// (continued-fraction convergents, truncated).
Rat rat_approx(double value, long max_den);

}  // namespace convgeo
