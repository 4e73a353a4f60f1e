// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "convgeo/core.hpp"
#include "convgeo/rational.hpp"

namespace convgeo {

/// A convex set inclusion-maximal among the convex sets avoiding `attached`.
struct Copoint {
  Mask set = 0;
  int attached = -1;
  friend bool operator==(const Copoint&, const Copoint&) = default;
};

struct CopointPoset {
  GroundSet ground;
  std::vector<Copoint> copoints;  // ordered by (attached, canonical set order)

  std::vector<Mask> sets() const {
    std::vector<Mask> out;
    out.reserve(copoints.size());
    for (const auto& c : copoints) out.push_back(c.set);
    return out;
  }
};

CopointPoset copoints(const ConvexGeometry& geometry);

struct WidthResult {
  int width = 0;
  std::vector<Mask> antichain;  // witnessing antichain, pairwise incomparable
};

/// Size of a maximum antichain under inclusion, via minimum chain cover:
/// |sets| minus a maximum matching in the strict-inclusion bipartite graph.
WidthResult poset_width(const std::vector<Mask>& sets);

/// Convex dimension: width of the copoint poset.
int cdim(const ConvexGeometry& geometry);

/// Points with exact rational coordinates in R^d.
struct RationalPointConfig {
  int dim = 0;
  std::vector<std::vector<Rat>> points;  // each of length dim
  std::vector<std::string> labels;
};

inline constexpr int kMaxConfigPoints = 12;
inline constexpr int kMaxConfigDim = 6;

/// The geometry of affine convexity on the configuration: X is convex iff
/// no outside point lies in the convex hull of X. Hull membership is decided
/// exactly by enumerating simplices on at most d+1 affinely independent
/// points (Caratheodory) and solving for barycentric coordinates.
ConvexGeometry geometry_from_points(const RationalPointConfig& config);

/// {0, +-e_1, ..., +-e_n} in Q^n. Labels "0", "+e1", "-e1", ...
RationalPointConfig crosspolytope_points(int n);

/// geometry_from_points on the crosspolytope-with-center configuration;
/// 1 <= n <= 4.
ConvexGeometry crosspolytope_geometry(int n);

/// True iff the copoints attached to the center are exactly the 2^n sign
/// sets {eps_1 e_1, ..., eps_n e_n} and the copoint of each vertex is its
/// complement.
bool verify_crosspolytope_copoints(int n);

}  // namespace convgeo
