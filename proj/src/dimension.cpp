// SPDX-License-Identifier: Apache-2.0
#include "convgeo/dimension.hpp"

#include <algorithm>
#include <queue>

namespace convgeo {

CopointPoset copoints(const ConvexGeometry& geometry) {
  CopointPoset poset;
  poset.ground = geometry.ground();
  const auto& members = geometry.family().members();
  const int n = geometry.n();
  for (int x = 0; x < n; ++x) {
    for (Mask a : members) {
      if (has_bit(a, x)) continue;
      bool maximal = true;
      for (Mask b : members) {
        if (b == a || has_bit(b, x)) continue;
        if ((a & ~b) == 0) {  // a strictly contained in b
          maximal = false;
          break;
        }
      }
      if (maximal) poset.copoints.push_back({a, x});
    }
  }
  return poset;
}

namespace {

// Hopcroft-Karp maximum matching, adjacency from left to right vertices.
class BipartiteMatcher {
public:
  explicit BipartiteMatcher(std::vector<std::vector<int>> adj, int right_count)
      : adj_(std::move(adj)),
        left_(static_cast<int>(adj_.size())),
        right_(right_count),
        match_left_(left_, -1),
        match_right_(right_, -1) {}

  int solve() {
    int matching = 0;
    while (bfs()) {
      for (int u = 0; u < left_; ++u)
        if (match_left_[u] == -1 && dfs(u)) ++matching;
    }
    return matching;
  }

  const std::vector<int>& match_left() const { return match_left_; }
  const std::vector<int>& match_right() const { return match_right_; }

private:
  static constexpr int kInf = 1 << 30;

  bool bfs() {
    std::queue<int> queue;
    dist_.assign(left_, kInf);
    for (int u = 0; u < left_; ++u)
      if (match_left_[u] == -1) {
        dist_[u] = 0;
        queue.push(u);
      }
    bool found = false;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop();
      for (int v : adj_[u]) {
        int w = match_right_[v];
        if (w == -1) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          queue.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(int u) {
    for (int v : adj_[u]) {
      int w = match_right_[v];
      if (w == -1 || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    dist_[u] = kInf;
    return false;
  }

  std::vector<std::vector<int>> adj_;
  int left_, right_;
  std::vector<int> match_left_, match_right_;
  std::vector<int> dist_;
};

}  // namespace

WidthResult poset_width(const std::vector<Mask>& sets_in) {
  std::vector<Mask> sets = sets_in;
  std::sort(sets.begin(), sets.end(), canonical_mask_less);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  const int n = static_cast<int>(sets.size());
  if (n == 0) return {};

  auto strictly_below = [&](int i, int j) {
    return sets[i] != sets[j] && (sets[i] & ~sets[j]) == 0;
  };
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (strictly_below(i, j)) adj[i].push_back(j);

  BipartiteMatcher matcher(adj, n);
  int matching = matcher.solve();

  // Koenig: Z = vertices reachable from unmatched left vertices along
  // alternating paths; cover = (L \ Z) + (R in Z). Elements covered on
  // neither side form a maximum antichain.
  std::vector<bool> left_z(n, false), right_z(n, false);
  std::queue<int> queue;
  for (int u = 0; u < n; ++u)
    if (matcher.match_left()[u] == -1) {
      left_z[u] = true;
      queue.push(u);
    }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop();
    for (int v : adj[u]) {
      if (matcher.match_left()[u] == v) continue;
      if (!right_z[v]) {
        right_z[v] = true;
        int w = matcher.match_right()[v];
        if (w != -1 && !left_z[w]) {
          left_z[w] = true;
          queue.push(w);
        }
      }
    }
  }

  WidthResult result;
  result.width = n - matching;
  for (int i = 0; i < n; ++i)
    if (left_z[i] && !right_z[i]) result.antichain.push_back(sets[i]);

  if (static_cast<int>(result.antichain.size()) != result.width)
    fail(Errc::internal, "antichain extraction does not match the width");
  for (size_t i = 0; i < result.antichain.size(); ++i)
    for (size_t j = i + 1; j < result.antichain.size(); ++j) {
      Mask a = result.antichain[i], b = result.antichain[j];
      if ((a & ~b) == 0 || (b & ~a) == 0)
        fail(Errc::internal, "antichain witness contains comparable sets");
    }
  return result;
}

int cdim(const ConvexGeometry& geometry) {
  return poset_width(copoints(geometry).sets()).width;
}

namespace {

void validate_config(const RationalPointConfig& config) {
  if (config.dim < 1 || config.dim > kMaxConfigDim)
    fail(Errc::dimension_cap, "point configurations limited to dimension " +
                                  std::to_string(kMaxConfigDim));
  if (static_cast<int>(config.points.size()) > kMaxConfigPoints)
    fail(Errc::ground_too_large, "point configurations limited to " +
                                     std::to_string(kMaxConfigPoints) + " points");
  if (config.labels.size() != config.points.size())
    fail(Errc::invalid_argument, "labels and points differ in count");
  for (const auto& p : config.points)
    if (static_cast<int>(p.size()) != config.dim)
      fail(Errc::invalid_argument, "point coordinate count differs from dim");
  for (size_t i = 0; i < config.points.size(); ++i)
    for (size_t j = i + 1; j < config.points.size(); ++j)
      if (config.points[i] == config.points[j])
        fail(Errc::invalid_argument, "points must be pairwise distinct");
}

// Is p a convex combination of the points indexed by simplex? Exact solve
// for barycentric coordinates; rank-deficient (affinely dependent) simplices
// are skipped, smaller subsets cover them.
bool in_simplex(const RationalPointConfig& config, int p,
                const std::vector<int>& simplex) {
  const int d = config.dim;
  const int k = static_cast<int>(simplex.size());
  std::vector<std::vector<Rat>> a(d + 1, std::vector<Rat>(k));
  std::vector<Rat> rhs(d + 1);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < k; ++c) a[r][c] = config.points[simplex[c]][r];
    rhs[r] = config.points[p][r];
  }
  for (int c = 0; c < k; ++c) a[d][c] = 1;
  rhs[d] = 1;
  auto lambda = solve_exact(std::move(a), std::move(rhs));
  if (!lambda) return false;
  for (const Rat& l : *lambda)
    if (l < 0) return false;
  return true;
}

// For each point p, the inclusion-minimal subsets S (size <= d+1, p outside)
// with p in conv(S). Convexity of X then reads: no circuit of an outside
// point fits inside X.
std::vector<std::vector<Mask>> point_circuits(const RationalPointConfig& config) {
  const int n = static_cast<int>(config.points.size());
  const int d = config.dim;
  std::vector<std::vector<Mask>> circuits(n);

  auto consider = [&](Mask s_mask, const std::vector<int>& simplex) {
    for (int p = 0; p < n; ++p) {
      if (has_bit(s_mask, p)) continue;
      bool already = false;
      for (Mask c : circuits[p])
        if ((c & ~s_mask) == 0) {
          already = true;
          break;
        }
      if (already) continue;
      if (in_simplex(config, p, simplex)) circuits[p].push_back(s_mask);
    }
  };

  // ascending size keeps only minimal circuits
  std::vector<int> combo;
  for (int size = 1; size <= std::min(n, d + 1); ++size) {
    combo.assign(size, 0);
    for (int i = 0; i < size; ++i) combo[i] = i;
    while (true) {
      Mask m = 0;
      for (int idx : combo) m |= bit(idx);
      consider(m, combo);
      int i = size - 1;
      while (i >= 0 && combo[i] == n - size + i) --i;
      if (i < 0) break;
      ++combo[i];
      for (int j = i + 1; j < size; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  return circuits;
}

}  // namespace

ConvexGeometry geometry_from_points(const RationalPointConfig& config) {
  validate_config(config);
  const int n = static_cast<int>(config.points.size());
  auto circuits = point_circuits(config);

  std::vector<Mask> members;
  const std::uint64_t count = Mask{1} << n;
  for (std::uint64_t x = 0; x < count; ++x) {
    Mask X = static_cast<Mask>(x);
    bool convex = true;
    for (int p = 0; p < n && convex; ++p) {
      if (has_bit(X, p)) continue;
      for (Mask c : circuits[p])
        if ((c & ~X) == 0) {
          convex = false;
          break;
        }
    }
    if (convex) members.push_back(X);
  }
  return ConvexGeometry::from_family(
      SetFamily(GroundSet(config.labels), std::move(members)));
}

RationalPointConfig crosspolytope_points(int n) {
  RationalPointConfig config;
  config.dim = n;
  config.labels.push_back("0");
  config.points.push_back(std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i) {
    for (int sign : {+1, -1}) {
      std::vector<Rat> p(n, Rat(0));
      p[i] = sign;
      config.points.push_back(std::move(p));
      config.labels.push_back((sign > 0 ? "+e" : "-e") + std::to_string(i + 1));
    }
  }
  return config;
}

ConvexGeometry crosspolytope_geometry(int n) {
  if (n < 1 || n > 4)
    fail(Errc::dimension_cap, "crosspolytope construction limited to 1 <= n <= 4");
  return geometry_from_points(crosspolytope_points(n));
}

bool verify_crosspolytope_copoints(int n) {
  if (n < 1 || n > 4)
    fail(Errc::dimension_cap, "crosspolytope construction limited to 1 <= n <= 4");
  auto geometry = crosspolytope_geometry(n);
  auto poset = copoints(geometry);
  // element order per crosspolytope_points: center at 0, +e_i at 2i+1,
  // -e_i at 2i+2
  std::vector<Mask> zero_copoints;
  for (const auto& c : poset.copoints) {
    if (c.attached == 0) {
      zero_copoints.push_back(c.set);
    } else {
      Mask complement = geometry.ground().full() & ~bit(c.attached);
      if (c.set != complement) return false;
    }
  }
  std::vector<Mask> expected;
  for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << n); ++signs) {
    Mask m = 0;
    for (int i = 0; i < n; ++i)
      m |= has_bit(signs, i) ? bit(2 * i + 1) : bit(2 * i + 2);
    expected.push_back(m);
  }
  std::sort(expected.begin(), expected.end(), canonical_mask_less);
  std::sort(zero_copoints.begin(), zero_copoints.end(), canonical_mask_less);
  return zero_copoints == expected;
}

}  // namespace convgeo
