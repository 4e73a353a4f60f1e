// SPDX-License-Identifier: Apache-2.0
#include "convgeo/rational.hpp"

#include <algorithm>
#include <cmath>

namespace convgeo {

Rat rat_from_string(const std::string& text) {
  try {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
      // allow decimal literals as a convenience
      if (text.find('.') != std::string::npos ||
          text.find('e') != std::string::npos ||
          text.find('E') != std::string::npos)
        return rat_from_double(std::stod(text));
      return Rat(BigInt(text));
    }
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) fail(Errc::parse, "rational with zero denominator: " + text);
    return Rat(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(Errc::parse, "cannot parse rational: " + text);
  }
}

std::string rat_to_string(const Rat& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

Rat rat_from_double(double value) {
  if (!std::isfinite(value)) fail(Errc::parse, "non-finite value");
  if (value == 0.0) return Rat(0);
  int exp = 0;
  double mant = std::frexp(value, &exp);  // value = mant * 2^exp, |mant| in [0.5,1)
  // 53 bits of mantissa
  long long scaled = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  Rat r(scaled);
  if (exp > 0)
    r *= Rat(BigInt(1) << exp);
  else if (exp < 0)
    r /= Rat(BigInt(1) << (-exp));
  return r;
}

double rat_to_double(const Rat& value) { return value.convert_to<double>(); }

int orient2d(const RatVec2& a, const RatVec2& b, const RatVec2& c) {
  Rat v = cross(b - a, c - a);
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}

std::vector<RatVec2> convex_hull(std::vector<RatVec2> points) {
  std::sort(points.begin(), points.end(), [](const RatVec2& a, const RatVec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const size_t n = points.size();
  if (n <= 2) return points;
  std::vector<RatVec2> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && orient2d(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  for (size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper chain
    while (k >= t && orient2d(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

namespace {

bool on_segment(const RatVec2& p, const RatVec2& a, const RatVec2& b) {
  if (orient2d(a, b, p) != 0) return false;
  return dot(p - a, p - b) <= 0;
}

}  // namespace

bool point_in_ccw_hull(const RatVec2& p, const std::vector<RatVec2>& hull) {
  const size_t n = hull.size();
  if (n == 0) return false;
  if (n == 1) return p == hull[0];
  if (n == 2) return on_segment(p, hull[0], hull[1]);
  for (size_t i = 0; i < n; ++i) {
    if (orient2d(hull[i], hull[(i + 1) % n], p) < 0) return false;
  }
  return true;
}

bool point_in_hull(const RatVec2& p, const std::vector<RatVec2>& points) {
  return point_in_ccw_hull(p, convex_hull(points));
}

std::optional<std::vector<Rat>> solve_exact(std::vector<std::vector<Rat>> a,
                                            std::vector<Rat> rhs) {
  const size_t rows = a.size();
  const size_t cols = rows == 0 ? 0 : a[0].size();
  if (rhs.size() != rows) fail(Errc::internal, "solve_exact: shape mismatch");

  size_t rank = 0;
  std::vector<size_t> pivot_col_of_row;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) return std::nullopt;  // rank-deficient in this column
    std::swap(a[pivot], a[rank]);
    std::swap(rhs[pivot], rhs[rank]);
    Rat inv = a[rank][col];
    for (size_t c = col; c < cols; ++c) a[rank][c] /= inv;
    rhs[rank] /= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      Rat factor = a[r][col];
      for (size_t c = col; c < cols; ++c) a[r][c] -= factor * a[rank][c];
      rhs[r] -= factor * rhs[rank];
    }
    pivot_col_of_row.push_back(col);
    ++rank;
  }
  if (rank < cols) return std::nullopt;
  // consistency of the remaining rows
  for (size_t r = rank; r < rows; ++r)
    if (rhs[r] != 0) return std::nullopt;
  std::vector<Rat> solution(cols);
  for (size_t r = 0; r < rank; ++r) solution[pivot_col_of_row[r]] = rhs[r];
  return solution;
}

Rat rat_approx(double value, long max_den) {
  if (!std::isfinite(value)) fail(Errc::parse, "non-finite value");
  bool neg = value < 0;
  double x = std::fabs(value);
  // continued-fraction convergents p/q with q <= max_den
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int iter = 0; iter < 64; ++iter) {
    double ai = std::floor(frac);
    if (ai > 9e17) break;
    long long a = static_cast<long long>(ai);
    long long p2 = a * p1 + p0;
    long long q2 = a * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double rem = frac - ai;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) return Rat(0);
  Rat r(p1, q1);
  return neg ? Rat(-r) : r;
}

}  // namespace convgeo
