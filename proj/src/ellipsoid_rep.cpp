// SPDX-License-Identifier: Apache-2.0
#include "convgeo/ellipsoid_rep.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace convgeo {

FSequence FSequence::compute(int d, double s, int count) {
  if (!(s > 1)) fail(Errc::invalid_scale, "the scale s must exceed 1");
  if (d < 1 || count < 1) fail(Errc::invalid_argument, "need d >= 1 and count >= 1");
  FSequence seq;
  seq.d = d;
  seq.s = s;
  seq.values.assign(count + 1, 0);
  seq.excess.assign(count + 1, 0);
  seq.excess[1] = static_cast<long double>(s) * s - 1;
  for (int i = 2; i <= count; ++i) seq.excess[i] = seq.excess[i - 1] / d;
  for (int i = 1; i <= count; ++i) seq.values[i] = sqrtl(1 + seq.excess[i]);
  for (int i = 1; i <= count; ++i) {
    if (!(seq.excess[i] > 0))
      fail(Errc::internal, "f-sequence left the interval (1, s]");
    if (i >= 2) {
      if (d >= 2 && !(seq.excess[i] < seq.excess[i - 1]))
        fail(Errc::internal, "f-sequence is not strictly decreasing");
      if (fabsl(d * seq.excess[i] - seq.excess[i - 1]) >= 1e-12)
        fail(Errc::internal, "f-sequence identity drifted beyond 1e-12");
      // the stored values satisfy the original square-root recurrence
      long double direct = sqrtl((seq.values[i - 1] * seq.values[i - 1] + d - 1) / d);
      if (fabsl(direct - seq.values[i]) >= 1e-15 * direct)
        fail(Errc::internal, "f-sequence recurrence drifted");
    }
  }
  return seq;
}

double ellipsoid_support(const AxisEllipsoid& e, std::span<const double> x) {
  if (static_cast<int>(x.size()) != e.dim())
    fail(Errc::invalid_argument, "direction dimension mismatch");
  double nrm = 0;
  for (double xi : x) nrm += xi * xi;
  if (std::fabs(nrm - 1.0) > 1e-12)
    fail(Errc::invalid_argument, "direction must be a unit vector");
  double acc = 0;
  for (int i = 0; i < e.dim(); ++i) acc += e.semiaxes[i] * e.semiaxes[i] * x[i] * x[i];
  return std::sqrt(acc);
}

EllipsoidRepresentation represent_ellipsoids(const OrderingFamily& orderings, double s) {
  if (!(s > 1)) fail(Errc::invalid_scale, "the scale s must exceed 1");
  EllipsoidRepresentation rep;
  const int n = orderings.n();
  rep.dprime = std::max({orderings.count(), n, 1});
  rep.s = s;
  std::vector<std::vector<int>> padded;
  for (int i = 0; i < rep.dprime; ++i)
    padded.push_back(orderings.orders()[i % orderings.count()]);
  rep.orderings = OrderingFamily(orderings.ground(), std::move(padded));
  rep.f = FSequence::compute(rep.dprime, s, std::max(rep.dprime, 1));

  for (int g = 0; g < n; ++g) {
    AxisEllipsoid e;
    for (int i = 0; i < rep.dprime; ++i) {
      int index = rep.dprime + 1 - rep.orderings.place(i, g);
      e.semiaxes.push_back(static_cast<double>(rep.f.f(index)));
    }
    rep.ellipsoids.push_back(std::move(e));
  }
  return rep;
}

namespace {

// splitmix64 + Box-Muller: identical streams on every platform
class GaussianSource {
public:
  explicit GaussianSource(std::uint64_t seed) : state_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01(), u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

private:
  double uniform01() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    // (0,1]: never zero, so the log stays finite
    return (static_cast<double>(z >> 11) + 1.0) / 9007199254740993.0;
  }

  std::uint64_t state_;
  double spare_ = 0;
  bool have_spare_ = false;
};

std::vector<std::vector<double>> unit_sphere_samples(int dim, long count,
                                                     std::uint64_t seed) {
  GaussianSource gauss(seed);
  std::vector<std::vector<double>> out;
  out.reserve(count);
  while (static_cast<long>(out.size()) < count) {
    std::vector<double> v(dim);
    double nrm = 0;
    for (double& c : v) {
      c = gauss.next();
      nrm += c * c;
    }
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12) continue;
    for (double& c : v) c /= nrm;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

EllipsoidVerifyReport verify_isomorphism_ellipsoid(const ConvexGeometry& geometry,
                                                   const EllipsoidRepresentation& rep,
                                                   long samples, std::uint64_t seed,
                                                   double tau) {
  EllipsoidVerifyReport report;
  if (geometry.ground() != rep.orderings.ground()) {
    report.note = "representation was built over a different ground set";
    return report;
  }
  const int n = geometry.n();
  const int d = rep.dprime;
  const auto& of = rep.orderings;
  auto fval = [&](int place) { return rep.f.f(d + 1 - place); };

  const auto directions = unit_sphere_samples(d, samples, seed);
  std::vector<double> dir(d);

  const std::uint64_t count = Mask{1} << n;
  for (std::uint64_t xm = 0; xm < count; ++xm) {
    Mask X = static_cast<Mask>(xm);
    ++report.subsets_checked;
    bool convex = geometry.family().contains(X);
    if (convex) {
      // every outside g must dominate X along some axis: the halfspace
      // {x_i < f(d+1-place_i(g))} then separates phi(g) from the hull
      for (int g = 0; g < n; ++g) {
        if (has_bit(X, g)) continue;
        if (X == 0) continue;  // nothing to separate from
        bool separated = false;
        for (int i = 0; i < d && !separated; ++i) {
          long double fg = fval(of.place(i, g));
          bool dominates = true;
          for (int h : mask_to_indices(X))
            if (!(fval(of.place(i, h)) < fg)) {
              dominates = false;
              break;
            }
          separated = dominates;
        }
        ++report.separations_checked;
        if (!separated) {
          report.witness = X;
          report.note = "convex subset admits no axis separation for element " +
                        geometry.ground().label(g);
          return report;
        }
      }
    } else {
      // find g outside X dominated in every ordering by someone in X
      int witness_g = -1;
      std::vector<int> dominators(d, -1);
      for (int g = 0; g < n && witness_g < 0; ++g) {
        if (has_bit(X, g)) continue;
        bool all_axes = true;
        for (int i = 0; i < d; ++i) {
          int best = -1;
          for (int h : mask_to_indices(X))
            if (of.place(i, h) > of.place(i, g) &&
                (best < 0 || of.place(i, h) > of.place(i, best)))
              best = h;
          if (best < 0) {
            all_axes = false;
            break;
          }
          dominators[i] = best;
        }
        if (all_axes) witness_g = g;
      }
      if (witness_g < 0) {
        report.witness = X;
        report.note = "non-convex subset has no dominated outside element";
        return report;
      }

      // analytic route: the sequence identity converts the one-axis blow-up
      // E_i into one that fits inside phi(h_i)
      for (int i = 0; i < d; ++i) {
        int jg = of.place(i, witness_g);
        long double lhs = d * rep.f.g(d + 1 - jg);  // d' * (f(d'+1-j)^2 - 1)
        long double rhs = rep.f.g(d - jg);          // f(d'-j)^2 - 1
        if (fabsl(lhs - rhs) >= 1e-12) {
          report.witness = X;
          report.note = "sequence identity failed on the witness element";
          return report;
        }
        if (!(rep.f.g(d - jg) <= rep.f.g(d + 1 - of.place(i, dominators[i])))) {
          report.witness = X;
          report.note = "blown-up axis ellipsoid does not fit its dominator";
          return report;
        }
        ++report.containments_checked;
      }

      // sampled oracle for phi(g) inside conv of the dominators
      const auto& eg = rep.ellipsoids[witness_g];
      for (const auto& u : directions) {
        std::copy(u.begin(), u.end(), dir.begin());
        double hg = ellipsoid_support(eg, dir);
        double hmax = 0;
        for (int i = 0; i < d; ++i)
          hmax = std::max(hmax, ellipsoid_support(rep.ellipsoids[dominators[i]], dir));
        double margin = hg - hmax;
        report.worst_oracle_margin = std::max(report.worst_oracle_margin, margin);
        if (margin > tau) {
          std::string where;
          for (double c : u) where += (where.empty() ? "" : ",") + std::to_string(c);
          fail(Errc::oracle_violation,
               "support oracle exceeded tau at direction (" + where +
                   ") with margin " + std::to_string(margin));
        }
      }
    }
  }
  report.ok = true;
  return report;
}

double ball_closeness(const EllipsoidRepresentation& rep) {
  double worst = 0;
  for (const auto& e : rep.ellipsoids)
    for (double a : e.semiaxes) worst = std::max(worst, a - 1);
  return worst;
}

ClosureOperator ellipsoid_closure_operator(const EllipsoidRepresentation& rep,
                                           long samples, std::uint64_t seed,
                                           double tau) {
  const int d = rep.dprime;
  auto probes = std::make_shared<std::vector<std::vector<double>>>(
      unit_sphere_samples(d, samples, seed));
  for (int i = 0; i < d; ++i)
    for (double sign : {1.0, -1.0}) {
      std::vector<double> axis(d, 0.0);
      axis[i] = sign;
      probes->push_back(std::move(axis));
    }
  auto ellipsoids = std::make_shared<std::vector<AxisEllipsoid>>(rep.ellipsoids);
  return ClosureOperator{
      rep.orderings.ground(), [probes, ellipsoids, tau](Mask subset) -> Mask {
        if (subset == 0) return 0;
        Mask out = subset;
        for (int g = 0; g < static_cast<int>(ellipsoids->size()); ++g) {
          if (has_bit(subset, g)) continue;
          bool inside = true;
          for (const auto& x : *probes) {
            double hg = ellipsoid_support((*ellipsoids)[g], x);
            double hmax = 0;
            for (int h : mask_to_indices(subset))
              hmax = std::max(hmax, ellipsoid_support((*ellipsoids)[h], x));
            if (hg > hmax + tau) {
              inside = false;
              break;
            }
          }
          if (inside) out |= bit(g);
        }
        return out;
      }};
}

}  // namespace convgeo
