#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Core>

#include "rtlab/errors.hpp"
#include "rtlab/profile.hpp"

namespace rtlab {

namespace {

using Vec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

/// Density and gradient in group coordinates (group g holds total mass y_g).
class GroupObjective {
public:
  GroupObjective(const Profile& profile, int q) : profile_(profile), groups_(group_profile(profile)), q_(q) {}

  int dimension() const { return groups_.dimension(); }
  const ProfileGroups& groups() const { return groups_; }

  long double value(const Vec& y) const {
    const auto x = expand(y);
    return density_polynomial<long double>(profile_, x, q_);
  }

  Vec gradient(const Vec& y) const {
    const auto x = expand(y);
    const auto gx = density_gradient<long double>(profile_, x, q_);
    Vec g = Vec::Zero(dimension());
    int i = 0;
    for (int k = 0; k < dimension(); ++k) {
      for (int m = 0; m < groups_.multiplicity[k]; ++m) g[k] += gx[i++] / groups_.multiplicity[k];
    }
    return g;
  }

  Rational exact_value(const std::vector<Rational>& y) const {
    return density_polynomial<Rational>(profile_, groups_.expand<Rational>(y), q_);
  }

  std::vector<Rational> exact_gradient(const std::vector<Rational>& y) const {
    const auto gx = density_gradient<Rational>(profile_, groups_.expand<Rational>(y), q_);
    std::vector<Rational> g(dimension(), Rational(0));
    int i = 0;
    for (int k = 0; k < dimension(); ++k) {
      for (int m = 0; m < groups_.multiplicity[k]; ++m) g[k] += gx[i++] / groups_.multiplicity[k];
    }
    return g;
  }

private:
  std::vector<long double> expand(const Vec& y) const {
    std::vector<long double> yy(y.data(), y.data() + y.size());
    return groups_.expand<long double>(yy);
  }

  const Profile& profile_;
  ProfileGroups groups_;
  int q_;
};

/// Euclidean projection onto the probability simplex.
Vec project_simplex(const Vec& v) {
  Vec u = v;
  std::sort(u.data(), u.data() + u.size(), std::greater<long double>());
  long double cumulative = 0, theta = 0;
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const long double t = (cumulative - 1) / static_cast<long double>(j + 1);
    if (u[j] - t > 0) theta = t;
  }
  return (v.array() - theta).max(0.0L).matrix();
}

/// Projected ascent with normalized steps, then pairwise mass-transfer pattern search.
Vec local_ascent(const GroupObjective& f, Vec y, long double refine_step) {
  long double best = f.value(y);
  long double step = 0.1L;
  for (int iter = 0; iter < 4000 && step > 1e-12L; ++iter) {
    Vec g = f.gradient(y);
    g.array() -= g.mean();
    const long double norm = g.norm();
    if (norm == 0) break;
    const Vec trial = project_simplex(y + (step / norm) * g);
    const long double v = f.value(trial);
    if (v > best) {
      y = trial;
      best = v;
      step *= 1.2L;
    } else {
      step *= 0.5L;
    }
  }
  const int d = static_cast<int>(y.size());
  for (long double delta = 1e-2L; delta >= refine_step; delta *= 0.5L) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          if (i == j || y[j] <= 0) continue;
          Vec trial = y;
          const long double amount = std::min(delta, y[j]);
          trial[i] += amount;
          trial[j] -= amount;
          const long double v = f.value(trial);
          if (v > best) {
            y = trial;
            best = v;
            moved = true;
          }
        }
      }
    }
  }
  return y;
}

Vec maximize_line(const GroupObjective& f) {
  auto at = [](long double u) {
    Vec y(2);
    y << u, 1 - u;
    return y;
  };
  auto slope = [&](long double u) {
    const Vec g = f.gradient(at(u));
    return g[0] - g[1];
  };
  constexpr int grid = 4000;
  int best_i = 0;
  long double best = -1;
  for (int i = 0; i <= grid; ++i) {
    const long double v = f.value(at(static_cast<long double>(i) / grid));
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  long double lo = std::max(0, best_i - 1) / static_cast<long double>(grid);
  long double hi = std::min(grid, best_i + 1) / static_cast<long double>(grid);
  if (slope(lo) <= 0) return at(lo);
  if (slope(hi) >= 0) return at(hi);
  while (hi - lo > 1e-15L) {
    const long double mid = (lo + hi) / 2;
    (slope(mid) > 0 ? lo : hi) = mid;
  }
  return at((lo + hi) / 2);
}

/// Best rational approximation with denominator at most `cap`, by continued fractions.
Rational rational_near(long double value, int cap) {
  BigInt h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  long double r = value;
  for (int iter = 0; iter < 64; ++iter) {
    const long double a = std::floor(r);
    const long long ai = static_cast<long long>(a);
    const BigInt h2 = ai * h1 + h0;
    const BigInt k2 = ai * k1 + k0;
    if (k2 > cap) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const long double frac = r - a;
    if (frac < 1e-13L) break;
    r = 1 / frac;
  }
  return Rational(h1, k1);
}

/// First-order optimality on the simplex: equal partial derivatives on the support, no larger elsewhere.
bool kkt_holds(const std::vector<Rational>& y, const std::vector<Rational>& g) {
  std::optional<Rational> lambda;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] > 0) {
      if (lambda && *lambda != g[i]) return false;
      lambda = g[i];
    }
  }
  if (!lambda) return false;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0 && g[i] > *lambda) return false;
  }
  return true;
}

}  // namespace

OptimizeResult optimize_sizes(const Profile& profile, int q, const OptimizeOptions& opts) {
  if (q < 1) throw InputError("q must be >= 1");
  OptimizeResult result;
  const GroupObjective f(profile, q);
  const int d = f.dimension();
  result.effective_dimension = d;
  if (profile.cells() < q) {
    result.assignment = SizeAssignment::uniform(profile.parts());
    result.value.exact = Rational(0);
    return result;
  }
  if (d == 1) {
    result.assignment = SizeAssignment::uniform(profile.parts());
    result.value = density_at(profile, result.assignment, q);
    result.certified_rational = true;
    return result;
  }

  Vec best_y;
  long double best = -1;
  if (d == 2) {
    best_y = maximize_line(f);
    best = f.value(best_y);
  } else {
    std::vector<Vec> starts;
    starts.push_back(Vec::Constant(d, 1.0L / d));
    for (int i = 0; i < d; ++i) {
      Vec v = Vec::Constant(d, 0.25L / d);
      v[i] += 0.75L;
      starts.push_back(v);
    }
    std::mt19937_64 rng(opts.seed);
    std::exponential_distribution<double> expo(1.0);
    while (static_cast<int>(starts.size()) < std::max(opts.starts, 16)) {
      Vec v(d);
      for (int i = 0; i < d; ++i) v[i] = expo(rng);
      starts.push_back(v / v.sum());
    }
    for (const auto& s : starts) {
      const Vec y = local_ascent(f, s, opts.refine_step);
      const long double v = f.value(y);
      if (v > best) {
        best = v;
        best_y = y;
      }
    }
  }

  // Rational recovery: round every coordinate but the largest, which absorbs the remainder.
  Eigen::Index largest = 0;
  best_y.maxCoeff(&largest);
  std::vector<Rational> y_exact(d);
  Rational rest = 1;
  for (int i = 0; i < d; ++i) {
    if (i == largest) continue;
    y_exact[i] = best_y[i] < 1e-9L ? Rational(0) : rational_near(best_y[i], opts.rational_denominator_cap);
    rest -= y_exact[i];
  }
  y_exact[largest] = rest;
  const bool feasible = rest >= 0;
  if (feasible && kkt_holds(y_exact, f.exact_gradient(y_exact))) {
    const Rational exact = f.exact_value(y_exact);
    if (to_long_double(exact) >= best - 1e-15L) {
      result.assignment = SizeAssignment::from_rationals(f.groups().expand<Rational>(y_exact));
      result.value.exact = exact;
      result.value.value = to_long_double(exact);
      result.certified_rational = true;
      return result;
    }
  }
  std::vector<long double> y(best_y.data(), best_y.data() + d);
  result.assignment = SizeAssignment::from_reals(f.groups().expand<long double>(y));
  result.value.value = best;
  return result;
}

}  // namespace rtlab
