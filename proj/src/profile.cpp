#include "rtlab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rtlab/errors.hpp"

namespace rtlab {

Profile::Profile(std::vector<int> cells_per_part) : parts_(std::move(cells_per_part)) {
  if (parts_.empty()) throw InputError("profile must have at least one part");
  for (int s : parts_) {
    if (s < 1) throw InputError("every part of a profile needs at least one cell");
  }
  std::sort(parts_.rbegin(), parts_.rend());
  cells_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

std::string Profile::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts_[i]);
  }
  return s + ")";
}

SizeAssignment SizeAssignment::from_rationals(std::vector<Rational> values) {
  SizeAssignment a;
  a.x.reserve(values.size());
  for (const auto& v : values) a.x.push_back(to_long_double(v));
  a.exact = std::move(values);
  return a;
}

SizeAssignment SizeAssignment::from_reals(std::vector<long double> values) {
  SizeAssignment a;
  a.x = std::move(values);
  return a;
}

SizeAssignment SizeAssignment::uniform(int parts) {
  return from_rationals(std::vector<Rational>(parts, Rational(1, parts)));
}

void SizeAssignment::validate(int expected_parts) const {
  if (size() != expected_parts) {
    throw InputError("assignment has " + std::to_string(size()) + " entries but the profile has " +
                     std::to_string(expected_parts) + " parts");
  }
  if (exact) {
    Rational sum = 0;
    for (const auto& v : *exact) {
      if (v < 0) throw InputError("assignment entries must be nonnegative");
      sum += v;
    }
    if (sum != 1) throw InputError("assignment must sum to 1 (got " + rational_string(sum) + ")");
    return;
  }
  long double sum = 0;
  for (auto v : x) {
    if (!(v >= 0)) throw InputError("assignment entries must be nonnegative");
    sum += v;
  }
  if (std::fabs(sum - 1.0L) > 1e-12L) throw InputError("assignment must sum to 1 within 1e-12");
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

namespace {

template <class Scalar>
Scalar from_big(const BigInt& v);
template <>
long double from_big<long double>(const BigInt& v) { return v.convert_to<long double>(); }
template <>
Rational from_big<Rational>(const BigInt& v) { return Rational(v); }

template <class Scalar>
Scalar half_power(int k);
template <>
long double half_power<long double>(int k) { return std::ldexp(1.0L, -k); }
template <>
Rational half_power<Rational>(int k) { return Rational(BigInt(1), BigInt(1) << k); }

/// Per-part generating polynomial: coefficient l is C(s,l) (x/s)^l (1/2)^C(l,2).
template <class Scalar>
std::vector<Scalar> part_poly(int s, const Scalar& x, int q, bool derivative) {
  std::vector<Scalar> c(q + 1, Scalar(0));
  const Scalar cell = x / Scalar(s);
  Scalar power = Scalar(1);  // cell^(l-1) when derivative, else cell^l
  for (int l = 0; l <= std::min(s, q); ++l) {
    if (derivative) {
      if (l >= 1) {
        c[l] = from_big<Scalar>(binomial(s, l)) * Scalar(l) / Scalar(s) * power * half_power<Scalar>(l * (l - 1) / 2);
        power *= cell;
      }
    } else {
      c[l] = from_big<Scalar>(binomial(s, l)) * power * half_power<Scalar>(l * (l - 1) / 2);
      power *= cell;
    }
  }
  return c;
}

template <class Scalar>
std::vector<Scalar> multiply(const std::vector<Scalar>& a, const std::vector<Scalar>& b, int q) {
  std::vector<Scalar> c(q + 1, Scalar(0));
  for (int i = 0; i <= q; ++i) {
    if (a[i] == Scalar(0)) continue;
    for (int j = 0; i + j <= q; ++j) {
      if (b[j] != Scalar(0)) c[i + j] += a[i] * b[j];
    }
  }
  return c;
}

template <class Scalar>
void check_dims(const Profile& profile, std::span<const Scalar> x, int q) {
  if (static_cast<int>(x.size()) != profile.parts()) {
    throw InputError("assignment dimension " + std::to_string(x.size()) + " does not match profile " + profile.to_string());
  }
  if (q < 1) throw InputError("q must be >= 1");
}

}  // namespace

template <class Scalar>
Scalar density_polynomial(const Profile& profile, std::span<const Scalar> x, int q) {
  check_dims(profile, x, q);
  if (profile.cells() < q) return Scalar(0);
  std::vector<Scalar> acc(q + 1, Scalar(0));
  acc[0] = Scalar(1);
  for (int i = 0; i < profile.parts(); ++i) acc = multiply(acc, part_poly(profile[i], x[i], q, false), q);
  return acc[q];
}

template <class Scalar>
std::vector<Scalar> density_gradient(const Profile& profile, std::span<const Scalar> x, int q) {
  check_dims(profile, x, q);
  const int t = profile.parts();
  std::vector<Scalar> grad(t, Scalar(0));
  if (profile.cells() < q) return grad;
  std::vector<std::vector<Scalar>> polys;
  for (int i = 0; i < t; ++i) polys.push_back(part_poly(profile[i], x[i], q, false));
  std::vector<Scalar> unit(q + 1, Scalar(0));
  unit[0] = Scalar(1);
  std::vector<std::vector<Scalar>> prefix(t + 1, unit), suffix(t + 1, unit);
  for (int i = 0; i < t; ++i) prefix[i + 1] = multiply(prefix[i], polys[i], q);
  for (int i = t - 1; i >= 0; --i) suffix[i] = multiply(suffix[i + 1], polys[i], q);
  for (int i = 0; i < t; ++i) {
    const auto others = multiply(prefix[i], suffix[i + 1], q);
    grad[i] = multiply(others, part_poly(profile[i], x[i], q, true), q)[q];
  }
  return grad;
}

template long double density_polynomial<long double>(const Profile&, std::span<const long double>, int);
template Rational density_polynomial<Rational>(const Profile&, std::span<const Rational>, int);
template std::vector<long double> density_gradient<long double>(const Profile&, std::span<const long double>, int);
template std::vector<Rational> density_gradient<Rational>(const Profile&, std::span<const Rational>, int);

DensityValue density_at(const Profile& profile, const SizeAssignment& a, int q) {
  a.validate(profile.parts());
  DensityValue d;
  if (a.exact) {
    d.exact = density_polynomial<Rational>(profile, *a.exact, q);
    d.value = to_long_double(*d.exact);
  } else {
    d.value = density_polynomial<long double>(profile, a.x, q);
  }
  return d;
}

ProfileGroups group_profile(const Profile& profile) {
  ProfileGroups g;
  for (int s : profile.sizes()) {
    if (!g.cells.empty() && g.cells.back() == s) {
      ++g.multiplicity.back();
    } else {
      g.cells.push_back(s);
      g.multiplicity.push_back(1);
    }
  }
  return g;
}

template <class Scalar>
std::vector<Scalar> ProfileGroups::expand(std::span<const Scalar> y) const {
  std::vector<Scalar> x;
  for (int g = 0; g < dimension(); ++g) {
    for (int k = 0; k < multiplicity[g]; ++k) x.push_back(y[g] / Scalar(multiplicity[g]));
  }
  return x;
}
template std::vector<long double> ProfileGroups::expand<long double>(std::span<const long double>) const;
template std::vector<Rational> ProfileGroups::expand<Rational>(std::span<const Rational>) const;

CellLayout realize_layout(const Profile& profile, const SizeAssignment& a, int n) {
  a.validate(profile.parts());
  if (n < profile.cells()) {
    throw InputError("realize: n = " + std::to_string(n) + " is smaller than the " + std::to_string(profile.cells()) +
                     " cells of " + profile.to_string());
  }
  if (!a.exact) throw InputError("realize: the assignment must be rational");
  const int t = profile.parts();
  std::vector<int> sizes(t);
  std::vector<std::pair<Rational, int>> remainders;
  int assigned = 0;
  for (int i = 0; i < t; ++i) {
    const Rational target = (*a.exact)[i] * n;
    const BigInt fl = boost::multiprecision::numerator(target) / boost::multiprecision::denominator(target);
    sizes[i] = fl.convert_to<int>();
    assigned += sizes[i];
    remainders.emplace_back(target - Rational(fl), i);
  }
  // Largest remainder first; ties go to the earlier part.
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& l, const auto& r) { return l.first > r.first; });
  for (int k = 0; assigned < n; ++k, ++assigned) ++sizes[remainders[k % t].second];

  CellLayout layout(t);
  for (int i = 0; i < t; ++i) {
    const int s = profile[i];
    for (int c = 0; c < s; ++c) layout[i].push_back(sizes[i] / s + (c < sizes[i] % s ? 1 : 0));
  }
  for (const auto& part : layout) {
    for (int c : part) {
      if (c == 0) throw InputError("realize: assignment leaves an empty cell at n = " + std::to_string(n));
    }
  }
  return layout;
}

WeightedGraph realize_layout_graph(const CellLayout& layout) {
  int n = 0;
  for (const auto& part : layout) n = std::accumulate(part.begin(), part.end(), n);
  WeightedGraph g(n);
  std::vector<int> part_of, cell_of;
  int cell_id = 0;
  for (std::size_t p = 0; p < layout.size(); ++p) {
    for (int size : layout[p]) {
      for (int k = 0; k < size; ++k) {
        part_of.push_back(static_cast<int>(p));
        cell_of.push_back(cell_id);
      }
      ++cell_id;
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (cell_of[u] == cell_of[v]) continue;
      g.set_weight(u, v, part_of[u] == part_of[v] ? Weight::Half : Weight::One);
    }
  }
  return g;
}

WeightedGraph realize(const Profile& profile, const SizeAssignment& a, int n) {
  return realize_layout_graph(realize_layout(profile, a, n));
}

bool kbound_check(int k, int q, int s) {
  if (s <= q) throw InputError("kbound_check requires s > q");
  if (k < 3 || k > q) throw InputError("kbound_check requires q >= k >= 3");
  const Rational ratio(k, k - 1);
  Rational lhs = Rational(BigInt(1) << (k - 2));
  for (int i = 0; i < k - 1; ++i) lhs *= ratio;
  lhs -= k;
  return lhs <= Rational(q - k + 1, s - q);
}

namespace {

void partitions_rec(int remaining, int slots, int max_part, std::vector<int>& cur, std::vector<Profile>& out) {
  if (slots == 0) {
    if (remaining == 0) out.emplace_back(cur);
    return;
  }
  // Each remaining slot needs at least 1 and at most max_part.
  const int hi = std::min(max_part, remaining - (slots - 1));
  const int lo = (remaining + slots - 1) / slots;
  for (int v = hi; v >= lo; --v) {
    cur.push_back(v);
    partitions_rec(remaining - v, slots - 1, v, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Profile> partitions(int s, int t) {
  std::vector<Profile> out;
  if (t < 1 || s < t) return out;
  std::vector<int> cur;
  partitions_rec(s, t, s, cur, out);
  return out;
}

std::vector<Profile> candidate_profiles(int q, int p, const PruningFlags& flags) {
  std::vector<Profile> out;
  if (p < q + 2) return out;
  for (int t = 1; 2 * t <= p - 1; ++t) {
    for (int s = std::max(q, t); s + t <= p - 1; ++s) {
      if (flags.part_plus_cell && s + t != p - 1) continue;
      for (auto& prof : partitions(s, t)) {
        const int k = prof[0];
        if (flags.cell_lemma_one && k > q) continue;
        if (flags.cell_lemma_two && s > q && k >= 3 && k <= q && !kbound_check(k, q, s)) continue;
        if (flags.no_three_one && q == 5) {
          const auto& v = prof.sizes();
          if (std::find(v.begin(), v.end(), 3) != v.end() && std::find(v.begin(), v.end(), 1) != v.end()) continue;
        }
        out.push_back(std::move(prof));
      }
    }
  }
  return out;
}

RepartitionDelta repartition_delta(const Rational& x) {
  if (x <= 0) throw InputError("repartition_delta: x must be positive");
  RepartitionDelta d;
  d.edges = 3 * x * x;
  d.triangles = 10 * x * x * x;
  d.k4 = Rational(-81, 4) * x * x * x * x;
  if (boost::multiprecision::denominator(x) == 1 && x <= 12) {
    const int m = boost::multiprecision::numerator(x).convert_to<int>();
    const auto before = realize_layout_graph({{3 * m, 3 * m}, {3 * m, 3 * m}});
    const auto after = realize_layout_graph({{4 * m}, {4 * m}, {4 * m}});
    const auto nb = count_cliques_upto(before, 4);
    const auto na = count_cliques_upto(after, 4);
    d.realization_checked = true;
    d.realized_edges = na[2] - nb[2];
    d.realized_triangles = na[3] - nb[3];
    d.realized_k4 = na[4] - nb[4];
    d.agrees = d.realized_edges.to_rational() == d.edges && d.realized_triangles.to_rational() == d.triangles &&
               d.realized_k4.to_rational() == d.k4;
  }
  return d;
}

}  // namespace rtlab
