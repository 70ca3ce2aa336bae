#include <doctest.h>

#include <cmath>
#include <random>

#include "rtlab/errors.hpp"
#include "rtlab/profile.hpp"
#include "support.hpp"

using namespace rtlab;
using namespace testing_support;

namespace {

/// Sum over q-sets of distinct cells of the product of cell masses and pairwise weights.
Rational cell_oracle(const Profile& prof, const std::vector<Rational>& x, int q) {
  std::vector<Rational> mass;
  std::vector<int> part;
  for (int i = 0; i < prof.parts(); ++i) {
    for (int c = 0; c < prof[i]; ++c) {
      mass.push_back(x[i] / prof[i]);
      part.push_back(i);
    }
  }
  const int m = static_cast<int>(mass.size());
  Rational total = 0;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (std::popcount(mask) != q) continue;
    Rational term = 1;
    for (int a = 0; a < m; ++a) {
      if (!(mask >> a & 1)) continue;
      term *= mass[a];
      for (int b = a + 1; b < m; ++b) {
        if ((mask >> b & 1) && part[a] == part[b]) term /= 2;
      }
    }
    total += term;
  }
  return total;
}

std::vector<Rational> random_masses(int t, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(1, 9);
  std::vector<Rational> x;
  Rational sum = 0;
  for (int i = 0; i < t; ++i) {
    x.emplace_back(d(rng));
    sum += x.back();
  }
  for (auto& v : x) v /= sum;
  return x;
}

Profile random_profile(std::mt19937_64& rng, int max_parts = 4, int max_cells = 3) {
  std::uniform_int_distribution<int> t(1, max_parts), s(1, max_cells);
  std::vector<int> v(t(rng));
  for (auto& e : v) e = s(rng);
  return Profile(v);
}

}  // namespace

TEST_CASE("profile canonical order") {
  const Profile p({1, 2, 2});
  CHECK(p.sizes() == std::vector<int>{2, 2, 1});
  CHECK(p.cells() == 5);
  CHECK(p.to_string() == "(2,2,1)");
  CHECK_THROWS_AS(Profile(std::vector<int>{}), InputError);
  CHECK_THROWS_AS(Profile({2, 0}), InputError);
}

TEST_CASE("binomial") {
  CHECK(binomial(11, 10) == 11);
  CHECK(binomial(10, 5) == 252);
  CHECK(binomial(4, 5) == 0);
  CHECK(binomial(4, -1) == 0);
}

TEST_CASE("density polynomial matches the cell-subset oracle") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const Profile prof = random_profile(rng);
    const auto x = random_masses(prof.parts(), rng);
    for (int q = 1; q <= std::min(prof.cells(), 6); ++q) {
      const Rational expect = cell_oracle(prof, x, q);
      CHECK(density_polynomial<Rational>(prof, x, q) == expect);
      const auto v = density_at(prof, SizeAssignment::from_rationals(x), q);
      REQUIRE(v.exact);
      CHECK(*v.exact == expect);
      CHECK(v.value == doctest::Approx(static_cast<double>(to_long_double(expect))).epsilon(1e-12));
    }
    CHECK(density_polynomial<Rational>(prof, x, prof.cells() + 1) == 0);
  }
}

TEST_CASE("known profile densities") {
  CHECK(*density_at(Profile({1, 1}), SizeAssignment::from_rationals({Rational(1, 2), Rational(1, 2)}), 2).exact ==
        Rational(1, 4));
  CHECK(*density_at(Profile({2}), SizeAssignment::uniform(1), 2).exact == Rational(1, 8));
  CHECK(*density_at(Profile({2, 2, 2}), SizeAssignment::uniform(3), 5).exact == Rational(1, 5184));
}

TEST_CASE("gradient matches central differences") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const Profile prof = random_profile(rng);
    const auto xr = random_masses(prof.parts(), rng);
    std::vector<long double> x;
    for (const auto& v : xr) x.push_back(to_long_double(v));
    const int q = 1 + trial % std::min(prof.cells(), 5);
    const auto grad = density_gradient<long double>(prof, x, q);
    const auto exact_grad = density_gradient<Rational>(prof, xr, q);
    for (int i = 0; i < prof.parts(); ++i) {
      const long double h = 1e-6L;
      auto up = x, down = x;
      up[i] += h;
      down[i] -= h;
      const long double fd =
          (density_polynomial<long double>(prof, up, q) - density_polynomial<long double>(prof, down, q)) / (2 * h);
      CHECK(static_cast<double>(grad[i]) == doctest::Approx(static_cast<double>(fd)).epsilon(1e-6));
      CHECK(static_cast<double>(to_long_double(exact_grad[i])) == doctest::Approx(static_cast<double>(grad[i])));
    }
  }
}

TEST_CASE("groups share mass") {
  const auto g = group_profile(Profile({2, 2, 1, 1, 1}));
  CHECK(g.cells == std::vector<int>{2, 1});
  CHECK(g.multiplicity == std::vector<int>{2, 3});
  const std::vector<Rational> y{Rational(1, 2), Rational(1, 2)};
  const auto x = g.expand<Rational>(y);
  CHECK(x == std::vector<Rational>{Rational(1, 4), Rational(1, 4), Rational(1, 6), Rational(1, 6), Rational(1, 6)});
}

TEST_CASE("optimizer on small profiles") {
  {
    const auto r = optimize_sizes(Profile({2, 1}), 2);
    REQUIRE(r.value.exact);
    CHECK(*r.value.exact == Rational(2, 7));
    REQUIRE(r.assignment.exact);
    CHECK((*r.assignment.exact)[0] == Rational(4, 7));
    CHECK(r.certified_rational);
  }
  {
    const auto r = optimize_sizes(Profile({2, 1, 1, 1}), 5);
    REQUIRE(r.value.exact);
    CHECK(*r.value.exact == Rational(1, 6250));
  }
  {
    const auto r = optimize_sizes(Profile({1, 1, 1, 1, 1}), 5);
    REQUIRE(r.value.exact);
    CHECK(*r.value.exact == Rational(1, 3125));
    CHECK(r.effective_dimension == 1);
  }
  {
    const auto r = optimize_sizes(Profile({2, 2, 1, 1}), 5);
    CHECK(static_cast<double>(r.value.value) ==
          doctest::Approx((675 + 228 * std::sqrt(15.0)) / 4802000).epsilon(1e-10));
  }
  CHECK(*optimize_sizes(Profile({1, 1}), 3).value.exact == 0);
}

TEST_CASE("optimizer beats random simplex points") {
  std::mt19937_64 rng(33);
  std::gamma_distribution<double> expo(1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const Profile prof = random_profile(rng, 4, 3);
    const int q = std::min(prof.cells(), 2 + trial % 4);
    const auto best = optimize_sizes(prof, q);
    std::vector<long double> x(prof.parts());
    for (int k = 0; k < 200; ++k) {
      long double sum = 0;
      for (auto& v : x) sum += v = expo(rng);
      for (auto& v : x) v /= sum;
      CHECK(density_polynomial<long double>(prof, x, q) <= best.value.value * (1 + 1e-12L));
    }
  }
}

TEST_CASE("realizations count exactly") {
  const auto g22 = realize(Profile({2, 2}), SizeAssignment::uniform(2), 12);
  CHECK(count_cliques(g22, 2).to_string() == "45");
  CHECK(count_cliques(g22, 3).to_string() == "54");
  CHECK(count_cliques(g22, 4).to_string() == "81/4");
  const auto g111 = realize(Profile({1, 1, 1}), SizeAssignment::uniform(3), 12);
  CHECK(count_cliques(g111, 3).to_string() == "64");
  CHECK(count_cliques(g111, 2).to_string() == "48");
}

TEST_CASE("realized counts equal the cell formula with integer sizes") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 60; ++trial) {
    const Profile prof = random_profile(rng, 3, 3);
    std::vector<Rational> x;
    Rational sum = 0;
    for (int i = 0; i < prof.parts(); ++i) {
      x.emplace_back(prof[i] * (1 + trial % 3 + i % 2));
      sum += x.back();
    }
    for (auto& v : x) v /= sum;
    const int n = 40 + trial % 5;
    const auto a = SizeAssignment::from_rationals(x);
    const auto layout = realize_layout(prof, a, n);
    int total = 0;
    std::vector<Rational> part_mass;
    for (std::size_t i = 0; i < layout.size(); ++i) {
      int part_total = 0;
      const auto [lo, hi] = std::minmax_element(layout[i].begin(), layout[i].end());
      CHECK(*hi - *lo <= 1);
      CHECK(*lo >= 1);
      for (int c : layout[i]) part_total += c;
      total += part_total;
      part_mass.emplace_back(part_total);
    }
    CHECK(total == n);
    const auto g = realize_layout_graph(layout);
    CHECK(g.size() == n);
    const int q = std::min(prof.cells(), 4);
    // N_q with explicit cell sizes: same cell-subset sum over sizes instead of masses.
    Rational expect = 0;
    std::vector<int> sizes, part;
    for (std::size_t i = 0; i < layout.size(); ++i)
      for (int c : layout[i]) {
        sizes.push_back(c);
        part.push_back(static_cast<int>(i));
      }
    const int m = static_cast<int>(sizes.size());
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      if (std::popcount(mask) != q) continue;
      Rational term = 1;
      for (int u = 0; u < m; ++u) {
        if (!(mask >> u & 1)) continue;
        term *= sizes[u];
        for (int v = u + 1; v < m; ++v)
          if ((mask >> v & 1) && part[u] == part[v]) term /= 2;
      }
      expect += term;
    }
    CHECK(count_cliques(g, q).to_rational() == expect);
  }
  CHECK_THROWS_AS(realize(Profile({3}), SizeAssignment::uniform(1), 2), InputError);
}

TEST_CASE("partitions have the right count") {
  // p(s, t) = p(s - 1, t - 1) + p(s - t, t)
  std::vector<std::vector<long>> pt(16, std::vector<long>(16, 0));
  pt[0][0] = 1;
  for (int s = 1; s < 16; ++s)
    for (int t = 1; t <= s; ++t) pt[s][t] = pt[s - 1][t - 1] + pt[s - t][t];
  for (int s = 1; s < 16; ++s) {
    for (int t = 1; t <= s; ++t) {
      const auto ps = partitions(s, t);
      CHECK(static_cast<long>(ps.size()) == pt[s][t]);
      CHECK(std::is_sorted(ps.rbegin(), ps.rend()));
      for (const auto& p : ps) CHECK(p.cells() == s);
    }
  }
}

TEST_CASE("candidate profiles under full pruning") {
  CHECK(candidate_profiles(5, 9, PruningFlags::all()) == std::vector<Profile>{Profile({3, 3}), Profile({2, 2, 1})});
  const auto p11 = candidate_profiles(5, 11, PruningFlags::all());
  CHECK(p11 == std::vector<Profile>{Profile({3, 2, 2}), Profile({2, 2, 1, 1}), Profile({1, 1, 1, 1, 1})});
  CHECK(candidate_profiles(4, 5, PruningFlags::all()).empty());
  for (const auto& p : candidate_profiles(4, 10, PruningFlags::none())) {
    CHECK(p.cells() >= 4);
    CHECK(p.cells() + p.parts() <= 9);
  }
}

TEST_CASE("kbound check") {
  for (int q = 3; q <= 12; ++q)
    for (int s = q + 1; s <= 2 * q; ++s) CHECK_FALSE(kbound_check(q, q, s));
  for (int k = 3; k <= 6; ++k) {
    for (int q = k; q <= 10; ++q) {
      for (int s = q + 1; s <= 20; ++s) {
        const long double lhs = std::pow(2.0L, k - 2) * std::pow(k / (k - 1.0L), k - 1) - k;
        const long double rhs = static_cast<long double>(q - k + 1) / (s - q);
        if (std::fabs(lhs - rhs) > 1e-9L) CHECK(kbound_check(k, q, s) == (lhs <= rhs));
      }
    }
  }
}

TEST_CASE("repartition deltas") {
  const auto d1 = repartition_delta(1);
  CHECK(d1.edges == 3);
  CHECK(d1.triangles == 10);
  CHECK(d1.k4 == Rational(-81, 4));
  CHECK(d1.realization_checked);
  CHECK(d1.agrees);
  CHECK(d1.realized_k4.to_string() == "-81/4");
  const auto d2 = repartition_delta(2);
  CHECK(d2.edges == 12);
  CHECK(d2.triangles == 80);
  CHECK(d2.k4 == -324);
  CHECK(d2.agrees);
  const auto dh = repartition_delta(Rational(1, 3));
  CHECK(dh.k4 == Rational(-81, 4) / 81);
  CHECK_FALSE(dh.realization_checked);
}
