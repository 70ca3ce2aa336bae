#include <doctest.h>

#include <cmath>

#include "rtlab/errors.hpp"
#include "rtlab/skeleton.hpp"
#include "rtlab/solver.hpp"
#include "support.hpp"

using namespace rtlab;
using namespace testing_support;

namespace {

Rational inequality_lhs(int k, int q) {
  Rational v = Rational(binomial(k + q, q));
  for (int i = 0; i < q; ++i) v *= Rational(q, q + k);
  for (int i = 0; i < 2 * k; ++i) v /= 2;
  return v;
}

int least_q(int k, const Rational& c) {
  for (int q = 2; q <= 400; ++q)
    if (inequality_lhs(k, q) >= 1 + c) return q;
  return -1;
}

double closed_value(int q, int p) {
  const auto cf = closed_form(q, p);
  REQUIRE(cf);
  return static_cast<double>(cf->value);
}

}  // namespace

TEST_CASE("closed forms at known points") {
  CHECK(closed_value(2, 4) == doctest::Approx(1.0 / 8).epsilon(1e-14));
  CHECK(closed_value(2, 5) == doctest::Approx(1.0 / 4).epsilon(1e-14));
  CHECK(closed_value(2, 6) == doctest::Approx(2.0 / 7).epsilon(1e-14));
  CHECK(closed_value(3, 7) == doctest::Approx(1.0 / 27).epsilon(1e-14));
  CHECK(closed_value(4, 8) == doctest::Approx(1.0 / 512).epsilon(1e-14));
  CHECK(closed_value(5, 10) == doctest::Approx(1.0 / 5184).epsilon(1e-14));
  CHECK(closed_value(5, 11) == doctest::Approx((675 + 228 * std::sqrt(15.0)) / 4802000).epsilon(1e-12));
  CHECK(closed_value(6, 8) == doctest::Approx(std::pow(1.0 / 6, 6) * std::pow(0.5, 15)).epsilon(1e-14));
  CHECK(closed_value(6, 9) == doctest::Approx(std::pow(1.0 / 6, 6) * std::pow(0.5, 6)).epsilon(1e-14));
  CHECK(closed_value(7, 11) == doctest::Approx(std::pow(1.0 / 7, 7) * std::pow(0.5, 5)).epsilon(1e-14));
  CHECK(closed_value(4, 5) == 0);
  CHECK_FALSE(closed_form(6, 20));
}

TEST_CASE("unit interval maximizer") {
  const auto m = maximize_on_unit_interval([](long double t) { return t * (1 - t) * (1 - t); });
  CHECK(static_cast<double>(m) == doctest::Approx(4.0 / 27).epsilon(1e-12));
}

TEST_CASE("profile optimum agrees with closed forms on the small grid") {
  for (int q = 2; q <= 5; ++q) {
    for (int p = q + 1; p <= 14; ++p) {
      const auto r = rt_density(q, p);
      if (!closed_form(q, p)) continue;
      CAPTURE(q);
      CAPTURE(p);
      REQUIRE(r.closed_form_match);
      CHECK(r.closed_form_match->agrees);
      CHECK(std::fabs(static_cast<double>(r.value.value) - closed_value(q, p)) <= 1e-9);
    }
  }
}

TEST_CASE("q-plus cases for larger q") {
  for (int q = 6; q <= 8; ++q) {
    for (int p : {q + 2, q + 3}) {
      const auto r = rt_density(q, p);
      CHECK(std::fabs(static_cast<double>(r.value.value) - closed_value(q, p)) <= 1e-9);
    }
  }
}

TEST_CASE("counterexample profiles") {
  const auto r10 = rt_density(5, 10);
  REQUIRE(r10.best_profile);
  CHECK(*r10.best_profile == Profile({2, 2, 2}));
  CHECK(conjecture_profile(5, 10) == Profile({2, 1, 1, 1}));
  CHECK(conjecture_profile(7, 12) == Profile({2, 2, 2, 1}));
  CHECK_THROWS_AS(conjecture_profile(2, 6), InputError);
  REQUIRE(r10.value.exact);
  CHECK(*r10.value.exact == Rational(1, 5184));

  const auto r11 = rt_density(5, 11);
  REQUIRE(r11.best_profile);
  CHECK(*r11.best_profile == Profile({2, 2, 1, 1}));
  CHECK(*r11.best_profile != conjecture_profile(5, 11));

  const auto gap = counterexample_gap(5, Profile({1, 1, 1, 1, 1}), Profile({2, 2, 1, 1}));
  CHECK(gap.value > 0);
  CHECK(static_cast<double>(gap.value) ==
        doctest::Approx((675 + 228 * std::sqrt(15.0)) / 4802000 - 1.0 / 3125).epsilon(1e-9));
}

TEST_CASE("conjectured profile wins below the counterexample range") {
  for (int q = 2; q <= 4; ++q) {
    for (int p = 2 * q; p <= 14; ++p) {
      const auto r = rt_density(q, p);
      // the conjecture's p >= 2q family: ceil((p-1)/2) cells over floor((p-1)/2) parts
      const int t = (p - 1) / 2, s = p - 1 - t;
      std::vector<int> parts(t, s / t);
      for (int i = 0; i < s % t; ++i) ++parts[i];
      const Profile conj(parts);
      if (q >= 3) CHECK(conjecture_profile(q, p) == conj);
      CAPTURE(q);
      CAPTURE(p);
      CHECK(std::find(r.ties.begin(), r.ties.end(), conj) != r.ties.end());
    }
  }
}

TEST_CASE("density is non-decreasing in p") {
  for (int q = 2; q <= 5; ++q) {
    long double prev = 0;
    for (int p = q + 1; p <= 14; ++p) {
      const auto v = rt_density(q, p).value.value;
      CHECK(v >= prev * (1 - 1e-12L));
      prev = v;
    }
  }
}

TEST_CASE("loose profiles never win") {
  for (int q = 2; q <= 4; ++q) {
    for (int p = q + 2; p <= 11; ++p) {
      RtOptions o;
      o.loose = true;
      const auto loose = rt_density(q, p, o);
      const auto strict = rt_density(q, p);
      CHECK(std::fabs(static_cast<double>(loose.value.value - strict.value.value)) <=
            1e-12 * static_cast<double>(strict.value.value));
      REQUIRE(loose.best_profile);
      CHECK(loose.best_profile->cells() + loose.best_profile->parts() == p - 1);
    }
  }
}

TEST_CASE("parallel jobs give the same result") {
  RtOptions o;
  o.jobs = 3;
  const auto a = rt_density(5, 12, o), b = rt_density(5, 12);
  CHECK(a.best_profile == b.best_profile);
  CHECK(a.ties == b.ties);
  CHECK(a.value.value == b.value.value);
}

TEST_CASE("counterexample inequality search") {
  const auto c = counterexample_search(1, Rational(1, 100));
  REQUIRE(c.found);
  CHECK(c.q == 10);
  CHECK(c.lhs == inequality_lhs(1, 10));
  CHECK(c.rhs == Rational(101, 100));
  CHECK(to_long_double(c.lhs) == doctest::Approx(1.06024).epsilon(1e-5));
  CHECK(c.q == least_q(1, Rational(1, 100)));

  const auto c2 = counterexample_search(1, Rational(1, 10));
  CHECK(c2.found == (least_q(1, Rational(1, 10)) > 0));
  if (c2.found) CHECK(c2.q == least_q(1, Rational(1, 10)));
  const auto c3 = counterexample_search(2, Rational(1, 100));
  CHECK(c3.q == least_q(2, Rational(1, 100)));

  REQUIRE(c.parametrized_q);
  CHECK(c.gap_verified);
  CHECK(c.gap->value > 0);
}

TEST_CASE("part bounds") {
  const auto small = verify_part_bounds(3, 7, 0.5L);
  CHECK(small.holds);
  const auto out = verify_part_bounds(3, 5, 0.5L);
  CHECK(out.holds);
  CHECK_FALSE(out.in_range);
  CHECK_FALSE(out.note.empty());
  CHECK_FALSE(verify_part_bounds(20, 40, 1.0L).in_range);
  const int q = 64;
  const int p = q + static_cast<int>(std::ceil(0.5 * q / std::log(q))) + 1;
  const auto r = verify_part_bounds(q, p, 0.5L);
  CHECK(r.holds);
  CHECK(r.in_range);
  CHECK(r.survivors == 0);
}

TEST_CASE("alternative six-class graph") {
  const auto g = alternative_six_class_graph();
  CHECK(g.size() == 6);
  CHECK(naive_skeleton(g) == 5);
  CHECK(naive_count(g, 3) == 4);
}

TEST_CASE("bad arguments") {
  CHECK_THROWS_AS(rt_density(1, 4), InputError);
  CHECK_THROWS_AS(rt_density(4, 4), InputError);
}

TEST_CASE("general-q closed form at q = 6") {
  for (int p : {30, 31}) {
    const auto r = rt_density(6, p);
    REQUIRE(r.closed_form_match);
    CHECK(r.closed_form_match->theorem == "general-q");
    CHECK(std::fabs(static_cast<double>(r.value.value) - closed_value(6, p)) <= 1e-9);
  }
}
