#include <doctest.h>

#include <random>

#include "rtlab/errors.hpp"
#include "rtlab/profile.hpp"
#include "rtlab/skeleton.hpp"
#include "rtlab/symmetrize.hpp"
#include "support.hpp"

using namespace rtlab;
using namespace testing_support;

TEST_CASE("step names round trip") {
  for (auto k : {StepKind::SymmetrizeVertex, StepKind::TriangleRx, StepKind::TriangleRy, StepKind::ReCellularize,
                 StepKind::BalanceCells})
    CHECK(parse_step_kind(step_kind_name(k)) == k);
  CHECK_THROWS_AS(parse_step_kind("shuffle"), InputError);
}

TEST_CASE("vertex symmetrization copies a row") {
  WeightedGraph g(4);
  g.set_weight(0, 2, Weight::One);
  g.set_weight(0, 3, Weight::Half);
  g.set_weight(1, 2, Weight::Half);
  const auto h = symmetrize_vertex(g, 1, 0);
  CHECK(h.weight(1, 2) == Weight::One);
  CHECK(h.weight(1, 3) == Weight::Half);
  CHECK(h.weight(0, 1) == Weight::Zero);
  CHECK_THROWS_AS(symmetrize_vertex(g, 2, 0), InputError);
  CHECK_THROWS_AS(symmetrize_vertex(g, 1, 1), InputError);
}

TEST_CASE("reduction of random skeleton-free graphs") {
  std::mt19937_64 rng(41);
  int done = 0;
  for (int trial = 0; done < 1500; ++trial) {
    const int n = 2 + trial % 7;
    const int p = 3 + trial % 6;
    const int q = 2 + trial % 3;
    const auto g = random_graph(n, rng, 2 + trial % 2, 2, 1);
    if (naive_skeleton(g) > p - 1) continue;
    ++done;
    const auto r = zykov_reduce(g, q, p);
    const Rational before = naive_count(g, q), after = naive_count(r.graph, q);
    CHECK(after >= before);
    CHECK(naive_skeleton(r.graph) <= p - 1);
    REQUIRE(r.profile);
    const auto cd = cellular_decomposition(r.graph);
    REQUIRE(std::holds_alternative<CellularDecomposition>(cd));
    const auto& d = std::get<CellularDecomposition>(cd);
    CHECK(d.profile() == r.profile->sizes());
    for (const auto& part : d.parts) {
      std::size_t lo = SIZE_MAX, hi = 0;
      for (int c : part) {
        lo = std::min(lo, d.cells[c].size());
        hi = std::max(hi, d.cells[c].size());
      }
      CHECK(hi - lo <= 1);
    }
    CHECK(r.trace.sum_failures == 0);
    CHECK(r.trace.dichotomy_failures == 0);
    for (const auto& step : r.trace.steps) CHECK(step.after >= step.before);
    if (!r.trace.steps.empty()) {
      CHECK(r.trace.steps.front().before.to_rational() == before);
      CHECK(r.trace.steps.back().after.to_rational() == after);
    }
  }
}

TEST_CASE("phase one alone yields a cellular graph") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = random_graph(6, rng);
    const auto r = zykov_reduce(g, 3, 13, {true, false, false});
    const auto cd = cellular_decomposition(r.graph);
    CHECK_FALSE(std::holds_alternative<NonCellularWitness>(cd));
    CHECK(naive_count(r.graph, 3) >= naive_count(g, 3));
  }
}

TEST_CASE("a graph with a p-skeleton is refused") {
  WeightedGraph k3(3);
  for (int u = 0; u < 3; ++u)
    for (int v = u + 1; v < 3; ++v) k3.set_weight(u, v, Weight::One);
  CHECK_THROWS_AS(zykov_reduce(k3, 2, 6), InputError);
}

TEST_CASE("profile graphs are fixed points") {
  const auto g = realize(Profile({2, 2, 1}), SizeAssignment::uniform(3), 9);
  const auto r = zykov_reduce(g, 3, 9);
  REQUIRE(r.profile);
  CHECK(*r.profile == Profile({2, 2, 1}));
  CHECK(r.graph == g);
  CHECK(r.trace.steps.empty());
}

TEST_CASE("single edge stays put") {
  WeightedGraph g(2);
  g.set_weight(0, 1, Weight::One);
  const auto r = zykov_reduce(g, 2, 5);
  CHECK(*r.profile == Profile({1, 1}));
  CHECK(count_cliques(r.graph, 2).to_string() == "1");
}

TEST_CASE("triangle with an isolated vertex") {
  WeightedGraph g(4);
  g.set_weight(0, 1, Weight::Half);
  g.set_weight(1, 2, Weight::Half);
  g.set_weight(0, 2, Weight::One);
  CHECK_THROWS_AS(zykov_reduce(g, 2, 4), InputError);
  const auto r = zykov_reduce(g, 2, 6);
  CHECK(count_half_half_one_triangles(r.graph) == 0);
  CHECK(count_cliques(r.graph, 2) >= DyadicRational(2));
  CHECK(naive_skeleton(r.graph) <= 5);
}
