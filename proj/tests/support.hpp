#pragma once

#include <random>
#include <vector>

#include "rtlab/dyadic.hpp"
#include "rtlab/wgraph.hpp"

namespace testing_support {

using rtlab::Rational;
using rtlab::Weight;
using rtlab::WeightedGraph;

inline WeightedGraph random_graph(int n, std::mt19937_64& rng, int zero = 1, int half = 1, int one = 1) {
  WeightedGraph g(n);
  std::discrete_distribution<int> pick({double(zero), double(half), double(one)});
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.set_weight(u, v, static_cast<Weight>(pick(rng)));
  }
  return g;
}

inline Rational weight_value(Weight w) {
  if (w == Weight::One) return 1;
  if (w == Weight::Half) return Rational(1, 2);
  return 0;
}

/// Sum of pairwise weight products over all q-subsets, by plain subset enumeration.
inline Rational naive_count(const WeightedGraph& g, int q) {
  const int n = g.size();
  Rational total = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != q) continue;
    Rational w = 1;
    for (int u = 0; u < n && w != 0; ++u) {
      if (!(mask >> u & 1)) continue;
      for (int v = u + 1; v < n; ++v) {
        if (mask >> v & 1) w *= weight_value(g.weight(u, v));
      }
    }
    total += w;
  }
  return total;
}

inline bool all_pairs(const WeightedGraph& g, unsigned mask, bool need_one) {
  for (int u = 0; u < g.size(); ++u) {
    if (!(mask >> u & 1)) continue;
    for (int v = u + 1; v < g.size(); ++v) {
      if (!(mask >> v & 1)) continue;
      const Weight w = g.weight(u, v);
      if (w == Weight::Zero || (need_one && w != Weight::One)) return false;
    }
  }
  return true;
}

/// max |X| + |Y| over X within Y, by enumerating every pair of subsets.
inline int naive_skeleton(const WeightedGraph& g) {
  const int n = g.size();
  int best = 0;
  for (unsigned y = 0; y < (1u << n); ++y) {
    if (!all_pairs(g, y, false)) continue;
    for (unsigned x = y;; x = (x - 1) & y) {
      if (all_pairs(g, x, true)) best = std::max(best, std::popcount(y) + std::popcount(x));
      if (x == 0) break;
    }
  }
  return best;
}

inline Rational to_rational(const rtlab::DyadicRational& d) { return d.to_rational(); }

}  // namespace testing_support
