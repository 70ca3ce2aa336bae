#include "rtlab/skeleton.hpp"

#include <algorithm>

#include "rtlab/errors.hpp"

namespace rtlab {

namespace {

/// Largest clique of the weight-1 graph inside `within`.
void max_full_clique(const WeightedGraph& g, std::vector<int>& current, Bitset cand, std::vector<int>& best) {
  if (cand.none()) {
    if (current.size() > best.size()) best = current;
    return;
  }
  while (cand.any()) {
    if (current.size() + static_cast<std::size_t>(cand.count()) <= best.size()) return;
    const int v = cand.first();
    cand.reset(v);
    current.push_back(v);
    max_full_clique(g, current, cand & g.full(v), best);
    current.pop_back();
  }
}

class SkeletonSearch {
public:
  SkeletonSearch(const WeightedGraph& g, const SkeletonSearchOptions& opts) : g_(g), opts_(opts) {}

  SkeletonSearchResult run() {
    const int n = g_.size();
    if (n == 0) return result_;
    std::vector<int> r;
    expand(r, Bitset::full(n), Bitset(n));
    return result_;
  }

private:
  // Bron-Kerbosch with pivoting over the support graph; every maximal clique
  // Y is scored by |Y| + (largest weight-1 clique inside Y).
  void expand(std::vector<int>& r, Bitset p, Bitset x) {
    if (!result_.decided) return;
    ++result_.nodes;
    if (opts_.node_cap && result_.nodes > opts_.node_cap) {
      result_.decided = false;
      return;
    }
    if (2 * (static_cast<int>(r.size()) + p.count()) <= result_.value) return;
    if (p.none()) {
      if (x.none()) score(r);
      return;
    }
    int pivot = -1, pivot_deg = -1;
    (p | x).for_each([&](int u) {
      const int d = p.and_count(g_.support(u));
      if (d > pivot_deg) {
        pivot_deg = d;
        pivot = u;
      }
    });
    const Bitset branch = p - g_.support(pivot);
    for (int v = branch.first(); v >= 0; v = branch.next(v)) {
      r.push_back(v);
      expand(r, p & g_.support(v), x & g_.support(v));
      r.pop_back();
      p.reset(v);
      x.set(v);
    }
  }

  void score(const std::vector<int>& y) {
    Bitset within(g_.size());
    for (int v : y) within.set(v);
    std::vector<int> current, best;
    max_full_clique(g_, current, within, best);
    const int value = static_cast<int>(y.size() + best.size());
    if (value > result_.value) {
      result_.value = value;
      result_.witness.y = y;
      std::sort(result_.witness.y.begin(), result_.witness.y.end());
      result_.witness.x = best;
    }
  }

  const WeightedGraph& g_;
  SkeletonSearchOptions opts_;
  SkeletonSearchResult result_;
};

}  // namespace

SkeletonSearchResult max_skeleton_value(const WeightedGraph& g, const SkeletonSearchOptions& opts) {
  if (g.size() < 1) throw InputError("max_skeleton_value: graph has no vertices");
  return SkeletonSearch(g, opts).run();
}

bool is_skeleton_free(const WeightedGraph& g, int p) {
  if (p < 2) throw InputError("is_skeleton_free: p must be >= 2");
  if (g.size() == 0) return true;
  return max_skeleton_value(g).value <= p - 1;
}

bool profile_skeleton_free(const Profile& profile, int p) {
  return profile.cells() + profile.parts() <= p - 1;
}

bool is_valid_skeleton(const WeightedGraph& g, const Skeleton& s) {
  for (int v : s.x) {
    if (std::find(s.y.begin(), s.y.end(), v) == s.y.end()) return false;
  }
  for (std::size_t i = 0; i < s.y.size(); ++i) {
    for (std::size_t j = i + 1; j < s.y.size(); ++j) {
      if (s.y[i] == s.y[j] || g.weight(s.y[i], s.y[j]) == Weight::Zero) return false;
    }
  }
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    for (std::size_t j = i + 1; j < s.x.size(); ++j) {
      if (s.x[i] == s.x[j] || g.weight(s.x[i], s.x[j]) != Weight::One) return false;
    }
  }
  return true;
}

}  // namespace rtlab
