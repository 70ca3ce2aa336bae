#include "rtlab/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <future>

#include "rtlab/errors.hpp"

namespace rtlab {

namespace {

constexpr int kMaxN = 8;

/// Adjacency masks of one weighting: support (weight >= 1/2), weight 1, weight 1/2.
struct Masks {
  std::array<std::uint32_t, kMaxN> sup{}, one{}, half{};
};

/// Subset program over all vertex masks.
class SubsetProgram {
public:
  explicit SubsetProgram(int n) : n_(n), size_(1u << n) {}

  SubsetSummary run(const Masks& m, int q) {
    const int scale = q * (q - 1) / 2;
    SubsetSummary out;
    sup_[0] = one_[0] = 1;
    halves_[0] = 0;
    best_x_[0] = 0;
    for (std::uint32_t mask = 1; mask < size_; ++mask) {
      const int v = std::countr_zero(mask);
      const std::uint32_t rest = mask & (mask - 1);
      const int k = std::popcount(mask);
      sup_[mask] = sup_[rest] && (m.sup[v] & rest) == rest;
      one_[mask] = one_[rest] && (m.one[v] & rest) == rest;
      halves_[mask] = halves_[rest] + std::popcount(m.half[v] & rest);
      std::uint8_t bx = 0;
      if (one_[mask]) {
        bx = static_cast<std::uint8_t>(k);
      } else {
        for (std::uint32_t r = mask; r; r &= r - 1) bx = std::max(bx, best_x_[mask & ~(r & -r)]);
      }
      best_x_[mask] = bx;
      if (sup_[mask]) {
        out.skeleton_value = std::max(out.skeleton_value, k + bx);
        if (k == q) out.scaled_count += std::uint64_t{1} << (scale - halves_[mask]);
      }
    }
    return out;
  }

private:
  int n_;
  std::uint32_t size_;
  std::array<std::uint8_t, 1u << kMaxN> sup_{}, one_{}, halves_{}, best_x_{};
};

Masks masks_of(const WeightedGraph& g) {
  Masks m;
  for (int u = 0; u < g.size(); ++u) {
    for (int v = 0; v < g.size(); ++v) {
      const auto w = u == v ? Weight::Zero : g.weight(u, v);
      if (w != Weight::Zero) m.sup[u] |= 1u << v;
      if (w == Weight::One) m.one[u] |= 1u << v;
      if (w == Weight::Half) m.half[u] |= 1u << v;
    }
  }
  return m;
}

std::vector<std::pair<int, int>> edge_slots(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  }
  return slots;
}

struct Shard {
  std::uint64_t best = 0, count = 0, scanned = 0, free = 0;
  bool any = false;
  std::vector<std::uint64_t> witnesses;
};

Shard scan(int n, int q, int p, std::uint64_t begin, std::uint64_t end, int witness_limit) {
  const auto slots = edge_slots(n);
  const int m = static_cast<int>(slots.size());
  std::vector<int> digit(m);
  std::uint64_t idx = begin;
  for (int k = 0; k < m; ++k) {
    digit[k] = static_cast<int>(idx % 3);
    idx /= 3;
  }
  SubsetProgram prog(n);
  Shard s;
  for (std::uint64_t index = begin; index < end; ++index) {
    Masks mk;
    for (int k = 0; k < m; ++k) {
      if (digit[k] == 0) continue;
      const auto [i, j] = slots[k];
      mk.sup[i] |= 1u << j;
      mk.sup[j] |= 1u << i;
      auto& target = digit[k] == 2 ? mk.one : mk.half;
      target[i] |= 1u << j;
      target[j] |= 1u << i;
    }
    ++s.scanned;
    const auto sum = prog.run(mk, q);
    if (sum.skeleton_value <= p - 1) {
      ++s.free;
      if (!s.any || sum.scaled_count > s.best) {
        s.any = true;
        s.best = sum.scaled_count;
        s.count = 0;
        s.witnesses.clear();
      }
      if (sum.scaled_count == s.best) {
        ++s.count;
        if (static_cast<int>(s.witnesses.size()) < witness_limit) s.witnesses.push_back(index);
      }
    }
    for (int k = 0; k < m; ++k) {
      if (++digit[k] < 3) break;
      digit[k] = 0;
    }
  }
  return s;
}

void compositions(int remaining, const std::vector<int>& minimum, std::size_t i, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (i == minimum.size()) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  int tail = 0;
  for (std::size_t j = i + 1; j < minimum.size(); ++j) tail += minimum[j];
  for (int v = minimum[i]; v <= remaining - tail; ++v) {
    cur.push_back(v);
    compositions(remaining - v, minimum, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

WeightedGraph oracle_graph(int n, std::uint64_t index) {
  WeightedGraph g(n);
  for (const auto& [i, j] : edge_slots(n)) {
    g.set_weight(i, j, static_cast<Weight>(index % 3));
    index /= 3;
  }
  return g;
}

SubsetSummary subset_summary(const WeightedGraph& g, int q) {
  if (g.size() > kMaxN) throw InputError("subset_summary supports at most 8 vertices");
  SubsetProgram prog(g.size());
  return prog.run(masks_of(g), q);
}

SearchReport brute_force_max(int n, int q, int p, const OracleOptions& opts) {
  if (n < 1) throw InputError("oracle needs n >= 1");
  if (n > opts.n_cap || n > kMaxN) {
    throw InputError("oracle n = " + std::to_string(n) + " exceeds the cap of " + std::to_string(std::min(opts.n_cap, kMaxN)));
  }
  if (q < 2 || q >= p) throw InputError("oracle requires 2 <= q < p");
  SearchReport r;
  r.n = n;
  r.q = q;
  r.p = p;
  const int m = n * (n - 1) / 2;
  std::uint64_t total = 1;
  for (int k = 0; k < m; ++k) total *= 3;

  const int jobs = std::max(1, opts.jobs);
  std::vector<std::future<Shard>> tasks;
  for (int j = 0; j < jobs; ++j) {
    const std::uint64_t b = total * j / jobs, e = total * (j + 1) / jobs;
    if (j + 1 == jobs) {
      tasks.push_back(std::async(std::launch::deferred, scan, n, q, p, b, e, opts.witness_limit));
    } else {
      tasks.push_back(std::async(std::launch::async, scan, n, q, p, b, e, opts.witness_limit));
    }
  }
  Shard merged;
  for (auto& t : tasks) {
    Shard s = t.get();
    merged.scanned += s.scanned;
    merged.free += s.free;
    if (!s.any) continue;
    if (!merged.any || s.best > merged.best) {
      merged.any = true;
      merged.best = s.best;
      merged.count = s.count;
      merged.witnesses = s.witnesses;
    } else if (s.best == merged.best) {
      merged.count += s.count;
      merged.witnesses.insert(merged.witnesses.end(), s.witnesses.begin(), s.witnesses.end());
    }
  }
  r.graphs_scanned = merged.scanned;
  r.skeleton_free = merged.free;
  r.witness_count = merged.count;
  r.max_value = DyadicRational(BigInt(merged.best), static_cast<std::uint32_t>(q * (q - 1) / 2));
  merged.witnesses.resize(std::min<std::size_t>(merged.witnesses.size(), opts.witness_limit));
  for (auto idx : merged.witnesses) r.witnesses.push_back(oracle_graph(n, idx));

  // Profile realizations: every profile with s + t <= p - 1 and every split of n into balanced cells.
  for (int t = 1; 2 * t <= p - 1 && !r.profile_witness; ++t) {
    for (int s = t; s + t <= p - 1 && s <= n && !r.profile_witness; ++s) {
      for (const auto& prof : partitions(s, t)) {
        std::vector<std::vector<int>> splits;
        std::vector<int> cur;
        compositions(n, prof.sizes(), 0, cur, splits);
        for (const auto& split : splits) {
          CellLayout layout(t);
          for (int i = 0; i < t; ++i) {
            for (int c = 0; c < prof[i]; ++c) layout[i].push_back(split[i] / prof[i] + (c < split[i] % prof[i] ? 1 : 0));
          }
          if (count_cliques(realize_layout_graph(layout), q) == r.max_value) {
            r.profile_witness = prof;
            r.profile_layout = layout;
            break;
          }
        }
        if (r.profile_witness) break;
      }
    }
  }
  return r;
}

bool verify_zykov_small(int n, int q, int p, const OracleOptions& opts) {
  return brute_force_max(n, q, p, opts).profile_witness.has_value();
}

}  // namespace rtlab
