#include "rtlab/wgraph.hpp"

#include <algorithm>
#include <future>
#include <numeric>

#include "rtlab/errors.hpp"

namespace rtlab {

DyadicRational to_dyadic(Weight w) {
  switch (w) {
    case Weight::Zero: return 0;
    case Weight::Half: return DyadicRational::half_pow(1);
    case Weight::One: return 1;
  }
  return 0;
}

std::string weight_string(Weight w) {
  switch (w) {
    case Weight::Zero: return "0";
    case Weight::Half: return "1/2";
    case Weight::One: return "1";
  }
  return "?";
}

Weight parse_weight(std::string_view text) {
  if (text == "1") return Weight::One;
  if (text == "1/2" || text == "0.5") return Weight::Half;
  if (text == "0") return Weight::Zero;
  throw InputError("invalid weight '" + std::string(text) + "' (expected \"0\", \"1/2\" or \"1\")");
}

WeightedGraph::WeightedGraph(int n)
    : n_(n),
      w_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), Weight::Zero),
      support_(n, Bitset(n)),
      full_(n, Bitset(n)),
      half_(n, Bitset(n)) {
  if (n < 0) throw InputError("negative vertex count");
}

void WeightedGraph::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw InputError("vertex " + std::to_string(v) + " out of range [0," + std::to_string(n_) + ")");
}

Weight WeightedGraph::weight(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  return w_[static_cast<std::size_t>(u) * n_ + v];
}

void WeightedGraph::set_weight(int u, int v, Weight w) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) {
    if (w != Weight::Zero) throw InputError("diagonal weights must be 0");
    return;
  }
  w_[static_cast<std::size_t>(u) * n_ + v] = w;
  w_[static_cast<std::size_t>(v) * n_ + u] = w;
  for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
    support_[a].reset(b);
    full_[a].reset(b);
    half_[a].reset(b);
    if (w != Weight::Zero) support_[a].set(b);
    if (w == Weight::One) full_[a].set(b);
    if (w == Weight::Half) half_[a].set(b);
  }
}

void WeightedGraph::copy_row(int dst, int src) {
  check_vertex(dst);
  check_vertex(src);
  for (int z = 0; z < n_; ++z) {
    if (z != dst && z != src) set_weight(dst, z, weight(src, z));
  }
}

int WeightedGraph::edge_count() const {
  int c = 0;
  for (int v = 0; v < n_; ++v) c += support_[v].count();
  return c / 2;
}

DyadicRational clique_weight(const WeightedGraph& g, std::span<const int> clique) {
  if (clique.empty()) throw InputError("clique_weight needs at least one vertex");
  for (int v : clique) {
    if (v < 0 || v >= g.size()) throw InputError("unknown vertex " + std::to_string(v));
  }
  std::uint32_t halves = 0;
  for (std::size_t i = 0; i < clique.size(); ++i) {
    for (std::size_t j = i + 1; j < clique.size(); ++j) {
      switch (g.weight(clique[i], clique[j])) {
        case Weight::Zero: return 0;
        case Weight::Half: ++halves; break;
        case Weight::One: break;
      }
    }
  }
  return DyadicRational::half_pow(halves);
}

DyadicRational pi_product(const WeightedGraph& g, int v, std::span<const int> set) {
  if (v < 0 || v >= g.size()) throw InputError("unknown vertex " + std::to_string(v));
  std::uint32_t halves = 0;
  for (int u : set) {
    if (u == v) throw InputError("pi_product: vertex belongs to the set");
    switch (g.weight(v, u)) {
      case Weight::Zero: return 0;
      case Weight::Half: ++halves; break;
      case Weight::One: break;
    }
  }
  return DyadicRational::half_pow(halves);
}

namespace {

using Count = unsigned __int128;

/// Ordered clique expansion over the support graph.
///
/// Candidates are kept in buckets indexed by how many weight-1/2 pairs they
/// would add to the current clique, so the last level is a popcount per bucket
/// and the weight of every clique is 2^-(half pairs).
class CliqueExpansion {
public:
  CliqueExpansion(const WeightedGraph& g, int max_extra)
      : g_(g), levels_(max_extra + 1) {
    for (auto& level : levels_) level.assign(max_extra + 3, Bitset(g.size()));
  }

  /// hist[c][h] counts cliques of (seed size + c) vertices with h half pairs.
  /// Only c == extra is filled unless all_sizes is set.
  void run(const std::vector<Bitset>& seed_buckets, int seed_halves, int extra, bool all_sizes,
           std::vector<std::vector<Count>>& hist, int first_vertex_mod = 1, int first_vertex_rem = 0) {
    extra_ = extra;
    all_sizes_ = all_sizes;
    hist_ = &hist;
    mod_ = first_vertex_mod;
    rem_ = first_vertex_rem;
    auto& top = levels_[0];
    for (std::size_t j = 0; j < top.size(); ++j) {
      if (j < seed_buckets.size()) {
        top[j] = seed_buckets[j];
      } else {
        top[j].clear();
      }
    }
    expand(0, static_cast<int>(seed_buckets.size()), seed_halves);
  }

private:
  void expand(int depth, int buckets, int halves) {
    const int remaining = extra_ - depth;
    auto& cur = levels_[depth];
    auto& hist = *hist_;
    if (remaining == 1 && !all_sizes_) {
      for (int j = 0; j < buckets; ++j) hist[depth + 1][halves + j] += static_cast<Count>(cur[j].count());
      return;
    }
    // Iterate candidates in increasing vertex order across all buckets.
    const int n = g_.size();
    int v = -1;
    while (true) {
      int best = n;
      int bucket = -1;
      for (int j = 0; j < buckets; ++j) {
        const int c = cur[j].next(v);
        if (c >= 0 && c < best) {
          best = c;
          bucket = j;
        }
      }
      if (bucket < 0) break;
      v = best;
      if (depth == 0 && mod_ > 1 && v % mod_ != rem_) continue;
      const int h = halves + bucket;
      if (all_sizes_) hist[depth + 1][h] += 1;
      if (remaining <= 1) continue;
      auto& next = levels_[depth + 1];
      const Bitset& full = g_.full(v);
      const Bitset& half = g_.half(v);
      for (int j = 0; j <= buckets; ++j) {
        Bitset& nb = next[j];
        if (j < buckets) {
          nb.assign_and(cur[j], full);
        } else {
          nb.clear();
        }
        if (j > 0) nb |= cur[j - 1] & half;
        nb.clear_through(v);
      }
      expand(depth + 1, buckets + 1, h);
    }
  }

  const WeightedGraph& g_;
  std::vector<std::vector<Bitset>> levels_;
  std::vector<std::vector<Count>>* hist_ = nullptr;
  int extra_ = 0;
  bool all_sizes_ = false;
  int mod_ = 1, rem_ = 0;
};

BigInt to_big(Count c) {
  BigInt hi = static_cast<std::uint64_t>(c >> 64);
  return (hi << 64) + static_cast<std::uint64_t>(c);
}

DyadicRational fold(const std::vector<Count>& row) {
  DyadicRational total;
  for (std::size_t h = 0; h < row.size(); ++h) {
    if (row[h] != 0) total += DyadicRational(to_big(row[h]), static_cast<std::uint32_t>(h));
  }
  return total;
}

std::vector<std::vector<Count>> empty_hist(int sizes, int q) {
  return std::vector<std::vector<Count>>(sizes + 1, std::vector<Count>(q * (q - 1) / 2 + 2, 0));
}

}  // namespace

DyadicRational count_cliques(const WeightedGraph& g, int q, int jobs) {
  if (q < 1) throw InputError("count_cliques: q must be >= 1");
  const int n = g.size();
  if (q > n) return 0;
  if (q == 1) return n;
  std::vector<Bitset> seed{Bitset::full(n)};
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    auto hist = empty_hist(q, q);
    CliqueExpansion(g, q).run(seed, 0, q, false, hist);
    return fold(hist[q]);
  }
  std::vector<std::future<std::vector<Count>>> parts;
  for (int r = 0; r < jobs; ++r) {
    parts.push_back(std::async(std::launch::async, [&, r] {
      auto hist = empty_hist(q, q);
      CliqueExpansion(g, q).run(seed, 0, q, false, hist, jobs, r);
      return hist[q];
    }));
  }
  std::vector<Count> total(q * (q - 1) / 2 + 2, 0);
  for (auto& f : parts) {
    const auto row = f.get();
    for (std::size_t h = 0; h < row.size(); ++h) total[h] += row[h];
  }
  return fold(total);
}

std::vector<DyadicRational> count_cliques_upto(const WeightedGraph& g, int q_max) {
  if (q_max < 1) throw InputError("count_cliques_upto: q_max must be >= 1");
  std::vector<DyadicRational> out(q_max + 1);
  const int n = g.size();
  if (n == 0) return out;
  auto hist = empty_hist(q_max, q_max);
  CliqueExpansion(g, q_max).run({Bitset::full(n)}, 0, q_max, true, hist);
  for (int k = 1; k <= q_max; ++k) out[k] = fold(hist[k]);
  return out;
}

DyadicRational vertex_q_weight(const WeightedGraph& g, int v, int q) {
  if (v < 0 || v >= g.size()) throw InputError("vertex_q_weight: unknown vertex " + std::to_string(v));
  if (q < 2) throw InputError("vertex_q_weight: q must be >= 2");
  if (q > g.size()) return 0;
  auto hist = empty_hist(q, q);
  CliqueExpansion(g, q - 1).run({g.full(v), g.half(v)}, 0, q - 1, false, hist);
  return fold(hist[q - 1]);
}

std::vector<HalfHalfOneTriangle> all_half_half_one_triangles(const WeightedGraph& g) {
  std::vector<HalfHalfOneTriangle> out;
  const int n = g.size();
  for (int x = 0; x < n; ++x) {
    const Bitset& h = g.half(x);
    h.for_each([&](int y) {
      const Bitset common = g.full(y) & h;
      common.for_each([&](int z) {
        if (z > y) out.push_back({x, y, z});
      });
    });
  }
  return out;
}

std::optional<HalfHalfOneTriangle> find_half_half_one_triangle(const WeightedGraph& g) {
  const int n = g.size();
  for (int x = 0; x < n; ++x) {
    const Bitset& h = g.half(x);
    for (int y = h.first(); y >= 0; y = h.next(y)) {
      const Bitset common = g.full(y) & h;
      const int z = common.next(y);
      if (z >= 0) return HalfHalfOneTriangle{x, y, z};
    }
  }
  return std::nullopt;
}

std::size_t count_half_half_one_triangles(const WeightedGraph& g) {
  std::size_t c = 0;
  const int n = g.size();
  for (int x = 0; x < n; ++x) {
    const Bitset& h = g.half(x);
    h.for_each([&](int y) { c += static_cast<std::size_t>((g.full(y) & h).count()); });
  }
  return c / 2;
}

std::vector<int> CellularDecomposition::profile() const {
  std::vector<int> p;
  for (const auto& part : parts) p.push_back(static_cast<int>(part.size()));
  std::sort(p.rbegin(), p.rend());
  return p;
}

CellularResult cellular_decomposition(const WeightedGraph& g) {
  const int n = g.size();
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      if (g.weight(x, y) != Weight::Zero) continue;
      for (int z = 0; z < n; ++z) {
        if (z != x && z != y && g.weight(x, z) != g.weight(y, z)) return NonCellularWitness{x, y, z};
      }
    }
  }
  if (auto t = find_half_half_one_triangle(g)) return *t;

  CellularDecomposition d;
  d.cell_of.assign(n, -1);
  d.part_of.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (d.cell_of[v] >= 0) continue;
    const int c = static_cast<int>(d.cells.size());
    d.cells.emplace_back();
    for (int u = v; u < n; ++u) {
      if (u == v || g.weight(u, v) == Weight::Zero) {
        d.cell_of[u] = c;
        d.cells[c].push_back(u);
      }
    }
  }
  std::vector<int> part_of_cell(d.cells.size(), -1);
  for (std::size_t c = 0; c < d.cells.size(); ++c) {
    if (part_of_cell[c] >= 0) continue;
    const int p = static_cast<int>(d.parts.size());
    d.parts.emplace_back();
    const int rep = d.cells[c].front();
    for (std::size_t e = c; e < d.cells.size(); ++e) {
      if (e == c || g.weight(rep, d.cells[e].front()) == Weight::Half) {
        part_of_cell[e] = p;
        d.parts[p].push_back(static_cast<int>(e));
      }
    }
  }
  for (int v = 0; v < n; ++v) d.part_of[v] = part_of_cell[d.cell_of[v]];
  return d;
}

WeightedGraph implied_graph(const CellularDecomposition& d) {
  const int n = static_cast<int>(d.cell_of.size());
  WeightedGraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (d.cell_of[u] == d.cell_of[v]) continue;
      g.set_weight(u, v, d.part_of[u] == d.part_of[v] ? Weight::Half : Weight::One);
    }
  }
  return g;
}

}  // namespace rtlab
