#include "rtlab/be.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rtlab/errors.hpp"

namespace rtlab {

namespace {

using Point = GeometricGraph::Point;

constexpr long double kGuard = 1e-9L;
constexpr int kMaxAttempts = 64;

Point gaussian_unit(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Point p(dim);
  do {
    for (int i = 0; i < dim; ++i) p[i] = normal(rng);
  } while (p.norm() < 1e-6L);
  return p / p.norm();
}

/// Unit vector at chord distance at most `radius` from `center`.
Point near(const Point& center, long double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Point dir = gaussian_unit(static_cast<int>(center.size()), rng);
  dir -= dir.dot(center) * center;
  if (dir.norm() < 1e-12L) return center;
  dir /= dir.norm();
  const long double chord = radius * unit(rng);
  const long double angle = 2 * std::asin(chord / 2);
  return std::cos(angle) * center + std::sin(angle) * dir;
}

std::vector<int> largest_remainder(int n, const std::vector<long double>& x) {
  std::vector<int> out(x.size());
  std::vector<std::pair<long double, int>> rem;
  int assigned = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const long double target = n * x[i];
    out[i] = static_cast<int>(std::floor(target + 1e-12L));
    assigned += out[i];
    rem.emplace_back(target - out[i], static_cast<int>(i));
  }
  std::stable_sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < n; ++k, ++assigned) ++out[rem[k % rem.size()].second];
  return out;
}

class CliqueSearch {
public:
  explicit CliqueSearch(const std::vector<Bitset>& adj) : adj_(adj) {}

  int run(Bitset candidates) {
    best_ = 0;
    expand(std::move(candidates), 0);
    return best_;
  }

private:
  void expand(Bitset p, int size) {
    std::vector<int> order, color;
    Bitset uncolored = p;
    int c = 0;
    while (uncolored.any()) {
      ++c;
      Bitset q = uncolored;
      while (q.any()) {
        const int v = q.first();
        q.reset(v);
        q -= adj_[v];
        uncolored.reset(v);
        order.push_back(v);
        color.push_back(c);
      }
    }
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      if (size + color[i] <= best_) return;
      const int v = order[i];
      Bitset next = p & adj_[v];
      if (next.none()) {
        best_ = std::max(best_, size + 1);
      } else {
        expand(std::move(next), size + 1);
      }
      p.reset(v);
    }
  }

  const std::vector<Bitset>& adj_;
  int best_ = 0;
};

class CensusWalk {
public:
  CensusWalk(const std::vector<Bitset>& adj, int q_max, std::uint64_t cap, CliqueCensus& out)
      : adj_(adj), q_max_(q_max), cap_(cap), out_(out) {}

  void descend(const Bitset& cand, int size) {
    if (cap_ && ++out_.nodes > cap_) {
      throw ResourceCapError("census.nodes", "clique census exceeded its node cap of " + std::to_string(cap_));
    }
    if (!cap_) ++out_.nodes;
    out_.counts[size + 1] += cand.count();
    if (size + 1 >= q_max_) return;
    cand.for_each([&](int u) {
      Bitset next = cand & adj_[u];
      next.clear_through(u);
      if (next.any()) descend(next, size + 1);
    });
  }

private:
  const std::vector<Bitset>& adj_;
  int q_max_;
  std::uint64_t cap_;
  CliqueCensus& out_;
};

std::vector<Bitset> complement(const std::vector<Bitset>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<Bitset> c(n, Bitset(n));
  for (int u = 0; u < n; ++u) {
    c[u] = Bitset::full(n) - adj[u];
    c[u].reset(u);
  }
  return c;
}

}  // namespace

long double SphereConfig::mu() const { return eps / std::sqrt(static_cast<long double>(d)); }

void SphereConfig::validate() const {
  if (d < 2) throw InputError("sphere dimension d must be >= 2");
  if (n < 2 || n % 2 != 0) throw InputError("vertex budget n must be positive and even");
  if (!(eps > 0)) throw InputError("eps must be positive");
  if (mu() > 0.25L) throw InputError("mu = eps/sqrt(d) must be at most 1/4");
}

int GeometricGraph::edge_count() const {
  int e = 0;
  for (const auto& a : adj) e += a.count();
  return e / 2;
}

bool GeometricGraph::rule(int u, int v) const {
  if (u == v) return false;
  if (part_of[u] != part_of[v]) return true;
  const long double d2 = (points[u] - points[v]).squaredNorm();
  if (class_of[u] == class_of[v]) return d2 > (2 - mu) * (2 - mu);
  const long double r = std::sqrt(2.0L) - mu;
  return d2 < r * r;
}

WeightedGraph GeometricGraph::to_weighted() const {
  WeightedGraph g(size());
  for (int u = 0; u < size(); ++u) {
    adj[u].for_each([&](int v) {
      if (u < v) g.set_weight(u, v, Weight::One);
    });
  }
  return g;
}

GeometricGraph build_construction(const SphereConfig& cfg, int s, int t, const SizeAssignment& sizes) {
  cfg.validate();
  if (t < 1 || s < t) throw InputError("construction needs s >= t >= 1");
  sizes.validate(t);
  std::vector<int> cells(t);
  for (int i = 0; i < t; ++i) cells[i] = s / t + (i < s % t ? 1 : 0);
  const auto part_size = largest_remainder(cfg.n, sizes.x);
  for (int i = 0; i < t; ++i) {
    if (part_size[i] == 0 || part_size[i] % cells[i] != 0) {
      throw InputError("part " + std::to_string(i) + " receives " + std::to_string(part_size[i]) +
                       " vertices, which do not split evenly into " + std::to_string(cells[i]) + " cells");
    }
  }

  GeometricGraph g;
  g.mu = cfg.mu();
  const long double mu = g.mu;
  const long double cross2 = (std::sqrt(2.0L) - mu) * (std::sqrt(2.0L) - mu);
  const long double within2 = (2 - mu) * (2 - mu);
  std::mt19937_64 rng(cfg.seed);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    g.points.clear();
    g.class_of.clear();
    g.part_of.clear();
    int cell_base = 0;
    for (int i = 0; i < t; ++i) {
      for (int dom = 0; dom < part_size[i] / cells[i]; ++dom) {
        const Point center = gaussian_unit(cfg.d + 1, rng);
        for (int c = 0; c < cells[i]; ++c) {
          g.points.push_back(near(center, mu / 4, rng));
          g.class_of.push_back(cell_base + c);
          g.part_of.push_back(i);
        }
      }
      cell_base += cells[i];
    }
    const int n = g.size();
    bool ambiguous = false;
    for (int u = 0; u < n && !ambiguous; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (g.part_of[u] != g.part_of[v]) continue;
        const long double d2 = (g.points[u] - g.points[v]).squaredNorm();
        const long double thr = g.class_of[u] == g.class_of[v] ? within2 : cross2;
        if (std::fabs(d2 - thr) < kGuard) {
          ambiguous = true;
          break;
        }
      }
    }
    if (ambiguous) {
      ++g.resamples;
      continue;
    }
    g.adj.assign(n, Bitset(n));
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (g.rule(u, v)) {
          g.adj[u].set(v);
          g.adj[v].set(u);
        }
      }
    }
    return g;
  }
  throw ResourceCapError("construction.resamples", "could not place points outside the distance guard band");
}

CliqueCensus clique_census(const std::vector<Bitset>& adj, int q_max, std::uint64_t node_cap) {
  if (q_max < 2) throw InputError("clique census needs q_max >= 2");
  const int n = static_cast<int>(adj.size());
  CliqueCensus out;
  out.counts.assign(q_max + 1, 0);
  out.counts[0] = 1;
  if (n > 0) {
    CensusWalk walk(adj, q_max, node_cap, out);
    walk.descend(Bitset::full(n), 0);
  }
  out.omega = clique_number(adj);
  return out;
}

CliqueCensus clique_census(const GeometricGraph& g, int q_max, std::uint64_t node_cap) {
  return clique_census(g.adj, q_max, node_cap);
}

int clique_number(const std::vector<Bitset>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n == 0) return 0;
  const auto comp = complement(adj);
  Bitset seen(n);
  CliqueSearch search(adj);
  int total = 0;
  for (int start = 0; start < n; ++start) {
    if (seen.test(start)) continue;
    Bitset component(n), frontier(n);
    frontier.set(start);
    while (frontier.any()) {
      const int v = frontier.first();
      frontier.reset(v);
      if (component.test(v)) continue;
      component.set(v);
      seen.set(v);
      frontier |= comp[v] - component;
    }
    total += search.run(component);
  }
  return total;
}

StructuralReport structural_report(const GeometricGraph& g) {
  StructuralReport r;
  const int n = g.size();
  r.n = n;
  r.edges = g.edge_count();
  int classes = 0;
  for (int c : g.class_of) classes = std::max(classes, c + 1);
  std::vector<std::vector<int>> members(classes);
  std::vector<int> class_part(classes);
  for (int v = 0; v < n; ++v) {
    members[g.class_of[v]].push_back(v);
    class_part[g.class_of[v]] = g.part_of[v];
  }
  r.within_class_edges.assign(classes, 0);
  for (int a = 0; a < classes; ++a) {
    const auto& ma = members[a];
    for (std::size_t i = 0; i < ma.size(); ++i) {
      for (std::size_t j = i + 1; j < ma.size(); ++j) {
        if (!g.adjacent(ma[i], ma[j])) continue;
        ++r.within_class_edges[a];
        for (std::size_t k = j + 1; k < ma.size(); ++k) {
          if (g.adjacent(ma[i], ma[k]) && g.adjacent(ma[j], ma[k])) ++r.within_class_triangles;
        }
      }
    }
    for (int b = a + 1; b < classes; ++b) {
      if (class_part[a] != class_part[b]) continue;
      int e = 0;
      for (int u : ma) {
        for (int v : members[b]) e += g.adjacent(u, v);
      }
      r.cross_densities.push_back({a, b, static_cast<long double>(e) / (ma.size() * members[b].size())});
    }
  }
  long double sum = 0;
  int counted = 0;
  r.min_opposite_degree = 1;
  for (int v = 0; v < n; ++v) {
    int other = 0, nb = 0;
    for (int c = 0; c < classes; ++c) {
      if (c == g.class_of[v] || class_part[c] != g.part_of[v]) continue;
      other += static_cast<int>(members[c].size());
      for (int u : members[c]) nb += g.adjacent(u, v);
    }
    if (other == 0) continue;
    const long double f = static_cast<long double>(nb) / other;
    r.min_opposite_degree = std::min(r.min_opposite_degree, f);
    r.max_opposite_degree = std::max(r.max_opposite_degree, f);
    sum += f;
    ++counted;
  }
  if (counted == 0) r.min_opposite_degree = 0;
  r.mean_opposite_degree = counted ? sum / counted : 0;

  auto& ind = r.independence;
  const auto comp = complement(g.adj);
  if (n <= 60) {
    ind.lower = ind.upper = clique_number(comp);
    ind.exact = true;
    ind.lower_method = ind.upper_method = "exact";
    return r;
  }
  Bitset remaining = Bitset::full(n);
  while (remaining.any()) {
    int pick = -1, best_deg = n + 1;
    remaining.for_each([&](int v) {
      const int deg = g.adj[v].and_count(remaining);
      if (deg < best_deg) {
        best_deg = deg;
        pick = v;
      }
    });
    ++ind.lower;
    remaining.reset(pick);
    remaining -= g.adj[pick];
  }
  remaining = Bitset::full(n);
  while (remaining.any()) {
    Bitset cand = remaining;
    while (cand.any()) {
      const int v = cand.first();
      remaining.reset(v);
      cand.reset(v);
      cand &= g.adj[v];
    }
    ++ind.upper;
  }
  ind.lower_method = "greedy minimum degree";
  ind.upper_method = "greedy clique cover";
  return r;
}

}  // namespace rtlab
