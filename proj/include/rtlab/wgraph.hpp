#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rtlab/bitset.hpp"
#include "rtlab/dyadic.hpp"

namespace rtlab {

/// Edge weight alphabet of reduced graphs: 0 (non-edge), 1/2, 1.
enum class Weight : std::uint8_t { Zero = 0, Half = 1, One = 2 };

DyadicRational to_dyadic(Weight w);
/// "0", "1/2", "1"
std::string weight_string(Weight w);
Weight parse_weight(std::string_view text);

/// n vertices with a symmetric {0, 1/2, 1} weight matrix and a zero diagonal.
///
/// Alongside the dense matrix the graph keeps one bitset per vertex for the
/// support (weight >= 1/2), the weight-1 neighbours, and the weight-1/2
/// neighbours, so clique enumeration is word-parallel.
class WeightedGraph {
public:
  WeightedGraph() = default;
  explicit WeightedGraph(int n);

  int size() const noexcept { return n_; }
  Weight weight(int u, int v) const;
  void set_weight(int u, int v, Weight w);

  /// Sets w(dst, z) = w(src, z) for every z outside {dst, src}.
  void copy_row(int dst, int src);

  const Bitset& support(int v) const { return support_[v]; }
  const Bitset& full(int v) const { return full_[v]; }
  const Bitset& half(int v) const { return half_[v]; }

  /// Number of pairs with positive weight.
  int edge_count() const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }

private:
  void check_vertex(int v) const;

  int n_ = 0;
  std::vector<Weight> w_;
  std::vector<Bitset> support_, full_, half_;
};

/// Product of the weights on the pairs inside `clique`; 1 for a single vertex.
DyadicRational clique_weight(const WeightedGraph& g, std::span<const int> clique);

/// N_q: sum of clique_weight over all q-subsets. Zero when q > n.
DyadicRational count_cliques(const WeightedGraph& g, int q, int jobs = 1);

/// Weighted q-clique counts for every size 1..q_max at once (index k holds N_k, index 0 unused).
std::vector<DyadicRational> count_cliques_upto(const WeightedGraph& g, int q_max);

/// w_q(v): total weight of the q-subsets containing v.
DyadicRational vertex_q_weight(const WeightedGraph& g, int v, int q);

/// pi_S(v) = product of w(v,u) over u in S.
DyadicRational pi_product(const WeightedGraph& g, int v, std::span<const int> set);

/// Vertices x, y, z with w(xy) = w(xz) = 1/2 and w(yz) = 1 (y < z).
struct HalfHalfOneTriangle {
  int x, y, z;
  friend bool operator==(const HalfHalfOneTriangle&, const HalfHalfOneTriangle&) = default;
};

/// Lexicographically first (1/2,1/2,1)-triangle, if any.
std::optional<HalfHalfOneTriangle> find_half_half_one_triangle(const WeightedGraph& g);
std::vector<HalfHalfOneTriangle> all_half_half_one_triangles(const WeightedGraph& g);
std::size_t count_half_half_one_triangles(const WeightedGraph& g);

/// Cells are the nonadjacency classes; parts group cells joined by weight 1/2.
struct CellularDecomposition {
  std::vector<std::vector<int>> cells;  // sorted vertex lists, ordered by smallest vertex
  std::vector<std::vector<int>> parts;  // cell indices, ordered by smallest vertex
  std::vector<int> cell_of;
  std::vector<int> part_of;

  /// Cells per part, sorted descending.
  std::vector<int> profile() const;
};

/// Nonadjacent x, y separated by z: w(xy) = 0 but w(xz) != w(yz).
struct NonCellularWitness {
  int x, y, z;
  friend bool operator==(const NonCellularWitness&, const NonCellularWitness&) = default;
};

using CellularResult = std::variant<CellularDecomposition, NonCellularWitness, HalfHalfOneTriangle>;

/// Decomposes a cellular, (1/2,1/2,1)-triangle-free graph; otherwise returns the first witness found.
CellularResult cellular_decomposition(const WeightedGraph& g);

/// The weight matrix implied by a decomposition (0 in cells, 1/2 across cells of a part, 1 across parts).
WeightedGraph implied_graph(const CellularDecomposition& d);

}  // namespace rtlab
