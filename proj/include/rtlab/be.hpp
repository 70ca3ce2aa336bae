#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rtlab/bitset.hpp"
#include "rtlab/profile.hpp"
#include "rtlab/wgraph.hpp"

namespace rtlab {

struct SphereConfig {
  int d = 20;
  int n = 200;
  double eps = 0.5;
  std::uint64_t seed = 1;

  long double mu() const;
  /// Throws InputError unless d >= 2, n is even and positive, eps > 0 and mu <= 1/4.
  void validate() const;
};

/// Unit vectors in R^(d+1) with adjacency from the three distance rules.
struct GeometricGraph {
  using Point = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

  long double mu = 0;
  std::vector<Point> points;
  std::vector<int> class_of;  // cell label
  std::vector<int> part_of;
  std::vector<Bitset> adj;
  int resamples = 0;

  int size() const noexcept { return static_cast<int>(points.size()); }
  bool adjacent(int u, int v) const { return adj[u].test(v); }
  int edge_count() const;
  /// Edge rule for a pair: other parts always; other cell of the part iff distance < sqrt(2) - mu;
  /// same cell iff distance > 2 - mu.
  bool rule(int u, int v) const;
  /// Simple graph as a weighted graph with weights 1.
  WeightedGraph to_weighted() const;
};

/// G(n; s, t): t parts fully joined, part i carrying a BE graph on ceil(s/t) or floor(s/t) cells.
///
/// Every domain contributes one point per cell of its part, each within mu/4 of
/// a normalized-Gaussian center. Pairs whose squared distance lands within 1e-9
/// of a threshold trigger a fresh sample.
GeometricGraph build_construction(const SphereConfig& cfg, int s, int t, const SizeAssignment& sizes);

struct CliqueCensus {
  std::vector<std::uint64_t> counts;  // counts[k] = number of k-cliques, k = 0..q_max
  int omega = 0;
  std::uint64_t nodes = 0;
};

/// Exact clique counts up to q_max and the clique number. Throws ResourceCapError past node_cap (0 = no cap).
CliqueCensus clique_census(const GeometricGraph& g, int q_max, std::uint64_t node_cap = 0);
CliqueCensus clique_census(const std::vector<Bitset>& adj, int q_max, std::uint64_t node_cap = 0);

/// Clique number; splits along the components of the complement first.
int clique_number(const std::vector<Bitset>& adj);

struct ClassPairDensity {
  int a = 0, b = 0;
  long double density = 0;
};

struct IndependenceBounds {
  int lower = 0, upper = 0;
  bool exact = false;
  std::string lower_method, upper_method;
};

struct StructuralReport {
  int n = 0;
  int edges = 0;
  std::vector<ClassPairDensity> cross_densities;  // cell pairs inside one part
  std::vector<int> within_class_edges;            // per cell
  int within_class_triangles = 0;
  long double min_opposite_degree = 0, mean_opposite_degree = 0, max_opposite_degree = 0;  // fraction of the other cells
  IndependenceBounds independence;
};

StructuralReport structural_report(const GeometricGraph& g);

}  // namespace rtlab
