#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rtlab/dyadic.hpp"
#include "rtlab/profile.hpp"
#include "rtlab/wgraph.hpp"

namespace rtlab {

struct SearchReport {
  int n = 0, q = 0, p = 0;
  DyadicRational max_value;
  std::uint64_t witness_count = 0;     // skeleton-free graphs attaining max_value
  std::uint64_t graphs_scanned = 0;
  std::uint64_t skeleton_free = 0;
  std::optional<Profile> profile_witness;
  CellLayout profile_layout;           // cell sizes of the attaining profile realization
  std::vector<WeightedGraph> witnesses;  // first maximizers in enumeration order
};

struct OracleOptions {
  int jobs = 1;
  int n_cap = 6;
  int witness_limit = 0;
};

/// Exhaustive maximum of N_q over every p-skeleton-free weighting of K_n with weights {0, 1/2, 1}.
///
/// Skeleton values and clique weights come from a subset dynamic program over
/// bitmasks, independent of the skeleton and clique-counting modules.
SearchReport brute_force_max(int n, int q, int p, const OracleOptions& opts = {});

/// True iff some profile realization on n vertices with s + t <= p - 1 attains the exhaustive maximum.
bool verify_zykov_small(int n, int q, int p, const OracleOptions& opts = {});

/// Graph with the given enumeration index (edge slots (0,1), (0,2), ..., least significant first).
WeightedGraph oracle_graph(int n, std::uint64_t index);

/// Skeleton value and scaled N_q (times 2^C(q,2)) by the subset program; n <= 8.
struct SubsetSummary {
  int skeleton_value = 0;
  std::uint64_t scaled_count = 0;
};
SubsetSummary subset_summary(const WeightedGraph& g, int q);

}  // namespace rtlab
