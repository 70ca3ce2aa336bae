#pragma once

#include <cstdint>
#include <vector>

#include "rtlab/profile.hpp"
#include "rtlab/wgraph.hpp"

namespace rtlab {

/// Nested vertex sets X within Y: X spans weight-1 pairs, Y spans pairs of weight >= 1/2.
struct Skeleton {
  std::vector<int> x;
  std::vector<int> y;
  int value() const noexcept { return static_cast<int>(x.size() + y.size()); }
};

struct SkeletonSearchOptions {
  /// Search-node budget; 0 means unlimited. Exhausting it yields decided == false.
  std::uint64_t node_cap = 0;
};

struct SkeletonSearchResult {
  int value = 0;
  Skeleton witness;
  bool decided = true;
  std::uint64_t nodes = 0;
};

/// Maximum of |X| + |Y| over all skeletons of `g`, with one attaining witness.
SkeletonSearchResult max_skeleton_value(const WeightedGraph& g, const SkeletonSearchOptions& opts = {});

/// True iff `g` contains no p-skeleton, i.e. the maximum skeleton value is at most p - 1.
bool is_skeleton_free(const WeightedGraph& g, int p);

/// Closed-form criterion for profile graphs with nonempty cells: s + t <= p - 1.
bool profile_skeleton_free(const Profile& profile, int p);

/// Checks the skeleton invariants (nesting and weights) of a candidate pair.
bool is_valid_skeleton(const WeightedGraph& g, const Skeleton& s);

}  // namespace rtlab
