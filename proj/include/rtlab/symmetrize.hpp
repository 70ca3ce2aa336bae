#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rtlab/profile.hpp"
#include "rtlab/wgraph.hpp"

namespace rtlab {

enum class StepKind { SymmetrizeVertex, TriangleRx, TriangleRy, ReCellularize, BalanceCells };

/// "symmetrize-vertex", "triangle-R_x", ...
std::string step_kind_name(StepKind kind);
StepKind parse_step_kind(const std::string& name);

struct TraceStep {
  StepKind kind;
  std::vector<int> vertices;  // (y, x) for copies of x's row onto y; (x, y, z) plus the copy pair for triangle moves
  DyadicRational before, after;
};

struct ReductionTrace {
  std::vector<TraceStep> steps;
  /// N(R_x) + N(R_y) >= 2 N(R), evaluated on every candidate (apex, base) pair whose
  /// two vertices have the same support; the failures of pairs with different supports are counted apart.
  int sum_checks = 0;
  int sum_failures = 0;
  int unequal_support_sum_failures = 0;
  int dichotomy_failures = 0;  // triangles where both N(R_x) and N(R_y) fall below N(R)
};

struct ReductionPhases {
  bool cellularize = true;
  bool triangles = true;
  bool balance = true;
};

struct ReductionOptions {
  /// Re-check p-skeleton-freeness after every recorded step.
  bool check_skeletons = true;
  int jobs = 1;
};

struct ReductionResult {
  WeightedGraph graph;
  std::optional<Profile> profile;
  ReductionTrace trace;
};

/// Replaces y's weight row by x's. Requires x != y and w(x, y) = 0.
WeightedGraph symmetrize_vertex(const WeightedGraph& g, int y, int x);

/// Symmetrization to a profile graph without decreasing N_q.
///
/// Phase one repeatedly takes a largest-w_q vertex of the unprocessed set
/// (lowest index on ties) and copies its row onto its unprocessed
/// non-neighbours. Phase two removes (1/2,1/2,1)-triangles: for an apex a with
/// base b, R_x lets a copy b's weights and R_y lets b copy a's, in both cases
/// only where both weights are positive; the first option (triangles in
/// lexicographic order, both base vertices, R_x before R_y) that after
/// re-cellularizing raises N_q, or keeps it and lowers the triangle count,
/// is taken. Phase three balances the cells of every part.
ReductionResult zykov_reduce(const WeightedGraph& g, int q, int p, const ReductionPhases& phases = {},
                             const ReductionOptions& opts = {});

}  // namespace rtlab
