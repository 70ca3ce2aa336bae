#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>


#include "rtlab/dyadic.hpp"
#include "rtlab/wgraph.hpp"

namespace rtlab {

/// Cells per part (s_1 >= s_2 >= ... >= s_t), every entry >= 1.
class Profile {
public:
  Profile() = default;
  /// Sorts into canonical (descending) order; rejects empty tuples and zero entries.
  explicit Profile(std::vector<int> cells_per_part);

  const std::vector<int>& sizes() const noexcept { return parts_; }
  int parts() const noexcept { return static_cast<int>(parts_.size()); }
  int cells() const noexcept { return cells_; }
  int operator[](int i) const { return parts_[i]; }

  /// "(2,2,1)"
  std::string to_string() const;

  friend bool operator==(const Profile&, const Profile&) = default;
  friend std::strong_ordering operator<=>(const Profile& a, const Profile& b) {
    return a.parts_ <=> b.parts_;
  }

private:
  std::vector<int> parts_;
  int cells_ = 0;
};

/// Part masses x_1..x_t (summing to 1) aligned with Profile::sizes().
/// Each cell of part i has mass x_i / s_i.
struct SizeAssignment {
  std::vector<long double> x;
  std::optional<std::vector<Rational>> exact;

  static SizeAssignment from_rationals(std::vector<Rational> values);
  static SizeAssignment from_reals(std::vector<long double> values);
  static SizeAssignment uniform(int parts);

  int size() const noexcept { return static_cast<int>(x.size()); }
  /// Throws InputError unless entries are >= 0 and sum to 1 (exactly, or within 1e-12).
  void validate(int expected_parts) const;
};

struct DensityValue {
  long double value = 0;
  std::optional<Rational> exact;
};

/// Binomial coefficient C(n, k) as an exact integer (0 outside 0 <= k <= n).
BigInt binomial(int n, int k);

/// Weighted K_q density of the profile graph at part masses `x`:
/// sum over l_1 + ... + l_t = q of prod_i C(s_i, l_i) (x_i / s_i)^l_i (1/2)^C(l_i, 2).
template <class Scalar>
Scalar density_polynomial(const Profile& profile, std::span<const Scalar> x, int q);

/// Partial derivatives of density_polynomial with respect to each x_i.
template <class Scalar>
std::vector<Scalar> density_gradient(const Profile& profile, std::span<const Scalar> x, int q);

DensityValue density_at(const Profile& profile, const SizeAssignment& a, int q);

/// Parts sharing a cell count share mass; this is the reduced coordinate system of the optimizer.
struct ProfileGroups {
  std::vector<int> cells;         // s value of each group (descending)
  std::vector<int> multiplicity;  // parts per group
  int dimension() const noexcept { return static_cast<int>(cells.size()); }
  /// Expands group masses y_g into per-part masses y_g / m_g.
  template <class Scalar>
  std::vector<Scalar> expand(std::span<const Scalar> y) const;
};
ProfileGroups group_profile(const Profile& profile);

struct OptimizeOptions {
  int starts = 16;              // multi-start count for dimension >= 3
  long double refine_step = 1e-10L;
  std::uint64_t seed = 0x5eed;
  int rational_denominator_cap = 20000;
};

struct OptimizeResult {
  SizeAssignment assignment;
  DensityValue value;
  int effective_dimension = 0;
  /// True when the maximizer was recovered as a rational point satisfying the exact first-order conditions.
  bool certified_rational = false;
};

/// Maximizes density_at over the simplex, with parts of equal cell count sharing mass.
OptimizeResult optimize_sizes(const Profile& profile, int q, const OptimizeOptions& opts = {});

/// Integer cell sizes of a realization: part -> cell -> vertex count.
using CellLayout = std::vector<std::vector<int>>;

/// Largest-remainder apportionment of n * x_i to parts, then equal-as-possible cells.
CellLayout realize_layout(const Profile& profile, const SizeAssignment& a, int n);
/// The profile graph with the given cell sizes (cells may not be empty).
WeightedGraph realize_layout_graph(const CellLayout& layout);
WeightedGraph realize(const Profile& profile, const SizeAssignment& a, int n);

/// Cell-size inequality 2^(k-2) (k/(k-1))^(k-1) - k <= (q-k+1)/(s-q), evaluated exactly.
bool kbound_check(int k, int q, int s);

struct PruningFlags {
  bool part_plus_cell = false;  // s + t = p - 1
  bool cell_lemma_one = false;  // every s_i <= q
  bool cell_lemma_two = false;  // largest part passes kbound_check when s > q
  bool no_three_one = false;    // q = 5: no part with 3 cells alongside one with 1 cell

  static PruningFlags all() { return {true, true, true, true}; }
  static PruningFlags none() { return {}; }
};

/// Partitions of s into exactly t parts, descending, each in canonical order.
std::vector<Profile> partitions(int s, int t);

/// Profiles with s >= q and s + t <= p - 1 surviving the selected pruning rules.
std::vector<Profile> candidate_profiles(int q, int p, const PruningFlags& flags);

struct RepartitionDelta {
  Rational edges, triangles, k4;  // closed-form: 3x^2, 10x^3, -81/4 x^4
  bool realization_checked = false;
  DyadicRational realized_edges, realized_triangles, realized_k4;
  bool agrees = true;
};

/// Effect of turning two 2-cell parts (cells 3x) into three 1-cell parts (cells 4x);
/// integral x is cross-checked against exact counts on realizations.
RepartitionDelta repartition_delta(const Rational& x);

}  // namespace rtlab
