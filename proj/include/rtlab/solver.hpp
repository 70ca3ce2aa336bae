#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rtlab/profile.hpp"

namespace rtlab {

/// A theorem's value for R_q(p). `exact` is set when the formula is rational.
struct ClosedForm {
  std::string theorem;
  std::string expression;
  long double value = 0;
  std::optional<Rational> exact;
};

/// Every closed form that covers (q, p); empty when no theorem applies.
std::vector<ClosedForm> closed_forms(int q, int p);
std::optional<ClosedForm> closed_form(int q, int p);

/// Maximum of f over [0, 1] by a dense grid followed by golden-section refinement.
long double maximize_on_unit_interval(const std::function<long double(long double)>& f);

struct ProfileOptimum {
  Profile profile;
  OptimizeResult result;
};

struct ClosedFormMatch {
  std::string theorem;
  long double closed_value = 0;
  long double difference = 0;
  bool agrees = false;
};

struct DensityResult {
  int q = 0, p = 0;
  std::optional<Profile> best_profile;
  std::vector<Profile> ties;  // every profile within tolerance of the optimum, best first
  SizeAssignment best_assignment;
  DensityValue value;
  std::optional<ClosedFormMatch> closed_form_match;
  bool open_region = false;
  std::string note;
  std::vector<ProfileOptimum> candidates;
};

struct RtOptions {
  bool loose = false;  // also admit profiles with s + t < p - 1
  int jobs = 1;
  OptimizeOptions optimize;
  long double match_tolerance = 1e-9L;
};

/// Profile-graph optimum of the K_q density among p-skeleton-free profiles.
DensityResult rt_density(int q, int p, const RtOptions& opts = {});

/// Balanced profile of the conjectured extremal family for (q, p).
Profile conjecture_profile(int q, int p);

/// optimize_sizes(b).value - optimize_sizes(a).value; exact when both optima are certified.
DensityValue counterexample_gap(int q, const Profile& a, const Profile& b);

struct CounterexampleCertificate {
  bool found = false;
  int q = 0;
  Rational lhs;  // C(k+q, q) (q/(q+k))^q (1/2)^(2k)
  Rational rhs;  // 1 + c
  int q_max = 0;
  /// Least q of the form 2l + 3k (l >= 2) satisfying the inequality, with its profiles.
  std::optional<int> parametrized_q;
  std::optional<Profile> conjectured, improved;
  std::optional<DensityValue> gap;
  bool gap_verified = false;
};

/// Least q with C(k+q, q) (q/(q+k))^q 4^-k >= 1 + c, scanning q = 2..q_max.
CounterexampleCertificate counterexample_search(int k, const Rational& c, int q_max = 400);

struct PartBoundReport {
  bool holds = true;
  bool in_range = true;
  long double bound = 0;   // c q / ln q
  int survivors = 0;       // profiles with t below the bound that survived pruning
  std::optional<Profile> violator;
  std::string note;
};

/// For 0 < c < 1 and p >= q + c q / ln q + 1: every profile with s + t = p - 1 surviving the cell-size rules has t >= c q / ln q.
PartBoundReport verify_part_bounds(int q, int p, long double c);

/// Weighted six-class graph: two 3-cell parts fully joined, minus the class pairs 1-2, 4-5, 3-6.
WeightedGraph alternative_six_class_graph();

}  // namespace rtlab
