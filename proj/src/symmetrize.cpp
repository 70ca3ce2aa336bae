#include "rtlab/symmetrize.hpp"

#include <algorithm>

#include "rtlab/errors.hpp"
#include "rtlab/skeleton.hpp"

namespace rtlab {

namespace {

constexpr const char* kStepNames[] = {"symmetrize-vertex", "triangle-R_x", "triangle-R_y", "re-cellularize",
                                      "balance-cells"};

/// dst takes src's weight on every v where both are positive.
WeightedGraph copy_where_positive(const WeightedGraph& g, int dst, int src) {
  WeightedGraph h = g;
  for (int v = 0; v < g.size(); ++v) {
    if (v == dst || v == src) continue;
    if (g.weight(dst, v) != Weight::Zero && g.weight(src, v) != Weight::Zero) h.set_weight(dst, v, g.weight(src, v));
  }
  return h;
}

/// u and v are adjacent to the same vertices outside {u, v}.
bool same_support(const WeightedGraph& g, int u, int v) {
  Bitset a = g.support(u), b = g.support(v);
  a.reset(v);
  b.reset(u);
  return a == b;
}

class Reducer {
public:
  Reducer(int q, int p, const ReductionOptions& opts, ReductionTrace* trace) : q_(q), p_(p), opts_(opts), trace_(trace) {}

  /// Phase one; steps are recorded under `kind`.
  WeightedGraph cellularize(WeightedGraph g, StepKind kind, std::vector<TraceStep>* steps) const {
    std::vector<int> unprocessed(g.size());
    for (int v = 0; v < g.size(); ++v) unprocessed[v] = v;
    while (!unprocessed.empty()) {
      int best = unprocessed.front();
      DyadicRational best_w = vertex_q_weight(g, best, q_);
      for (std::size_t i = 1; i < unprocessed.size(); ++i) {
        const auto w = vertex_q_weight(g, unprocessed[i], q_);
        if (w > best_w) {
          best_w = w;
          best = unprocessed[i];
        }
      }
      std::vector<int> rest;
      for (int y : unprocessed) {
        if (y == best) continue;
        if (g.weight(y, best) != Weight::Zero) {
          rest.push_back(y);
          continue;
        }
        WeightedGraph h = symmetrize_vertex(g, y, best);
        if (h == g) continue;
        const auto before = count_cliques(g, q_, opts_.jobs);
        const auto after = count_cliques(h, q_, opts_.jobs);
        if (after < before) {
          throw VerificationError("symmetrizing " + std::to_string(y) + " to " + std::to_string(best) +
                                  " decreased N_q from " + before.to_string() + " to " + after.to_string());
        }
        check_skeleton(h, "symmetrization");
        if (steps) steps->push_back({kind, {y, best}, before, after});
        g = std::move(h);
      }
      unprocessed = std::move(rest);
    }
    return g;
  }

  WeightedGraph remove_triangles(WeightedGraph g) const {
    std::size_t rounds = 0;
    const std::size_t cap = 10 * static_cast<std::size_t>(g.size()) * g.size() + 100;
    while (true) {
      const auto triangles = all_half_half_one_triangles(g);
      if (triangles.empty()) return g;
      if (++rounds > cap) throw VerificationError("triangle removal exceeded its round cap");
      const auto n_now = count_cliques(g, q_, opts_.jobs);
      bool progressed = false;
      for (const auto& tri : triangles) {
        for (int base : {tri.y, tri.z}) {
          const WeightedGraph rx = copy_where_positive(g, tri.x, base);
          const WeightedGraph ry = copy_where_positive(g, base, tri.x);
          const auto nx = count_cliques(rx, q_, opts_.jobs);
          const auto ny = count_cliques(ry, q_, opts_.jobs);
          if (same_support(g, tri.x, base)) {
            ++trace_->sum_checks;
            if (nx + ny < n_now + n_now) ++trace_->sum_failures;
          } else if (nx + ny < n_now + n_now) {
            ++trace_->unequal_support_sum_failures;
          }
          if (nx < n_now && ny < n_now) ++trace_->dichotomy_failures;
          for (bool use_x : {true, false}) {
            std::vector<TraceStep> steps;
            const auto& raw = use_x ? rx : ry;
            const int dst = use_x ? tri.x : base, src = use_x ? base : tri.x;
            steps.push_back({use_x ? StepKind::TriangleRx : StepKind::TriangleRy, {tri.x, tri.y, tri.z, dst, src},
                             n_now, use_x ? nx : ny});
            WeightedGraph h = cellularize(raw, StepKind::ReCellularize, &steps);
            const auto n_new = steps.back().after;
            if (n_new < n_now) continue;
            if (n_new == n_now && count_half_half_one_triangles(h) >= triangles.size()) continue;
            if (!is_skeleton_free(h, p_)) continue;
            if (opts_.check_skeletons) check_skeleton(raw, "triangle move");
            trace_->steps.insert(trace_->steps.end(), steps.begin(), steps.end());
            g = std::move(h);
            progressed = true;
            break;
          }
          if (progressed) break;
        }
        if (progressed) break;
      }
      if (!progressed) {
        throw VerificationError("no R_x/R_y option keeps N_q and reduces the (1/2,1/2,1)-triangle count (" +
                                std::to_string(triangles.size()) + " triangles, N_q = " + n_now.to_string() + ")");
      }
    }
  }

  WeightedGraph balance(WeightedGraph g) const {
    while (true) {
      const auto result = cellular_decomposition(g);
      const auto* d = std::get_if<CellularDecomposition>(&result);
      if (!d) throw VerificationError("balancing requires a cellular, triangle-free graph");
      bool moved = false;
      for (const auto& part : d->parts) {
        int big = part.front(), small = part.front();
        for (int c : part) {
          if (d->cells[c].size() > d->cells[big].size()) big = c;
          if (d->cells[c].size() < d->cells[small].size()) small = c;
        }
        if (d->cells[big].size() <= d->cells[small].size() + 1) continue;
        const int y = d->cells[big].back(), x = d->cells[small].front();
        WeightedGraph h = g;
        h.copy_row(y, x);
        h.set_weight(x, y, Weight::Zero);
        const auto before = count_cliques(g, q_, opts_.jobs);
        const auto after = count_cliques(h, q_, opts_.jobs);
        if (after < before) throw VerificationError("cell balancing decreased N_q");
        check_skeleton(h, "cell balancing");
        trace_->steps.push_back({StepKind::BalanceCells, {y, x}, before, after});
        g = std::move(h);
        moved = true;
        break;
      }
      if (!moved) return g;
    }
  }

private:
  void check_skeleton(const WeightedGraph& h, const char* what) const {
    if (opts_.check_skeletons && !is_skeleton_free(h, p_)) {
      throw VerificationError(std::string(what) + " created a " + std::to_string(p_) + "-skeleton");
    }
  }

  int q_, p_;
  ReductionOptions opts_;
  ReductionTrace* trace_;
};

}  // namespace

std::string step_kind_name(StepKind kind) { return kStepNames[static_cast<int>(kind)]; }

StepKind parse_step_kind(const std::string& name) {
  for (int i = 0; i < 5; ++i) {
    if (name == kStepNames[i]) return static_cast<StepKind>(i);
  }
  throw InputError("unknown step kind '" + name + "'");
}

WeightedGraph symmetrize_vertex(const WeightedGraph& g, int y, int x) {
  if (x == y) throw InputError("symmetrize_vertex needs two distinct vertices");
  if (g.weight(x, y) != Weight::Zero) {
    throw InputError("symmetrize_vertex: vertices " + std::to_string(x) + " and " + std::to_string(y) + " are adjacent");
  }
  WeightedGraph h = g;
  h.copy_row(y, x);
  return h;
}

ReductionResult zykov_reduce(const WeightedGraph& g, int q, int p, const ReductionPhases& phases,
                             const ReductionOptions& opts) {
  if (q < 2 || q >= p) throw InputError("zykov_reduce requires 2 <= q < p");
  if (!is_skeleton_free(g, p)) throw InputError("input graph contains a " + std::to_string(p) + "-skeleton");
  ReductionResult r;
  Reducer reducer(q, p, opts, &r.trace);
  WeightedGraph cur = g;
  if (phases.cellularize) cur = reducer.cellularize(std::move(cur), StepKind::SymmetrizeVertex, &r.trace.steps);
  if (phases.triangles) cur = reducer.remove_triangles(std::move(cur));
  const auto decomposition = cellular_decomposition(cur);
  if (const auto* d = std::get_if<CellularDecomposition>(&decomposition)) {
    if (phases.balance) cur = reducer.balance(std::move(cur));
    const auto final_d = std::get<CellularDecomposition>(cellular_decomposition(cur));
    r.profile = Profile(final_d.profile());
    (void)d;
  }
  r.graph = std::move(cur);
  return r;
}

}  // namespace rtlab
