#include "rtlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "rtlab/errors.hpp"

namespace rtlab {

namespace {

Rational rpow(const Rational& base, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

Rational half_to(int k) { return Rational(BigInt(1), BigInt(1) << k); }

int choose2(int n) { return n * (n - 1) / 2; }

long double lbinom(int n, int k) { return binomial(n, k).convert_to<long double>(); }

class FormList {
public:
  void exact(std::string theorem, std::string expression, const Rational& v) {
    forms.push_back({std::move(theorem), std::move(expression), to_long_double(v), v});
  }
  void maximized(std::string theorem, std::string expression, const std::function<long double(long double)>& f) {
    forms.push_back({std::move(theorem), std::move(expression), maximize_on_unit_interval(f), std::nullopt});
  }
  std::vector<ClosedForm> forms;
};

/// The recurring even-p objective: one 2-cell part of mass x and h-2 single-cell parts sharing 1-x.
/// a, b, c are the binomials printed in front of the three terms.
std::function<long double(long double)> two_cell_objective(int h, int q, long double a, long double b, long double c) {
  return [=](long double x) {
    const long double y = (1 - x) / (h - 2);
    return 0.5L * (x / 2) * (x / 2) * a * std::pow(y, q - 2) + x * b * std::pow(y, q - 1) + c * std::pow(y, q);
  };
}

}  // namespace

long double maximize_on_unit_interval(const std::function<long double(long double)>& f) {
  constexpr int grid = 20000;
  int best_i = 0;
  long double best = f(0);
  for (int i = 1; i <= grid; ++i) {
    const long double v = f(static_cast<long double>(i) / grid);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  long double lo = std::max(0, best_i - 1) / static_cast<long double>(grid);
  long double hi = std::min(grid, best_i + 1) / static_cast<long double>(grid);
  const long double ratio = (std::sqrt(5.0L) - 1) / 2;
  long double a = hi - ratio * (hi - lo), b = lo + ratio * (hi - lo);
  long double fa = f(a), fb = f(b);
  for (int iter = 0; iter < 200 && hi - lo > 1e-18L; ++iter) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + ratio * (hi - lo);
      fb = f(b);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - ratio * (hi - lo);
      fa = f(a);
    }
  }
  return std::max({best, fa, fb});
}

std::vector<ClosedForm> closed_forms(int q, int p) {
  FormList out;
  if (q < 2 || p < q + 1) return {};
  if (p == q + 1) out.exact("q+1", "0", Rational(0));

  const int h = p / 2;
  const bool even = p % 2 == 0;
  const auto odd_form = [&](const char* thm) {
    out.exact(thm, "(1/h)^q C(h,q)", Rational(binomial(h, q)) / rpow(Rational(h), q));
  };

  if (q == 2) {
    if (even && p >= 4) out.exact("edge", "(3h-5)/(6h-4)", Rational(3 * h - 5, 6 * h - 4));
    if (!even && p >= 5) out.exact("edge", "(1/h)^2 C(h,2)", Rational(binomial(h, 2)) / (h * h));
  }
  if (q == 3) {
    if (even && p >= 6) {
      out.maximized("triangle", "max_x 1/2 (x/2)^2 (1-x) + x C(h-2,2) ((1-x)/(h-2))^2 + C(h-2,3) ((1-x)/(h-2))^3",
                    [h](long double x) {
                      const long double y = (1 - x) / (h - 2);
                      return 0.5L * (x / 2) * (x / 2) * (1 - x) + x * lbinom(h - 2, 2) * y * y +
                             lbinom(h - 2, 3) * y * y * y;
                    });
    }
    if (!even && p >= 7) odd_form("triangle");
  }
  if (q == 4) {
    if (p == 6) out.exact("k4", "(1/4)^4 (1/2)^6", rpow(Rational(1, 4), 4) * half_to(6));
    if (p == 7) out.exact("k4", "(1/4)^4 (1/2)^2", rpow(Rational(1, 4), 4) * half_to(2));
    if (p == 8) out.exact("k4", "(1/4)^4 (1/2)", rpow(Rational(1, 4), 4) * half_to(1));
    if (even && p >= 8) {
      out.maximized("k4", "max_x 1/2 (x/2)^2 C(h-2,2) y^2 + x C(h-2,3) y^3 + C(h-2,4) y^4, y = (1-x)/(h-2)",
                    two_cell_objective(h, 4, lbinom(h - 2, 2), lbinom(h - 2, 3), lbinom(h - 2, 4)));
    }
    if (!even && p >= 9) odd_form("k4");
  }
  if (q == 5) {
    const Rational fifth5 = rpow(Rational(1, 5), 5);
    if (p == 7) out.exact("k5", "(1/5)^5 (1/2)^10", fifth5 * half_to(10));
    if (p == 8) out.exact("k5", "(1/5)^5 (1/2)^4", fifth5 * half_to(4));
    if (p == 9) out.exact("k5", "(1/5)^5 (1/2)^2", fifth5 * half_to(2));
    if (p == 10) out.exact("k5", "C(6,5) (1/6)^5 (1/2)^2", Rational(6) * rpow(Rational(1, 6), 5) * half_to(2));
    if (p == 11) {
      out.maximized("k5", "max_x (x/4)^4 (1/2)^2 (1-x) + 4 (x/4)^3 (1/2) ((1-x)/2)^2", [](long double x) {
        const long double c = x / 4;
        return c * c * c * c * 0.25L * (1 - x) + 4 * c * c * c * 0.5L * ((1 - x) / 2) * ((1 - x) / 2);
      });
    }
    if (even && p >= 12) {
      out.maximized("k5", "max_x 1/2 (x/2)^2 C(h-2,3) y^3 + x C(h-2,4) y^4 + C(h-2,5) y^5, y = (1-x)/(h-2)",
                    two_cell_objective(h, 5, lbinom(h - 2, 3), lbinom(h - 2, 4), lbinom(h - 2, 5)));
    }
    if (!even && p >= 13) odd_form("k5");
  }
  const Rational base = rpow(Rational(1, q), q);
  if (p == q + 2) out.exact("q-plus(a)", "(1/q)^q (1/2)^C(q,2)", base * half_to(choose2(q)));
  if (p == q + 3) {
    out.exact("q-plus(a)", "(1/q)^q (1/2)^(C(floor(q/2),2) + C(ceil(q/2),2))",
              base * half_to(choose2(q / 2) + choose2((q + 1) / 2)));
  }
  if (p == q + 4 && q >= 3) {
    out.exact("q-plus(b)", "(1/q)^q (1/2)^(C(floor(q/3),2) + C(floor((q+1)/3),2) + C(floor((q+2)/3),2))",
              base * half_to(choose2(q / 3) + choose2((q + 1) / 3) + choose2((q + 2) / 3)));
  }
  if (q >= 5 && p >= 5 * q) {
    if (even) {
      out.maximized("general-q", "max_x 1/2 (x/2)^2 C(h-2,q-2) y^(q-2) + x C(h-2,q-1) y^(q-1) + C(h-2,q) y^q",
                    two_cell_objective(h, q, lbinom(h - 2, q - 2), lbinom(h - 2, q - 1), lbinom(h - 2, q)));
    } else {
      odd_form("general-q");
    }
  }
  return out.forms;
}

std::optional<ClosedForm> closed_form(int q, int p) {
  auto forms = closed_forms(q, p);
  if (forms.empty()) return std::nullopt;
  return forms.front();
}

DensityResult rt_density(int q, int p, const RtOptions& opts) {
  if (q < 2) throw InputError("rt_density requires q >= 2");
  if (p < q + 1) throw InputError("rt_density requires p >= q + 1");
  DensityResult r;
  r.q = q;
  r.p = p;
  const auto cf = closed_form(q, p);
  if (p == q + 1) {
    r.value.exact = Rational(0);
    r.note = "no profile with s + t <= p - 1 has q cells";
  } else {
    PruningFlags flags;
    flags.part_plus_cell = !opts.loose;
    const auto profiles = candidate_profiles(q, p, flags);
    r.candidates.resize(profiles.size());
    const int jobs = std::max(1, opts.jobs);
    auto work = [&](int offset) {
      for (std::size_t i = offset; i < profiles.size(); i += jobs) {
        r.candidates[i] = {profiles[i], optimize_sizes(profiles[i], q, opts.optimize)};
      }
    };
    std::vector<std::future<void>> tasks;
    for (int j = 1; j < jobs; ++j) tasks.push_back(std::async(std::launch::async, work, j));
    work(0);
    for (auto& t : tasks) t.get();

    long double best = -1;
    for (const auto& c : r.candidates) best = std::max(best, c.result.value.value);
    std::vector<const ProfileOptimum*> tied;
    for (const auto& c : r.candidates) {
      if (best - c.result.value.value <= 1e-12L * best) tied.push_back(&c);
    }
    std::sort(tied.begin(), tied.end(), [](auto a, auto b) { return a->profile < b->profile; });
    for (auto t : tied) r.ties.push_back(t->profile);
    r.best_profile = tied.front()->profile;
    r.best_assignment = tied.front()->result.assignment;
    r.value = tied.front()->result.value;
  }
  if (cf) {
    ClosedFormMatch m;
    m.theorem = cf->theorem;
    m.closed_value = cf->value;
    if (cf->exact && r.value.exact) {
      m.difference = to_long_double(*cf->exact - *r.value.exact);
      m.agrees = *cf->exact == *r.value.exact;
    } else {
      m.difference = r.value.value - cf->value;
      m.agrees = std::fabs(m.difference) <= opts.match_tolerance;
    }
    r.closed_form_match = m;
  } else {
    r.open_region = true;
    r.note = "profile-optimal lower bound, not a proven density";
  }
  return r;
}

Profile conjecture_profile(int q, int p) {
  if (q < 3 || p < q + 2) throw InputError("conjecture_profile requires q >= 3 and p >= q + 2");
  int s, t;
  if (p <= 2 * q - 1) {
    s = q;
    t = p - q - 1;
  } else {
    s = (p - 1 + 1) / 2;
    t = (p - 1) / 2;
  }
  std::vector<int> parts(t, s / t);
  for (int i = 0; i < s % t; ++i) ++parts[i];
  return Profile(parts);
}

DensityValue counterexample_gap(int q, const Profile& a, const Profile& b) {
  if (a.cells() < q || b.cells() < q) throw InputError("counterexample_gap requires both profiles to have at least q cells");
  const auto oa = optimize_sizes(a, q);
  const auto ob = optimize_sizes(b, q);
  DensityValue gap;
  if (oa.value.exact && ob.value.exact) {
    gap.exact = *ob.value.exact - *oa.value.exact;
    gap.value = to_long_double(*gap.exact);
  } else {
    gap.value = ob.value.value - oa.value.value;
  }
  return gap;
}

CounterexampleCertificate counterexample_search(int k, const Rational& c, int q_max) {
  if (k < 1) throw InputError("counterexample_search requires k >= 1");
  if (c <= 0) throw InputError("counterexample_search requires c > 0");
  CounterexampleCertificate cert;
  cert.q_max = q_max;
  cert.rhs = 1 + c;
  const auto lhs = [k](int q) {
    return Rational(binomial(k + q, q)) * rpow(Rational(q, q + k), q) * half_to(2 * k);
  };
  for (int q = 2; q <= q_max; ++q) {
    const Rational v = lhs(q);
    if (v >= cert.rhs) {
      cert.found = true;
      cert.q = q;
      cert.lhs = v;
      break;
    }
  }
  for (int l = 2; 2 * l + 3 * k <= q_max; ++l) {
    const int q = 2 * l + 3 * k;
    if (lhs(q) < cert.rhs) continue;
    cert.parametrized_q = q;
    std::vector<int> a(l, 2), b(l + 2 * k, 2);
    a.insert(a.end(), 3 * k, 1);
    cert.conjectured = Profile(a);
    cert.improved = Profile(b);
    cert.gap = counterexample_gap(q, *cert.conjectured, *cert.improved);
    const auto base = optimize_sizes(*cert.conjectured, q).value;
    if (cert.gap->exact && base.exact) {
      cert.gap_verified = *cert.gap->exact >= c * *base.exact;
    } else {
      cert.gap_verified = cert.gap->value >= to_long_double(c) * base.value;
    }
    break;
  }
  return cert;
}

PartBoundReport verify_part_bounds(int q, int p, long double c) {
  PartBoundReport r;
  if (q < 2 || !(c > 0) || c >= 1) {
    r.in_range = false;
    r.note = "outside the bound's range (needs q >= 2, 0 < c < 1)";
    return r;
  }
  r.bound = c * q / std::log(static_cast<long double>(q));
  if (p < q + r.bound + 1) {
    r.in_range = false;
    r.note = "p below q + c q / ln q + 1; the bound is vacuous";
    return r;
  }
  for (int t = 1; t < r.bound && 2 * t <= p - 1; ++t) {
    const int s = p - 1 - t;
    if (s < q) continue;
    for (const auto& prof : partitions(s, t)) {
      const int k = prof[0];
      if (k > q) continue;
      if (s > q && k >= 3 && !kbound_check(k, q, s)) continue;
      ++r.survivors;
      if (!r.violator) r.violator = prof;
    }
  }
  r.holds = r.survivors == 0;
  return r;
}

WeightedGraph alternative_six_class_graph() {
  WeightedGraph g(6);
  for (int u = 0; u < 6; ++u) {
    for (int v = u + 1; v < 6; ++v) g.set_weight(u, v, (u < 3) == (v < 3) ? Weight::Half : Weight::One);
  }
  g.set_weight(0, 1, Weight::Zero);
  g.set_weight(3, 4, Weight::Zero);
  g.set_weight(2, 5, Weight::Zero);
  return g;
}

}  // namespace rtlab
