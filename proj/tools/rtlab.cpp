// rtlab: command-line front end for the Ramsey-Turan density toolkit.
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rtlab/be.hpp"
#include "rtlab/errors.hpp"
#include "rtlab/io.hpp"
#include "rtlab/oracle.hpp"
#include "rtlab/profile.hpp"
#include "rtlab/skeleton.hpp"
#include "rtlab/solver.hpp"
#include "rtlab/symmetrize.hpp"

using namespace rtlab;

namespace {

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("expected a comma-separated integer list, got '" + text + "'");
    }
  }
  return out;
}

SizeAssignment parse_assignment_list(const std::string& text) {
  std::vector<Rational> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_rational(item));
  return SizeAssignment::from_rationals(v);
}

void print_config(const CLI::App* sub) {
  std::cerr << "rtlab " << sub->get_name() << ":";
  for (const auto* opt : sub->get_options()) {
    if (opt->get_name() == "--help") continue;
    std::string value;
    if (opt->count() > 0) {
      for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
      if (opt->get_expected_max() == 0) value = "true";
    } else {
      value = opt->get_default_str();
      if (value.empty()) value = opt->get_expected_max() == 0 ? "false" : "-";
    }
    std::cerr << ' ' << opt->get_name().substr(opt->get_name().find_first_not_of('-')) << '=' << value;
  }
  std::cerr << '\n';
}

void emit(const Json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

PruningFlags parse_pruning(const std::string& text) {
  if (text == "all") return PruningFlags::all();
  PruningFlags f;
  if (text == "none") return f;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "part-plus-cell") f.part_plus_cell = true;
    else if (item == "cell-lemma-1") f.cell_lemma_one = true;
    else if (item == "cell-lemma-2") f.cell_lemma_two = true;
    else if (item == "no31") f.no_three_one = true;
    else throw InputError("unknown pruning rule '" + item + "'");
  }
  return f;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Ramsey-Turan clique densities"};
  app.require_subcommand(1);

  int jobs = 1;
  if (const char* env = std::getenv("RTLAB_JOBS")) {
    try {
      jobs = std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      std::cerr << "error: RTLAB_JOBS must be an integer\n";
      return 1;
    }
  }
  std::string out;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--jobs", jobs, "worker threads (default $RTLAB_JOBS or 1)")->capture_default_str();
    sub->add_option("--out", out, "write the result to this file instead of stdout");
  };

  int q = 0, p = 0;
  bool loose = false;
  std::string profile_text, x_text;
  auto* density = app.add_subcommand("density", "R_q(p) over profile graphs, or one profile's density");
  density->add_option("--q", q)->required();
  density->add_option("--p", p);
  density->add_flag("--loose", loose, "also admit profiles with s + t < p - 1");
  density->add_option("--profile", profile_text, "evaluate this profile, e.g. 2,1,1,1");
  density->add_option("--x", x_text, "part masses for --profile, e.g. 2/5,1/5,1/5,1/5");
  add_common(density);

  std::string prune = "part-plus-cell";
  auto* profiles = app.add_subcommand("profiles", "candidate profiles with s + t <= p - 1");
  profiles->add_option("--q", q)->required();
  profiles->add_option("--p", p)->required();
  profiles->add_option("--pruning", prune, "all, none, or a list of part-plus-cell,cell-lemma-1,cell-lemma-2,no31")
      ->capture_default_str();
  add_common(profiles);

  OptimizeOptions optimize_opts;
  std::string in;
  auto* optimize = app.add_subcommand("optimize", "maximize one profile's density over part masses");
  optimize->add_option("--q", q)->required();
  optimize->add_option("--profile", profile_text, "profile, e.g. 2,2,1,1");
  optimize->add_option("--in", in, "profile JSON file");
  optimize->add_option("--starts", optimize_opts.starts)->capture_default_str();
  optimize->add_option("--seed", optimize_opts.seed)->capture_default_str();
  add_common(optimize);

  std::string trace_path, phases_text = "1,2,3";
  bool no_skeleton_checks = false, check = false;
  auto* symmetrize = app.add_subcommand("symmetrize", "reduce a weighted graph to a profile graph");
  symmetrize->add_option("--in", in, "graph JSON")->required();
  symmetrize->add_option("--q", q)->required();
  symmetrize->add_option("--p", p)->required();
  symmetrize->add_option("--trace", trace_path, "write the reduction trace JSON here");
  symmetrize->add_option("--phases", phases_text, "subset of 1,2,3")->capture_default_str();
  symmetrize->add_flag("--skip-skeleton-checks", no_skeleton_checks);
  symmetrize->add_flag("--check", check, "exit 2 unless the output is a skeleton-free profile graph");
  add_common(symmetrize);

  auto* skeleton = app.add_subcommand("skeleton", "maximum skeleton value of a weighted graph");
  skeleton->add_option("--in", in, "graph JSON")->required();
  skeleton->add_option("--p", p, "also report p-skeleton-freeness");
  add_common(skeleton);

  int n = 0, witnesses = 0;
  std::string witness_out;
  auto* oracle = app.add_subcommand("oracle", "exhaustive maximum of N_q over small skeleton-free graphs");
  oracle->add_option("--n", n)->required();
  oracle->add_option("--q", q)->required();
  oracle->add_option("--p", p)->required();
  oracle->add_option("--witnesses", witnesses, "dump this many maximizers")->capture_default_str();
  oracle->add_option("--witness-out", witness_out, "file for the witness graphs");
  oracle->add_flag("--check", check, "exit 2 unless a profile realization attains the maximum");
  add_common(oracle);

  SphereConfig sphere;
  int s = 2, t = 1, q_max = 4;
  std::uint64_t node_cap = 0;
  std::string graph_out, sidecar_out;
  auto* be = app.add_subcommand("be", "geometric G(n;s,t) construction with clique census");
  be->add_option("--d", sphere.d)->capture_default_str();
  be->add_option("--n", sphere.n)->capture_default_str();
  be->add_option("--eps", sphere.eps)->capture_default_str();
  be->add_option("--seed", sphere.seed)->capture_default_str();
  be->add_option("--s", s)->capture_default_str();
  be->add_option("--t", t)->capture_default_str();
  be->add_option("--x", x_text, "part masses (default uniform)");
  be->add_option("--q-max", q_max)->capture_default_str();
  be->add_option("--node-cap", node_cap, "census node budget, 0 for none")->capture_default_str();
  be->add_option("--graph-out", graph_out, "graph JSON export");
  be->add_option("--sidecar", sidecar_out, "points and class labels JSON");
  add_common(be);

  int k = 1, search_q_max = 400;
  std::string c_text = "1/100", a_text, b_text;
  auto* counter = app.add_subcommand("counterexample", "counterexample inequality search, or a profile gap");
  counter->add_option("--k", k)->capture_default_str();
  counter->add_option("--c", c_text)->capture_default_str();
  counter->add_option("--search-q-max", search_q_max)->capture_default_str();
  counter->add_option("--q", q, "with --a and --b: report the density gap");
  counter->add_option("--a", a_text, "conjectured profile");
  counter->add_option("--b", b_text, "competing profile");
  add_common(counter);

  int tq_min = 2, tq_max = 5, tp_min = 4, tp_max = 14;
  auto* table = app.add_subcommand("table", "CSV grid of R_q(p) against the closed forms");
  table->add_option("--q-min", tq_min)->capture_default_str();
  table->add_option("--q-max", tq_max)->capture_default_str();
  table->add_option("--p-min", tp_min)->capture_default_str();
  table->add_option("--p-max", tp_max)->capture_default_str();
  add_common(table);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    print_config(sub);
    jobs = std::max(1, jobs);

    if (sub == density) {
      if (!profile_text.empty()) {
        const Profile prof(parse_int_list(profile_text));
        const auto a = x_text.empty() ? SizeAssignment::uniform(prof.parts()) : parse_assignment_list(x_text);
        Json j{{"profile", prof.sizes()}, {"q", q}, {"assignment", assignment_to_json(a)["x"]}};
        const auto v = density_value_to_json(density_at(prof, a, q));
        j["value"] = v["value"];
        j["exact"] = v["exact"];
        emit(j, out);
      } else {
        if (p == 0) throw InputError("density needs --p unless --profile is given");
        RtOptions o;
        o.loose = loose;
        o.jobs = jobs;
        emit(density_result_to_json(rt_density(q, p, o)), out);
      }
    } else if (sub == profiles) {
      Json arr = Json::array();
      for (const auto& prof : candidate_profiles(q, p, parse_pruning(prune))) arr.push_back(prof.sizes());
      emit(Json{{"q", q}, {"p", p}, {"profiles", arr}}, out);
    } else if (sub == optimize) {
      if (profile_text.empty() == in.empty()) throw InputError("optimize needs exactly one of --profile or --in");
      const Profile prof = in.empty() ? Profile(parse_int_list(profile_text)) : profile_from_json(read_json_file(in));
      const auto r = optimize_sizes(prof, q, optimize_opts);
      Json j{{"profile", prof.sizes()}, {"q", q}, {"assignment", assignment_to_json(r.assignment)["x"]}};
      const auto v = density_value_to_json(r.value);
      j["value"] = v["value"];
      j["exact"] = v["exact"];
      j["effective_dimension"] = r.effective_dimension;
      j["certified_rational"] = r.certified_rational;
      emit(j, out);
    } else if (sub == symmetrize) {
      const auto g = graph_from_json(read_json_file(in));
      ReductionPhases phases{false, false, false};
      for (int ph : parse_int_list(phases_text)) {
        if (ph == 1) phases.cellularize = true;
        else if (ph == 2) phases.triangles = true;
        else if (ph == 3) phases.balance = true;
        else throw InputError("phases are 1, 2 and 3");
      }
      ReductionOptions ro;
      ro.check_skeletons = !no_skeleton_checks;
      ro.jobs = jobs;
      const auto r = zykov_reduce(g, q, p, phases, ro);
      if (!trace_path.empty()) write_text_file(trace_path, trace_to_json(r.trace, q, p).dump(2) + "\n");
      const auto before = count_cliques(g, q, jobs), after = count_cliques(r.graph, q, jobs);
      Json j{{"graph", graph_to_json(r.graph)},
             {"profile", r.profile ? Json(r.profile->sizes()) : Json(nullptr)},
             {"n_q_before", before.to_string()},
             {"n_q_after", after.to_string()},
             {"steps", r.trace.steps.size()}};
      emit(j, out);
      if (after < before) throw VerificationError("N_q decreased from " + before.to_string() + " to " + after.to_string());
      if (check) {
        if (!is_skeleton_free(r.graph, p)) throw VerificationError("output contains a " + std::to_string(p) + "-skeleton");
        if (!r.profile) throw VerificationError("output is not a profile graph");
        const auto d = std::get<CellularDecomposition>(cellular_decomposition(r.graph));
        if (implied_graph(d) != r.graph) throw VerificationError("output is not a profile graph");
      }
    } else if (sub == skeleton) {
      const auto g = graph_from_json(read_json_file(in));
      const auto r = max_skeleton_value(g);
      Json j{{"value", r.value}, {"x", r.witness.x}, {"y", r.witness.y}};
      if (p > 0) j["skeleton_free"] = r.value <= p - 1;
      emit(j, out);
    } else if (sub == oracle) {
      OracleOptions oo;
      oo.jobs = jobs;
      oo.witness_limit = witnesses;
      const auto r = brute_force_max(n, q, p, oo);
      if (!witness_out.empty()) {
        Json arr = Json::array();
        for (const auto& w : r.witnesses) arr.push_back(graph_to_json(w));
        write_text_file(witness_out, arr.dump(2) + "\n");
      }
      emit(search_report_to_json(r), out);
      if (check && !r.profile_witness) throw VerificationError("no profile realization attains the maximum");
    } else if (sub == be) {
      const auto a = x_text.empty() ? SizeAssignment::uniform(t) : parse_assignment_list(x_text);
      const auto g = build_construction(sphere, s, t, a);
      if (!graph_out.empty()) write_text_file(graph_out, graph_to_json(g.to_weighted()).dump() + "\n");
      if (!sidecar_out.empty()) write_text_file(sidecar_out, sidecar_to_json(g).dump() + "\n");
      Json j{{"n", g.size()}, {"s", s}, {"t", t}, {"mu", decimal_string(g.mu, 12)}, {"resamples", g.resamples}};
      j["census"] = census_to_json(clique_census(g, q_max, node_cap));
      j["report"] = structural_report_to_json(structural_report(g));
      emit(j, out);
    } else if (sub == counter) {
      if (!a_text.empty() || !b_text.empty()) {
        if (a_text.empty() || b_text.empty() || q == 0) throw InputError("a profile gap needs --q, --a and --b");
        const auto gap = counterexample_gap(q, Profile(parse_int_list(a_text)), Profile(parse_int_list(b_text)));
        emit(Json{{"q", q}, {"gap", density_value_to_json(gap)}}, out);
      } else {
        const auto cert = counterexample_search(k, parse_rational(c_text), search_q_max);
        Json j{{"k", k}, {"c", rational_string(parse_rational(c_text))}, {"found", cert.found}, {"q_max", cert.q_max}};
        if (cert.found) {
          j["q"] = cert.q;
          j["lhs"] = rational_string(cert.lhs);
          j["lhs_decimal"] = decimal_string(cert.lhs);
          j["rhs"] = rational_string(cert.rhs);
        }
        if (cert.parametrized_q) {
          j["parametrized_q"] = *cert.parametrized_q;
          j["conjectured_profile"] = cert.conjectured->sizes();
          j["improved_profile"] = cert.improved->sizes();
          j["gap"] = density_value_to_json(*cert.gap);
          j["gap_verified"] = cert.gap_verified;
        }
        emit(j, out);
      }
    } else if (sub == table) {
      std::ostringstream csv;
      csv << csv_header() << '\n';
      RtOptions o;
      o.jobs = jobs;
      for (int tq = tq_min; tq <= tq_max; ++tq) {
        for (int tp = std::max(tp_min, tq + 1); tp <= tp_max; ++tp) csv << csv_row(rt_density(tq, tp, o)) << '\n';
      }
      if (out.empty()) {
        std::cout << csv.str();
      } else {
        write_text_file(out, csv.str());
      }
    }
  } catch (const ResourceCapError& e) {
    std::cerr << "error: resource cap " << e.cap() << ": " << e.what() << '\n';
    return 1;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
