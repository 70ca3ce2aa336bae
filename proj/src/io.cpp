#include "rtlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "rtlab/errors.hpp"

namespace rtlab {

namespace {

std::pair<int, int> line_column(std::string_view text, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const Json& require(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string(what) + " JSON needs a \"" + key + "\" field");
  return j.at(key);
}

Rational entry_rational(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw InputError("expected a rational string or an integer");
}

Json exact_or_null(const std::optional<Rational>& r) {
  return r ? Json(rational_string(*r)) : Json(nullptr);
}

}  // namespace

Json parse_json_text(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

Json graph_to_json(const WeightedGraph& g) {
  Json edges = Json::array();
  for (int i = 0; i < g.size(); ++i) {
    for (int j = i + 1; j < g.size(); ++j) {
      const auto w = g.weight(i, j);
      if (w != Weight::Zero) edges.push_back(Json::array({i, j, weight_string(w)}));
    }
  }
  return Json{{"n", g.size()}, {"edges", edges}};
}

WeightedGraph graph_from_json(const Json& j) {
  const auto& nj = require(j, "n", "graph");
  if (!nj.is_number_integer() || nj.get<long long>() < 0) throw InputError("graph \"n\" must be a nonnegative integer");
  const int n = nj.get<int>();
  WeightedGraph g(n);
  const auto& edges = require(j, "edges", "graph");
  if (!edges.is_array()) throw InputError("graph \"edges\" must be an array");
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw InputError("each edge must be [i, j, weight]");
    }
    const int a = e[0].get<int>(), b = e[1].get<int>();
    if (a < 0 || b >= n || a >= b) throw InputError("edge [" + std::to_string(a) + ", " + std::to_string(b) + "] needs 0 <= i < j < n");
    if (!seen.insert({a, b}).second) throw InputError("duplicate edge [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    const std::string w = e[2].is_string() ? e[2].get<std::string>() : e[2].dump();
    g.set_weight(a, b, parse_weight(w));
  }
  return g;
}

Json profile_to_json(const Profile& p) { return Json{{"parts", p.sizes()}}; }

Profile profile_from_json(const Json& j) {
  const auto& parts = require(j, "parts", "profile");
  if (!parts.is_array()) throw InputError("profile \"parts\" must be an array");
  std::vector<int> v;
  for (const auto& x : parts) {
    if (!x.is_number_integer()) throw InputError("profile entries must be integers");
    v.push_back(x.get<int>());
  }
  return Profile(v);
}

Json assignment_to_json(const SizeAssignment& a) {
  Json x = Json::array();
  if (a.exact) {
    for (const auto& r : *a.exact) x.push_back(rational_string(r));
  } else {
    for (auto v : a.x) x.push_back(decimal_string(v, 18));
  }
  return Json{{"x", x}};
}

SizeAssignment assignment_from_json(const Json& j) {
  const auto& x = require(j, "x", "assignment");
  if (!x.is_array() || x.empty()) throw InputError("assignment \"x\" must be a nonempty array");
  bool all_exact = true;
  std::vector<Rational> exact;
  std::vector<long double> real;
  for (const auto& v : x) {
    if (v.is_number_float()) {
      all_exact = false;
      real.push_back(v.get<long double>());
    } else {
      exact.push_back(entry_rational(v));
      real.push_back(to_long_double(exact.back()));
    }
  }
  return all_exact ? SizeAssignment::from_rationals(exact) : SizeAssignment::from_reals(real);
}

std::string decimal_string(const Rational& r, int digits) {
  if (r == 0) return "0";
  BigInt num = boost::multiprecision::numerator(r), den = boost::multiprecision::denominator(r);
  std::string sign;
  if (num < 0) {
    sign = "-";
    num = -num;
  }
  // Scale to `digits` significant digits, round half up, then place the point.
  int exp10 = 0;
  BigInt ten = 10;
  while (num >= den * 10) {
    den *= 10;
    ++exp10;
  }
  while (num < den) {
    num *= 10;
    --exp10;
  }
  BigInt scaled = num * boost::multiprecision::pow(ten, digits - 1);
  BigInt q = scaled / den, rem = scaled % den;
  if (rem * 2 >= den) ++q;
  std::string mant = q.str();
  if (static_cast<int>(mant.size()) > digits) {
    mant.pop_back();
    ++exp10;
  }
  while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
  std::string out;
  if (exp10 >= 0) {
    std::string intpart = mant.substr(0, std::min<std::size_t>(mant.size(), exp10 + 1));
    while (static_cast<int>(intpart.size()) < exp10 + 1) intpart += '0';
    out = intpart;
    if (static_cast<int>(mant.size()) > exp10 + 1) out += "." + mant.substr(exp10 + 1);
  } else {
    out = "0." + std::string(-exp10 - 1, '0') + mant;
  }
  return sign + out;
}

std::string decimal_string(long double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lg", digits, v);
  return buf;
}

Json density_value_to_json(const DensityValue& v) {
  return Json{{"value", v.exact ? decimal_string(*v.exact) : decimal_string(v.value)}, {"exact", exact_or_null(v.exact)}};
}

Json trace_to_json(const ReductionTrace& t, int q, int p) {
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    steps.push_back(Json{{"kind", step_kind_name(s.kind)},
                         {"vertices", s.vertices},
                         {"before", s.before.to_string()},
                         {"after", s.after.to_string()}});
  }
  return Json{{"q", q},
              {"p", p},
              {"steps", steps},
              {"sum_checks", t.sum_checks},
              {"sum_failures", t.sum_failures},
              {"unequal_support_sum_failures", t.unequal_support_sum_failures},
              {"dichotomy_failures", t.dichotomy_failures}};
}

Json density_result_to_json(const DensityResult& r) {
  Json j{{"q", r.q}, {"p", r.p}};
  j["profile"] = r.best_profile ? Json(r.best_profile->sizes()) : Json(nullptr);
  Json ties = Json::array();
  for (const auto& t : r.ties) ties.push_back(t.sizes());
  j["ties"] = ties;
  j["assignment"] = r.best_profile ? assignment_to_json(r.best_assignment)["x"] : Json(nullptr);
  const auto v = density_value_to_json(r.value);
  j["value"] = v["value"];
  j["exact"] = v["exact"];
  if (r.closed_form_match) {
    j["closed_form"] = Json{{"theorem", r.closed_form_match->theorem},
                            {"value", decimal_string(r.closed_form_match->closed_value)},
                            {"difference", decimal_string(r.closed_form_match->difference, 3)},
                            {"match", r.closed_form_match->agrees}};
  } else {
    j["closed_form"] = nullptr;
  }
  j["status"] = r.open_region ? "open" : "proven";
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json search_report_to_json(const SearchReport& r) {
  Json j{{"n", r.n},
         {"q", r.q},
         {"p", r.p},
         {"max_value", r.max_value.to_string()},
         {"witness_count", r.witness_count},
         {"graphs_scanned", r.graphs_scanned},
         {"skeleton_free", r.skeleton_free}};
  j["profile_witness"] = r.profile_witness ? Json(r.profile_witness->sizes()) : Json(nullptr);
  j["profile_layout"] = r.profile_layout;
  return j;
}

Json census_to_json(const CliqueCensus& c) {
  Json counts = Json::object();
  for (std::size_t k = 2; k < c.counts.size(); ++k) counts["K" + std::to_string(k)] = c.counts[k];
  return Json{{"counts", counts}, {"omega", c.omega}, {"nodes", c.nodes}};
}

Json structural_report_to_json(const StructuralReport& r) {
  Json cross = Json::array();
  for (const auto& d : r.cross_densities) cross.push_back(Json{{"classes", {d.a, d.b}}, {"density", decimal_string(d.density, 6)}});
  const auto& ind = r.independence;
  return Json{{"n", r.n},
              {"edges", r.edges},
              {"cross_densities", cross},
              {"within_class_edges", r.within_class_edges},
              {"within_class_triangles", r.within_class_triangles},
              {"opposite_degree",
               {{"min", decimal_string(r.min_opposite_degree, 6)},
                {"mean", decimal_string(r.mean_opposite_degree, 6)},
                {"max", decimal_string(r.max_opposite_degree, 6)}}},
              {"independence",
               {{"lower", ind.lower},
                {"lower_method", ind.lower_method},
                {"upper", ind.upper},
                {"upper_method", ind.upper_method},
                {"exact", ind.exact}}}};
}

Json sidecar_to_json(const GeometricGraph& g) {
  Json pts = Json::array();
  for (const auto& p : g.points) {
    Json row = Json::array();
    for (Eigen::Index i = 0; i < p.size(); ++i) row.push_back(static_cast<double>(p[i]));
    pts.push_back(row);
  }
  return Json{{"mu", static_cast<double>(g.mu)}, {"class_of", g.class_of}, {"part_of", g.part_of}, {"points", pts}};
}

std::string csv_header() { return "q,p,profile,assignment,value,exact,closed_form,match"; }

std::string csv_row(const DensityResult& r) {
  std::string profile = r.best_profile ? r.best_profile->to_string() : "";
  std::string assignment;
  if (r.best_profile) {
    const auto& a = r.best_assignment;
    for (int i = 0; i < a.size(); ++i) {
      if (i) assignment += " ";
      assignment += a.exact ? rational_string((*a.exact)[i]) : decimal_string(a.x[i], 12);
    }
  }
  const std::string value = r.value.exact ? decimal_string(*r.value.exact) : decimal_string(r.value.value);
  const std::string exact = r.value.exact ? rational_string(*r.value.exact) : "";
  std::string cf, match;
  if (r.closed_form_match) {
    cf = r.closed_form_match->theorem;
    match = r.closed_form_match->agrees ? "true" : "false";
  } else {
    match = "open";
  }
  std::ostringstream os;
  os << r.q << ',' << r.p << ",\"" << profile << "\",\"" << assignment << "\"," << value << ',' << exact << ',' << cf << ','
     << match;
  return os.str();
}

}  // namespace rtlab
