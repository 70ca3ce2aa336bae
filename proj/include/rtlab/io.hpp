#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "rtlab/be.hpp"
#include "rtlab/oracle.hpp"
#include "rtlab/profile.hpp"
#include "rtlab/solver.hpp"
#include "rtlab/symmetrize.hpp"
#include "rtlab/wgraph.hpp"

namespace rtlab {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become InputError carrying line and column.
Json parse_json_text(std::string_view text, const std::string& source = "input");
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Json graph_to_json(const WeightedGraph& g);
/// {"n": N, "edges": [[i, j, "1" | "1/2"], ...]} with i < j and no repeated pair.
WeightedGraph graph_from_json(const Json& j);

Json profile_to_json(const Profile& p);
Profile profile_from_json(const Json& j);

Json assignment_to_json(const SizeAssignment& a);
/// {"x": ["4/7", "3/7"]} (exact) or decimal numbers / strings.
SizeAssignment assignment_from_json(const Json& j);

/// Decimal rendering with `digits` significant digits.
std::string decimal_string(const Rational& r, int digits = 15);
std::string decimal_string(long double v, int digits = 15);

Json density_value_to_json(const DensityValue& v);
Json trace_to_json(const ReductionTrace& t, int q, int p);
Json density_result_to_json(const DensityResult& r);
Json search_report_to_json(const SearchReport& r);
Json census_to_json(const CliqueCensus& c);
Json structural_report_to_json(const StructuralReport& r);
/// Points and labels of a geometric graph.
Json sidecar_to_json(const GeometricGraph& g);

/// One CSV line of the results table: q,p,profile,assignment,value,exact,closed_form,match.
std::string csv_header();
std::string csv_row(const DensityResult& r);

}  // namespace rtlab
