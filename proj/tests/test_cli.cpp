#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "rtlab/io.hpp"

using namespace rtlab;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(RTLAB_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t k = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), k);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("rtlab_cli_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST_CASE("density command") {
  const auto r = run("density --q 5 --p 10");
  CHECK(r.code == 0);
  const auto j = parse_json_text(r.out);
  CHECK(j["profile"] == Json::array({2, 2, 2}));
  CHECK(j["value"].get<std::string>().rfind("0.000192901", 0) == 0);
  const auto one = parse_json_text(run("density --q 2 --profile 2,1 --x 4/7,3/7").out);
  CHECK(one["exact"] == "2/7");
}

TEST_CASE("bad input exits with 1") {
  CHECK(run("density --q 5 --p 10 --bogus").code == 1);
  CHECK(run("density --q 5").code == 1);
  CHECK(run("nonsense").code == 1);
  CHECK(run("symmetrize --in /nonexistent.json --q 2 --p 4").code == 1);
  CHECK(run("be --n 10 --s 3 --t 1").code == 1);
}

TEST_CASE("symmetrize round trip through files") {
  const auto in = scratch("g.json"), trace = scratch("trace.json");
  write_text_file(in.string(), R"({"n": 4, "edges": [[0, 1, "1/2"], [1, 2, "1/2"], [0, 2, "1"]]})");
  const auto r = run("symmetrize --check --in " + in.string() + " --q 2 --p 6 --trace " + trace.string());
  CHECK(r.code == 0);
  const auto j = parse_json_text(r.out);
  CHECK(j["profile"].is_array());
  const auto t = read_json_file(trace.string());
  CHECK(t["q"] == 2);
  CHECK(t["steps"].is_array());
  std::filesystem::remove(in);
  std::filesystem::remove(trace);
}

TEST_CASE("skeleton and oracle commands") {
  const auto in = scratch("k3.json");
  write_text_file(in.string(), R"({"n": 3, "edges": [[0, 1, "1"], [0, 2, "1"], [1, 2, "1"]]})");
  const auto s = parse_json_text(run("skeleton --in " + in.string() + " --p 6").out);
  CHECK(s["value"] == 6);
  CHECK(s["skeleton_free"] == false);
  std::filesystem::remove(in);

  const auto o = run("oracle --n 4 --q 2 --p 5 --check");
  CHECK(o.code == 0);
  CHECK(parse_json_text(o.out)["max_value"] == "4");
}

TEST_CASE("table and counterexample commands") {
  const auto t = run("table --q-min 2 --q-max 2 --p-min 4 --p-max 6");
  CHECK(t.code == 0);
  CHECK(t.out.rfind(csv_header() + "\n2,4,", 0) == 0);
  CHECK(std::count(t.out.begin(), t.out.end(), '\n') == 4);
  const auto c = parse_json_text(run("counterexample --k 1 --c 1/100").out);
  CHECK(c["q"] == 10);
}

TEST_CASE("outputs are deterministic") {
  CHECK(run("density --q 4 --p 9").out == run("density --q 4 --p 9").out);
  CHECK(run("be --n 40 --s 3 --t 2").out == run("be --n 40 --s 3 --t 2").out);
  CHECK(run("oracle --n 4 --q 2 --p 4").out == run("oracle --n 4 --q 2 --p 4 --jobs 2").out);
}

TEST_CASE("open cells are marked") {
  const auto t = run("table --q-min 6 --q-max 6 --p-min 20 --p-max 20");
  CHECK(t.out.substr(t.out.size() - 6) == ",open\n");
  CHECK(parse_json_text(run("density --q 6 --p 20").out)["status"] == "open");
}

TEST_CASE("exported graphs reload identically") {
  const auto gpath = scratch("be_graph.json");
  CHECK(run("be --n 36 --s 3 --t 2 --graph-out " + gpath.string()).code == 0);
  const auto g = graph_from_json(read_json_file(gpath.string()));
  CHECK(graph_from_json(parse_json_text(graph_to_json(g).dump())) == g);
  CHECK(g.size() == 36);
  const auto out = scratch("sym.json");
  CHECK(run("symmetrize --in " + gpath.string() + " --q 2 --p 12 --out " + out.string()).code == 0);
  const auto reduced = read_json_file(out.string());
  const auto h = graph_from_json(reduced["graph"]);
  CHECK(graph_to_json(h) == reduced["graph"]);
  for (const auto& p : {gpath, out}) std::filesystem::remove(p);
}

TEST_CASE("be command exports") {
  const auto side = scratch("side.json");
  const auto r = run("be --n 40 --d 10 --s 2 --t 1 --sidecar " + side.string());
  CHECK(r.code == 0);
  const auto j = parse_json_text(r.out);
  CHECK(j["census"]["counts"]["K4"] == 0);
  CHECK(read_json_file(side.string())["points"].size() == 40);
  std::filesystem::remove(side);
  CHECK(run("be --n 200 --s 4 --t 1 --node-cap 3").code == 1);
}
