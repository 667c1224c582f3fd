#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "causality/io.hpp"
#include "cli.hpp"
#include "support/dot_grammar.hpp"
#include "support/graph_oracles.hpp"

using namespace causality;
using io::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(TEST_DATA_DIR) + "/" + name; }

const std::string worked = "(\\x. x@1 a) @2 (\\y. y)";
const std::string four_events = "(((\\x. \\y. x@1 y)@2 \\z. z)@3 \\v. v)@4 b";
const std::string five_events = "(((\\x. \\y. (x) y) \\z. z) (\\u. \\v. v) a) b";

}  // namespace

TEST_CASE("lam causal on the worked example") {
  auto r = run({"lam", "causal", worked});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["relation"] == json::array({json::array({2, 1})}));
  CHECK(j["proper_time"] == json::array({{{"from", 2}, {"to", 1}, {"tau", 1}}}));

  auto m = run({"lam", "multiway", worked});
  REQUIRE(m.code == 0);
  auto g = io::multiway_from_json(json::parse(m.out));
  CHECK(g.states.size() == 3);
  CHECK(g.transitions.size() == 2);

  auto normal = json::parse(run({"lam", "causal", "\\x. x"}).out);
  CHECK(normal["relation"].empty());
  CHECK(normal["events"].empty());
}

TEST_CASE("lam multiway DOT for the four-event term") {
  auto r = run({"--format", "dot", "lam", "multiway", data("four_events.term")});
  REQUIRE(r.code == 0);
  CHECK(oracle::dot_problem(r.out) == "");
  CHECK(r.out.rfind("digraph multiway {\n  s0 [label=", 0) == 0);
  std::size_t nodes = 0, edges = 0;
  std::istringstream lines(r.out);
  for (std::string line; std::getline(lines, line);) {
    if (line.find(" -> ") != std::string::npos)
      ++edges;
    else if (line.rfind("  s", 0) == 0)
      ++nodes;
  }
  CHECK(nodes == 6);
  CHECK(edges == 6);
}

TEST_CASE("lam causal DOT for the five-event term") {
  auto r = run({"lam", "causal", five_events, "--format", "dot"});
  REQUIRE(r.code == 0);
  CHECK(oracle::dot_problem(r.out) == "");
  for (const char* e : {"e2 -> e1", "e2 -> e3", "e2 -> e4", "e2 -> e5", "e1 -> e4", "e3 -> e4", "e1 -> e5",
                        "e3 -> e5", "e4 -> e5"})
    CHECK(r.out.find(std::string(e) + ";") != std::string::npos);
}

TEST_CASE("lam exit codes") {
  CHECK(run({"lam", "multiway", "(\\x. x x) a"}).code == cli::NotGood);
  CHECK(run({"lam", "causal", "(\\x. x"}).code == cli::ParseFailure);
  CHECK(run({"lam", "causal", "a @1 a @1 a"}).code == cli::ParseFailure);
  CHECK(run({"--max-states", "2", "lam", "multiway", four_events}).code == cli::CapExceeded);
  CHECK(run({"--full", "lam", "multiway", "(\\x. x@1 x)@2 (\\x. x@3 x)", "--max-states", "50"}).code ==
        cli::CapExceeded);
  CHECK(run({"lam", "proper-time", four_events, "4", "1"}).code == cli::Failure);
  CHECK(run({"lam"}).code == cli::Failure);
  CHECK(run({"--format", "svg", "lam", "causal", "a"}).code == cli::Failure);
  auto r = run({"lam", "multiway", "(\\x. x x) a"});
  CHECK(r.out.empty());
  CHECK(r.err.find("--full") != std::string::npos);
}

TEST_CASE("lam proper-time and reduce") {
  auto j = json::parse(run({"lam", "proper-time", four_events, "2", "4"}).out);
  CHECK(j["tau"] == 3);
  auto table = json::parse(run({"lam", "proper-time", four_events}).out);
  CHECK(table.size() == 5);

  auto red = json::parse(run({"lam", "reduce", four_events}).out);
  CHECK(red["normal_form"] == true);
  auto path = io::multiway_from_json(red["path"]);
  CHECK(path.transitions.size() == 4);
  CHECK(lam::print(path.states.back()) == "b");

  auto capped = json::parse(run({"--max-steps", "2", "lam", "reduce", four_events}).out);
  CHECK(capped["normal_form"] == false);
}

TEST_CASE("full calculus through the CLI") {
  auto r = run({"--full", "lam", "multiway", "(\\x. x@1 x) ((\\y. y)@2 \\z. z)"});
  REQUIRE(r.code == 0);
  auto g = io::fine_multiway_from_json(json::parse(r.out));
  CHECK(io::to_json(g) == json::parse(r.out));
  CHECK(g.states.size() > 5);

  auto dot = run({"--full", "--format", "dot", "lam", "multiway", "(\\x. x@1 x) ((\\y. y)@2 \\z. z)"});
  CHECK(oracle::dot_problem(dot.out) == "");
  CHECK(dot.out.find("label=\"(3,1)\"") != std::string::npos);

  auto c = json::parse(run({"--full", "lam", "causal", worked}).out);
  CHECK(c["relation"] == json::array({json::array({2, 1})}));
  CHECK(c["unknown"].empty());

  auto red = json::parse(run({"--full", "lam", "reduce", "(\\x. x@1 x) ((\\y. y)@2 \\z. z)"}).out);
  CHECK(red["normal_form"] == true);
  CHECK(io::fine_multiway_from_json(red["path"]).transitions.size() == 5);
}

TEST_CASE("hg apply") {
  auto id = run({"hg", "apply", data("identity_rule.json"), data("triangle.json")});
  REQUIRE(id.code == 0);
  auto event = io::event_from_json(json::parse(id.out));
  CHECK(oracle::isomorphic(event.production, event.match.host));
  CHECK(io::to_json(event) == json::parse(id.out));

  auto split = run({"hg", "apply", data("split_rule.json"), data("triangle.json"), "--match", "2"});
  REQUIRE(split.code == 0);
  CHECK(io::event_from_json(json::parse(split.out)).production.vertex_count() == 4);

  auto dangling = run({"hg", "apply", data("delete_vertex_rule.json"), data("triangle.json")});
  CHECK(dangling.code == cli::Dangling);
  CHECK(dangling.err.find("deleting 1") != std::string::npos);

  CHECK(run({"hg", "apply", data("split_rule.json"), data("triangle.json"), "--match", "3"}).code == cli::BadIndex);
  CHECK(run({"hg", "apply", data("split_rule.json"), data("unknown_key.json")}).code == cli::ParseFailure);
  CHECK(run({"hg", "apply", data("split_rule.json"), data("missing.json")}).code == cli::ParseFailure);
  CHECK(run({"hg", "apply", data("triangle.json"), data("triangle.json")}).code == cli::ParseFailure);
  CHECK(run({"--format", "dot", "hg", "apply", data("identity_rule.json"), data("triangle.json")}).code ==
        cli::Failure);
}

TEST_CASE("hg matches and concurrency") {
  auto m = json::parse(run({"hg", "matches", data("split_rule.json"), data("triangle.json")}).out);
  CHECK(m.size() == 3);
  CHECK(m[0]["no_dangling_edges"] == true);

  auto single = json::parse(run({"hg", "concurrency", data("identity_rule.json"), data("single_edge.json")}).out);
  CHECK(single["together"] == json::array({json::array({true})}));
  CHECK(single["independent"] == json::array({json::array({true})}));

  auto disjoint = json::parse(run({"hg", "concurrency", data("delete_edge_rule.json"), data("two_edges.json")}).out);
  CHECK(disjoint["together"][0][1] == true);
  CHECK(disjoint["independent"][0][1] == true);
  CHECK(disjoint["independent"][1][0] == true);

  auto conflict = json::parse(
      run({"hg", "concurrency", data("identity_rule.json"), data("delete_edge_rule.json"), data("single_edge.json")})
          .out);
  CHECK(conflict["together"][0][1] == false);
  CHECK(conflict["together"][1][0] == false);

  auto dangling =
      json::parse(run({"hg", "concurrency", data("delete_vertex_rule.json"), data("single_edge.json")}).out);
  CHECK(dangling["independent"][0][0].is_null());

  CHECK(run({"hg", "concurrency", data("single_edge.json")}).code == cli::Failure);
}

TEST_CASE("hg step") {
  auto r = run({"hg", "step", data("split_rule.json"), data("triangle.json"), "--max-steps", "1"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["states"].size() == 3);
  CHECK(j["transitions"].size() == 3);
  for (const auto& s : j["states"]) CHECK_NOTHROW(io::hypergraph_from_json(s["graph"]));

  auto dot = run({"hg", "step", data("split_rule.json"), data("triangle.json"), "--format", "dot"});
  CHECK(oracle::dot_problem(dot.out) == "");
  CHECK(run({"--max-states", "2", "hg", "step", data("split_rule.json"), data("triangle.json")}).code ==
        cli::CapExceeded);
}

TEST_CASE("output is byte-identical across runs and honours --output") {
  std::vector<std::vector<std::string>> commands = {
      {"lam", "multiway", four_events},
      {"lam", "causal", five_events},
      {"--format", "dot", "lam", "multiway", five_events},
      {"--full", "lam", "multiway", "(\\x. x@1 x) ((\\y. y)@2 \\z. z)"},
      {"hg", "step", data("split_rule.json"), data("triangle.json"), "--max-steps", "2"},
      {"hg", "concurrency", data("split_rule.json"), data("delete_edge_rule.json"), data("triangle.json")},
  };
  for (const auto& c : commands) {
    auto a = run(c), b = run(c);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }

  auto path = std::filesystem::temp_directory_path() / "causality_cli_test.dot";
  auto r = run({"--output", path.string(), "--format", "dot", "lam", "causal", worked});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == run({"--format", "dot", "lam", "causal", worked}).out);
  std::filesystem::remove(path);
}

TEST_CASE("the DOT checker rejects malformed input") {
  CHECK(oracle::dot_problem("digraph g { a -> b [label=\"x\"]; }") == "");
  CHECK(oracle::dot_problem("graph { a -- b -- c; subgraph s { d } }") == "");
  CHECK(oracle::dot_problem("digraph g { a -- b }") != "");
  CHECK(oracle::dot_problem("digraph g { a -> }") != "");
  CHECK(oracle::dot_problem("digraph g { a [label=\"x] }") != "");
  CHECK(oracle::dot_problem("digraph g { a -> b ") != "");
}
