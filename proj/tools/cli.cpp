#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "causality/dpo.hpp"
#include "causality/error.hpp"
#include "causality/full.hpp"
#include "causality/io.hpp"
#include "causality/lambda.hpp"

namespace causality::cli {

namespace {

using io::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::size_t max_states = lam::default_max_states;
  std::size_t max_steps = 0;  // 0: command default
  std::string format = "json";
  std::string output;
  bool full = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::BadJson, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) { return io::parse_json(read_file(path)); }

std::string term_text(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return read_file(arg);
  return arg;
}

lam::TermPtr read_term(const std::string& arg, const Config& cfg) {
  auto t = lam::parse(term_text(arg));
  if (!cfg.full && !lam::is_good(t))
    throw Error(ErrorCode::NotGood, "some binder occurs more than once in its body; rerun with --full");
  return t;
}

void require_json(const Config& cfg, const std::string& command) {
  if (cfg.format != "json") throw UsageError(command + " only emits json");
}

std::size_t steps_or(const Config& cfg, std::size_t fallback) { return cfg.max_steps ? cfg.max_steps : fallback; }

// ---- hg ----

std::vector<dpo::RewriteRule> read_rules(const std::vector<std::string>& paths) {
  std::vector<dpo::RewriteRule> rules;
  for (const auto& p : paths) rules.push_back(io::rule_from_json(read_json(p)));
  return rules;
}

std::string hg_apply(const Config& cfg, const std::string& rule_path, const std::string& host_path,
                     std::size_t index) {
  require_json(cfg, "hg apply");
  auto rule = io::rule_from_json(read_json(rule_path));
  auto host = io::hypergraph_from_json(read_json(host_path));
  auto matches = dpo::find_matches(rule, host);
  if (index >= matches.size())
    throw Error(ErrorCode::BadIndices,
                "match " + std::to_string(index) + " requested, " + std::to_string(matches.size()) + " found");
  return io::to_json(dpo::apply(matches[index])).dump(2);
}

std::string hg_matches(const Config& cfg, const std::string& rule_path, const std::string& host_path) {
  require_json(cfg, "hg matches");
  auto rule = io::rule_from_json(read_json(rule_path));
  auto host = io::hypergraph_from_json(read_json(host_path));
  json out = json::array();
  auto matches = dpo::find_matches(rule, host);
  for (std::size_t i = 0; i < matches.size(); ++i)
    out.push_back({{"index", i},
                   {"match", io::to_json(matches[i].m)},
                   {"no_dangling_edges", dpo::no_dangling_edges(matches[i])}});
  return out.dump(2);
}

std::string hg_concurrency(const Config& cfg, const std::vector<std::string>& files) {
  require_json(cfg, "hg concurrency");
  if (files.size() < 2) throw UsageError("hg concurrency needs at least one rule file and a host file");
  auto rules = read_rules({files.begin(), files.end() - 1});
  auto host = io::hypergraph_from_json(read_json(files.back()));
  std::vector<dpo::Match> all;
  json listed = json::array();
  for (std::size_t r = 0; r < rules.size(); ++r) {
    auto matches = dpo::find_matches(rules[r], host);
    for (std::size_t i = 0; i < matches.size(); ++i) {
      listed.push_back({{"rule", r}, {"index", i}, {"match", io::to_json(matches[i].m)}});
      all.push_back(matches[i]);
    }
  }
  json together = json::array(), independent = json::array();
  for (const auto& a : all) {
    json row1 = json::array(), row2 = json::array();
    for (const auto& b : all) {
      row1.push_back(dpo::can_happen_together(a, b));
      // Undefined when either match dangles.
      if (dpo::no_dangling_edges(a) && dpo::no_dangling_edges(b))
        row2.push_back(dpo::parallel_independent(a, b));
      else
        row2.push_back(nullptr);
    }
    together.push_back(row1);
    independent.push_back(row2);
  }
  return json{{"matches", listed}, {"together", together}, {"independent", independent}}.dump(2);
}

std::string hg_step(const Config& cfg, const std::vector<std::string>& files) {
  if (files.size() < 2) throw UsageError("hg step needs at least one rule file and a host file");
  auto rules = read_rules({files.begin(), files.end() - 1});
  auto host = io::hypergraph_from_json(read_json(files.back()));
  std::size_t depth_limit = steps_or(cfg, 3);

  StateGraph<hg::Hypergraph, std::size_t> g;
  std::map<std::string, std::size_t> index;
  std::vector<std::size_t> depth;
  g.states.push_back(hg::canonical_form(host));
  index.emplace(hg::to_string(g.states[0]), 0);
  depth.push_back(0);
  for (std::size_t next = 0; next < g.states.size(); ++next) {
    if (depth[next] >= depth_limit) continue;
    for (std::size_t r = 0; r < rules.size(); ++r)
      for (const auto& tr : dpo::step_all({rules[r]}, g.states[next])) {
        std::string key = hg::to_string(tr.target_class);
        auto it = index.find(key);
        std::size_t to;
        if (it == index.end()) {
          if (g.states.size() >= cfg.max_states)
            throw Error(ErrorCode::StateCapExceeded, "more than " + std::to_string(cfg.max_states) + " states");
          to = g.states.size();
          index.emplace(key, to);
          g.states.push_back(tr.target_class);
          depth.push_back(depth[next] + 1);
        } else {
          to = it->second;
        }
        g.transitions.push_back({next, to, r});
      }
  }
  if (cfg.format == "dot")
    return io::to_dot<hg::Hypergraph, std::size_t>(
        g, "evolution", [](const hg::Hypergraph& s) { return hg::to_string(s); },
        [](const std::size_t& r) { return "rule " + std::to_string(r); });
  json states = json::array(), transitions = json::array();
  for (std::size_t i = 0; i < g.states.size(); ++i)
    states.push_back({{"id", "s" + std::to_string(i)}, {"depth", depth[i]}, {"graph", io::to_json(g.states[i])}});
  for (const auto& t : g.transitions)
    transitions.push_back(
        {{"from", "s" + std::to_string(t.from)}, {"to", "s" + std::to_string(t.to)}, {"rule", t.edge}});
  return json{{"states", states}, {"transitions", transitions}}.dump(2);
}

// ---- lam ----

std::string lam_multiway(const Config& cfg, const std::string& arg) {
  auto t = read_term(arg, cfg);
  if (cfg.full) {
    auto g = full::multiway_full(full::annotate(t), cfg.max_states);
    if (cfg.format == "dot")
      return io::to_dot<full::TermPtr, full::FineStep>(
          g, "multiway", [](const full::TermPtr& s) { return full::print(s); },
          [](const full::FineStep& s) { return full::to_string(s); });
    return io::to_json(g).dump(2);
  }
  auto g = lam::multiway(t, cfg.max_states);
  if (cfg.format == "dot")
    return io::to_dot<lam::TermPtr, lam::Label>(
        g, "multiway", [](const lam::TermPtr& s) { return lam::print(s); },
        [](const lam::Label& l) { return std::to_string(l); });
  return io::to_json(g).dump(2);
}

json proper_time_table(const lam::CausalAnalysis& a, const lam::CausalGraph& g) {
  json table = json::array();
  for (const auto& [n, m] : g.relation) table.push_back({{"from", n}, {"to", m}, {"tau", a.proper_time(n, m)}});
  return table;
}

std::string lam_causal(const Config& cfg, const std::string& arg) {
  auto t = read_term(arg, cfg);
  if (cfg.full) {
    auto term = full::annotate(t);
    lam::CausalGraph g;
    json unknown = json::array();
    for (const auto& l : full::event_labels(term)) g.events.insert(l.base);
    for (auto n : g.events)
      for (auto m : g.events) {
        auto v = full::causal_all_paths_full(term, n, m, cfg.max_states);
        if (v == full::Verdict::True) g.relation.emplace(n, m);
        if (v == full::Verdict::Unknown) unknown.push_back(json::array({n, m}));
      }
    if (cfg.format == "dot") return io::to_dot(g);
    json out = io::to_json(g);
    out["unknown"] = unknown;
    return out.dump(2);
  }
  auto msys = lam::multiway(t, cfg.max_states);
  lam::CausalAnalysis analysis(msys);
  auto g = analysis.graph();
  if (cfg.format == "dot") return io::to_dot(g);
  json out = io::to_json(g);
  out["proper_time"] = proper_time_table(analysis, g);
  return out.dump(2);
}

std::string lam_proper_time(const Config& cfg, const std::string& arg, const std::vector<lam::Label>& pair) {
  require_json(cfg, "lam proper-time");
  if (cfg.full) throw UsageError("proper time is only defined for good terms");
  auto t = read_term(arg, cfg);
  auto msys = lam::multiway(t, cfg.max_states);
  lam::CausalAnalysis analysis(msys);
  if (pair.empty()) return proper_time_table(analysis, analysis.graph()).dump(2);
  if (pair.size() != 2) throw UsageError("give two labels or none");
  return json{{"from", pair[0]}, {"to", pair[1]}, {"tau", analysis.proper_time(pair[0], pair[1])}}.dump(2);
}

std::string lam_reduce(const Config& cfg, const std::string& arg) {
  auto t = read_term(arg, cfg);
  std::size_t limit = steps_or(cfg, 1000);
  if (cfg.full) {
    full::FineMultiway path;
    path.states.push_back(full::annotate(t));
    bool normal = false;
    for (;;) {
      auto events = full::reduce_step_full(path.states.back());
      if (events.empty()) {
        normal = true;
        break;
      }
      if (path.transitions.size() >= limit) break;
      path.transitions.push_back({path.states.size() - 1, path.states.size(), events.front().step()});
      path.states.push_back(events.front().target);
    }
    if (cfg.format == "dot")
      return io::to_dot<full::TermPtr, full::FineStep>(
          path, "reduction", [](const full::TermPtr& s) { return full::print(s); },
          [](const full::FineStep& s) { return full::to_string(s); });
    return json{{"path", io::to_json(path)}, {"normal_form", normal}}.dump(2);
  }
  lam::MultiwaySystem path;
  path.states.push_back(t);
  bool normal = false;
  for (;;) {
    auto events = lam::reduce_step(path.states.back());
    if (events.empty()) {
      normal = true;
      break;
    }
    if (path.transitions.size() >= limit) break;
    path.transitions.push_back({path.states.size() - 1, path.states.size(), events.front().label});
    path.states.push_back(events.front().target);
  }
  if (cfg.format == "dot")
    return io::to_dot<lam::TermPtr, lam::Label>(
        path, "reduction", [](const lam::TermPtr& s) { return lam::print(s); },
        [](const lam::Label& l) { return std::to_string(l); });
  return json{{"path", io::to_json(path)}, {"normal_form", normal}}.dump(2);
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::BadJson:
    case ErrorCode::DuplicateLabel:
    case ErrorCode::InvalidGraph:
    case ErrorCode::InvalidRule:
    case ErrorCode::NotAMorphism:
    case ErrorCode::PartialMap:
    case ErrorCode::NotMono:
    case ErrorCode::MismatchedSource:
    case ErrorCode::MismatchedTarget:
    case ErrorCode::UnknownVertex:
    case ErrorCode::UnknownEdge:
      return ParseFailure;
    case ErrorCode::DanglingEdges:
      return Dangling;
    case ErrorCode::BadIndices:
      return BadIndex;
    case ErrorCode::NotGood:
      return NotGood;
    case ErrorCode::StateCapExceeded:
      return CapExceeded;
    default:
      return Failure;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Causal structure of hypergraph rewriting and labelled lambda calculus", "causality"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--max-states", cfg.max_states, "Cap on explored states")->check(CLI::PositiveNumber);
  app.add_option("--max-steps", cfg.max_steps, "Cap on rewriting depth (hg step) or path length (lam reduce)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "dot"}));
  app.add_option("--output", cfg.output, "Write the artifact here instead of stdout");
  app.add_flag("--full", cfg.full, "Use the fully labelled calculus (any term)");

  std::string result;
  std::function<std::string()> action;

  auto* hg = app.add_subcommand("hg", "Hypergraph rewriting");
  hg->require_subcommand(1);
  std::string rule_path, host_path;
  std::size_t match_index = 0;
  std::vector<std::string> files;

  auto* apply = hg->add_subcommand("apply", "Apply a rule at one match");
  apply->add_option("rule", rule_path)->required();
  apply->add_option("host", host_path)->required();
  apply->add_option("--match", match_index, "Index into the match list");
  apply->callback([&] { action = [&] { return hg_apply(cfg, rule_path, host_path, match_index); }; });

  auto* matches = hg->add_subcommand("matches", "List matches of a rule");
  matches->add_option("rule", rule_path)->required();
  matches->add_option("host", host_path)->required();
  matches->callback([&] { action = [&] { return hg_matches(cfg, rule_path, host_path); }; });

  auto* concurrency = hg->add_subcommand("concurrency", "Pairwise concurrency of all matches");
  concurrency->add_option("files", files, "Rule files followed by the host file")->required();
  concurrency->callback([&] { action = [&] { return hg_concurrency(cfg, files); }; });

  auto* step = hg->add_subcommand("step", "Evolve a host under rules, up to isomorphism");
  step->add_option("files", files, "Rule files followed by the host file")->required();
  step->callback([&] { action = [&] { return hg_step(cfg, files); }; });

  auto* lamc = app.add_subcommand("lam", "Labelled lambda calculus");
  lamc->require_subcommand(1);
  std::string term;
  std::vector<lam::Label> pair;

  auto* multiway = lamc->add_subcommand("multiway", "Multiway system of a term");
  multiway->add_option("term", term, "Term text or a file holding it")->required();
  multiway->callback([&] { action = [&] { return lam_multiway(cfg, term); }; });

  auto* causal = lamc->add_subcommand("causal", "Causal graph and proper times");
  causal->add_option("term", term, "Term text or a file holding it")->required();
  causal->callback([&] { action = [&] { return lam_causal(cfg, term); }; });

  auto* proper = lamc->add_subcommand("proper-time", "Proper time between two events, or all of them");
  proper->add_option("term", term, "Term text or a file holding it")->required();
  proper->add_option("labels", pair, "Two event labels");
  proper->callback([&] { action = [&] { return lam_proper_time(cfg, term, pair); }; });

  auto* reduce = lamc->add_subcommand("reduce", "Follow the first event until a normal form");
  reduce->add_option("term", term, "Term text or a file holding it")->required();
  reduce->callback([&] { action = [&] { return lam_reduce(cfg, term); }; });

  for (auto* sub : {hg, apply, matches, concurrency, step, lamc, multiway, causal, proper, reduce}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? Ok : Failure;
  }

  try {
    result = action();
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << '\n';
    return ParseFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return Failure;
  }

  if (cfg.output.empty()) {
    out << result << '\n';
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << cfg.output << '\n';
      return Failure;
    }
    file << result << '\n';
  }
  return Ok;
}

}  // namespace causality::cli
