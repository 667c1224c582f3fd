#include "causality/io.hpp"

#include <set>

#include "causality/error.hpp"

namespace causality::io {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::BadJson, msg); }

void require_object(const json& j, const std::set<std::string>& allowed, const std::string& what) {
  if (!j.is_object()) bad(what + " must be an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.contains(key)) bad("unknown key \"" + key + "\" in " + what);
  for (const auto& key : allowed)
    if (!j.contains(key)) bad("missing key \"" + key + "\" in " + what);
}

std::string ident(const json& j, const std::string& what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  bad(what + " identifiers must be strings or integers");
}

std::uint64_t natural(const json& j, const std::string& what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    bad(what + " must be a non-negative integer");
  return j.get<std::uint64_t>();
}

template <class Id>
json id_map(const std::map<Id, Id>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[k.value] = v.value;
  return out;
}

template <class Id>
std::map<Id, Id> id_map_from(const json& j, const std::string& what) {
  if (!j.is_object()) bad(what + " must be an object");
  std::map<Id, Id> out;
  for (const auto& [k, v] : j.items()) out.emplace(Id(k), Id(ident(v, what)));
  return out;
}

}  // namespace

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(e.what());
  }
}

json to_json(const hg::Hypergraph& g) {
  json vertices = json::array();
  for (const auto& v : g.vertices) vertices.push_back(v.value);
  json edges = json::object();
  for (const auto& [e, tuple] : g.edges) {
    json t = json::array();
    for (const auto& v : tuple) t.push_back(v.value);
    edges[e.value] = t;
  }
  return {{"vertices", vertices}, {"edges", edges}};
}

hg::Hypergraph hypergraph_from_json(const json& j) {
  require_object(j, {"vertices", "edges"}, "hypergraph");
  const json& vs = j.at("vertices");
  const json& es = j.at("edges");
  if (!vs.is_array()) bad("\"vertices\" must be an array");
  if (!es.is_object()) bad("\"edges\" must be an object");
  hg::Hypergraph g;
  for (const auto& v : vs)
    if (!g.vertices.insert(hg::VertexId(ident(v, "vertex"))).second) bad("duplicate vertex " + ident(v, "vertex"));
  for (const auto& [e, tuple] : es.items()) {
    if (!tuple.is_array()) bad("edge " + e + " must map to an array");
    hg::Tuple t;
    for (const auto& v : tuple) t.emplace_back(ident(v, "vertex"));
    g.edges.emplace(hg::EdgeId(e), std::move(t));
  }
  auto problems = hg::validate(g);
  if (!problems.empty()) throw Error(ErrorCode::InvalidGraph, problems.front());
  return g;
}

json to_json(const hg::Morphism& m) { return {{"vmap", id_map(m.vmap)}, {"emap", id_map(m.emap)}}; }

hg::Morphism morphism_from_json(const json& j, const hg::Hypergraph& source, const hg::Hypergraph& target) {
  require_object(j, {"vmap", "emap"}, "morphism");
  hg::Morphism m{source, target, id_map_from<hg::VertexId>(j.at("vmap"), "vmap"),
                 id_map_from<hg::EdgeId>(j.at("emap"), "emap")};
  if (!hg::is_morphism(m)) throw Error(ErrorCode::NotAMorphism, "mapping does not preserve edge tuples");
  return m;
}

json to_json(const dpo::RewriteRule& r) {
  return {{"L", to_json(r.left)}, {"I", to_json(r.interface)}, {"R", to_json(r.right)},
          {"l", to_json(r.l)},    {"r", to_json(r.r)}};
}

dpo::RewriteRule rule_from_json(const json& j) {
  require_object(j, {"L", "I", "R", "l", "r"}, "rule");
  dpo::RewriteRule r;
  r.left = hypergraph_from_json(j.at("L"));
  r.interface = hypergraph_from_json(j.at("I"));
  r.right = hypergraph_from_json(j.at("R"));
  r.l = morphism_from_json(j.at("l"), r.interface, r.left);
  r.r = morphism_from_json(j.at("r"), r.interface, r.right);
  dpo::check_rule(r);
  return r;
}

json to_json(const dpo::DpoEvent& e) {
  return {{"rule", to_json(e.match.rule)},
          {"host", to_json(e.match.host)},
          {"match", to_json(e.match.m)},
          {"complement", to_json(e.complement)},
          {"interface_embed", to_json(e.interface_embed)},
          {"complement_to_host", to_json(e.complement_to_host)},
          {"production", to_json(e.production)},
          {"co_match", to_json(e.co_match)},
          {"complement_to_production", to_json(e.complement_to_production)}};
}

dpo::DpoEvent event_from_json(const json& j) {
  require_object(j,
                 {"rule", "host", "match", "complement", "interface_embed", "complement_to_host", "production",
                  "co_match", "complement_to_production"},
                 "event");
  dpo::DpoEvent e;
  e.match.rule = rule_from_json(j.at("rule"));
  e.match.host = hypergraph_from_json(j.at("host"));
  e.match.m = morphism_from_json(j.at("match"), e.match.rule.left, e.match.host);
  e.complement = hypergraph_from_json(j.at("complement"));
  e.production = hypergraph_from_json(j.at("production"));
  e.interface_embed = morphism_from_json(j.at("interface_embed"), e.match.rule.interface, e.complement);
  e.complement_to_host = morphism_from_json(j.at("complement_to_host"), e.complement, e.match.host);
  e.co_match = morphism_from_json(j.at("co_match"), e.match.rule.right, e.production);
  e.complement_to_production = morphism_from_json(j.at("complement_to_production"), e.complement, e.production);
  return e;
}

json to_json(const full::Label& l) {
  json history = json::array();
  for (const auto& h : l.history) history.push_back(json::array({to_json(h.event), to_json(h.var)}));
  return {{"base", l.base}, {"history", history}};
}

full::Label label_from_json(const json& j) {
  require_object(j, {"base", "history"}, "label");
  full::Label l(natural(j.at("base"), "label base"));
  if (!j.at("history").is_array()) bad("label history must be an array");
  for (const auto& entry : j.at("history")) {
    if (!entry.is_array() || entry.size() != 2) bad("history entries must be [event, variable] pairs");
    l.history.push_back(full::HistoryEntry{label_from_json(entry[0]), label_from_json(entry[1])});
  }
  return l;
}

json to_json(const full::TermPtr& t) {
  if (const auto* v = full::as_var(t)) return {{"var", {{"name", v->name}, {"label", to_json(v->label)}}}};
  if (const auto* a = full::as_abs(t))
    return {{"abs", {{"binder", a->binder}, {"count", a->count}, {"body", to_json(a->body)}}}};
  const auto& p = std::get<full::App>(t->node);
  return {{"app", {{"label", to_json(p.label)}, {"fun", to_json(p.fun)}, {"arg", to_json(p.arg)}}}};
}

full::TermPtr full_term_from_json(const json& j) {
  if (!j.is_object() || j.size() != 1) bad("term must be an object with one of var, abs, app");
  if (j.contains("var")) {
    const json& v = j.at("var");
    require_object(v, {"name", "label"}, "var");
    if (!v.at("name").is_string()) bad("var name must be a string");
    return full::var(v.at("name").get<std::string>(), label_from_json(v.at("label")));
  }
  if (j.contains("abs")) {
    const json& a = j.at("abs");
    require_object(a, {"binder", "count", "body"}, "abs");
    if (!a.at("binder").is_string()) bad("abs binder must be a string");
    auto t = full::abs(a.at("binder").get<std::string>(), full_term_from_json(a.at("body")));
    if (full::as_abs(t)->count != natural(a.at("count"), "abs count"))
      bad("abs count " + a.at("count").dump() + " does not match the body");
    return t;
  }
  if (j.contains("app")) {
    const json& p = j.at("app");
    require_object(p, {"label", "fun", "arg"}, "app");
    return full::app(full_term_from_json(p.at("fun")), full_term_from_json(p.at("arg")), label_from_json(p.at("label")));
  }
  bad("term must be an object with one of var, abs, app");
}

json to_json(const full::FullEvent& e) {
  return {{"l", to_json(e.event_label)},
          {"m", e.var_label ? to_json(*e.var_label) : json(nullptr)},
          {"source", to_json(e.source)},
          {"target", to_json(e.target)}};
}

full::FullEvent full_event_from_json(const json& j) {
  require_object(j, {"l", "m", "source", "target"}, "event");
  full::FullEvent e{full_term_from_json(j.at("source")), full_term_from_json(j.at("target")),
                    label_from_json(j.at("l")), std::nullopt};
  if (!j.at("m").is_null()) e.var_label = label_from_json(j.at("m"));
  return e;
}

namespace {

template <class State, class Edge>
json graph_json(const StateGraph<State, Edge>& g, const std::function<json(const State&)>& state,
                const std::function<json(const Edge&)>& edge) {
  json states = json::array();
  for (std::size_t i = 0; i < g.states.size(); ++i)
    states.push_back({{"id", "s" + std::to_string(i)}, {"term", state(g.states[i])}});
  json transitions = json::array();
  for (const auto& t : g.transitions)
    transitions.push_back({{"from", "s" + std::to_string(t.from)}, {"to", "s" + std::to_string(t.to)},
                           {"label", edge(t.edge)}});
  return {{"states", states}, {"transitions", transitions}};
}

template <class State, class Edge>
StateGraph<State, Edge> graph_from(const json& j, const std::function<State(const json&)>& state,
                                   const std::function<Edge(const json&)>& edge) {
  require_object(j, {"states", "transitions"}, "multiway");
  if (!j.at("states").is_array() || !j.at("transitions").is_array()) bad("states and transitions must be arrays");
  StateGraph<State, Edge> g;
  std::map<std::string, std::size_t> ids;
  for (const auto& s : j.at("states")) {
    require_object(s, {"id", "term"}, "state");
    if (!ids.emplace(ident(s.at("id"), "state"), g.states.size()).second) bad("duplicate state id");
    g.states.push_back(state(s.at("term")));
  }
  auto index = [&](const json& id) {
    auto it = ids.find(ident(id, "state"));
    if (it == ids.end()) bad("transition refers to unknown state " + id.dump());
    return it->second;
  };
  for (const auto& t : j.at("transitions")) {
    require_object(t, {"from", "to", "label"}, "transition");
    g.transitions.push_back({index(t.at("from")), index(t.at("to")), edge(t.at("label"))});
  }
  return g;
}

lam::TermPtr term_from_text(const json& j) {
  if (!j.is_string()) bad("terms are written as strings");
  return lam::parse(j.get<std::string>());
}

}  // namespace

json to_json(const lam::MultiwaySystem& g) {
  return graph_json<lam::TermPtr, lam::Label>(
      g, [](const lam::TermPtr& t) { return json(lam::print(t)); }, [](const lam::Label& l) { return json(l); });
}

lam::MultiwaySystem multiway_from_json(const json& j) {
  return graph_from<lam::TermPtr, lam::Label>(j, term_from_text,
                                              [](const json& l) { return natural(l, "transition label"); });
}

json to_json(const full::FineMultiway& g) {
  return graph_json<full::TermPtr, full::FineStep>(
      g, [](const full::TermPtr& t) { return to_json(t); },
      [](const full::FineStep& s) {
        return json{{"l", to_json(s.l)}, {"m", s.m ? to_json(*s.m) : json(nullptr)}};
      });
}

full::FineMultiway fine_multiway_from_json(const json& j) {
  return graph_from<full::TermPtr, full::FineStep>(j, full_term_from_json, [](const json& s) {
    require_object(s, {"l", "m"}, "step");
    full::FineStep step{label_from_json(s.at("l")), std::nullopt};
    if (!s.at("m").is_null()) step.m = label_from_json(s.at("m"));
    return step;
  });
}

json to_json(const lam::CausalGraph& g) {
  json relation = json::array();
  for (const auto& [a, b] : g.relation) relation.push_back(json::array({a, b}));
  return {{"events", g.events}, {"relation", relation}};
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n')
      out += "\\n";
    else
      out += c;
  }
  return out + "\"";
}

std::string to_dot(const lam::CausalGraph& g) {
  std::string out = "digraph causal {\n";
  for (auto e : g.events) out += "  e" + std::to_string(e) + " [label=" + dot_quote(std::to_string(e)) + "];\n";
  for (const auto& [a, b] : g.relation) out += "  e" + std::to_string(a) + " -> e" + std::to_string(b) + ";\n";
  return out + "}\n";
}

}  // namespace causality::io
