#pragma once

#include <functional>
#include <string>

#include <json.hpp>

#include "causality/dpo.hpp"
#include "causality/full.hpp"
#include "causality/hypergraph.hpp"
#include "causality/lambda.hpp"

namespace causality::io {

using nlohmann::json;

/// Parse errors from the readers below are thrown as BadJson.
json parse_json(const std::string& text);

json to_json(const hg::Hypergraph& g);
/// Accepts integer or string identifiers; rejects unknown keys and invalid
/// graphs.
hg::Hypergraph hypergraph_from_json(const json& j);

json to_json(const hg::Morphism& m);
/// Maps only; the ends are supplied and the result is checked.
hg::Morphism morphism_from_json(const json& j, const hg::Hypergraph& source, const hg::Hypergraph& target);

json to_json(const dpo::RewriteRule& r);
dpo::RewriteRule rule_from_json(const json& j);

json to_json(const dpo::DpoEvent& e);
dpo::DpoEvent event_from_json(const json& j);

json to_json(const full::Label& l);
full::Label label_from_json(const json& j);
json to_json(const full::TermPtr& t);
full::TermPtr full_term_from_json(const json& j);
json to_json(const full::FullEvent& e);
full::FullEvent full_event_from_json(const json& j);

/// {"states": [...], "transitions": [{"from","to","label"}]} with states
/// printed as terms.
json to_json(const lam::MultiwaySystem& g);
lam::MultiwaySystem multiway_from_json(const json& j);
json to_json(const full::FineMultiway& g);
full::FineMultiway fine_multiway_from_json(const json& j);

json to_json(const lam::CausalGraph& g);

/// Double-quoted DOT identifier.
std::string dot_quote(const std::string& s);

/// Nodes s0, s1, ... in state order, labelled by `state_label`; one edge per
/// transition labelled by `edge_label`.
template <class State, class Edge>
std::string to_dot(const StateGraph<State, Edge>& g, const std::string& name,
                   const std::function<std::string(const State&)>& state_label,
                   const std::function<std::string(const Edge&)>& edge_label) {
  std::string out = "digraph " + name + " {\n";
  for (std::size_t i = 0; i < g.states.size(); ++i)
    out += "  s" + std::to_string(i) + " [label=" + dot_quote(state_label(g.states[i])) + "];\n";
  for (const auto& t : g.transitions)
    out += "  s" + std::to_string(t.from) + " -> s" + std::to_string(t.to) + " [label=" +
           dot_quote(edge_label(t.edge)) + "];\n";
  return out + "}\n";
}

std::string to_dot(const lam::CausalGraph& g);

}  // namespace causality::io
