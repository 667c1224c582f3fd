#pragma once

#include <optional>
#include <set>
#include <vector>

#include "causality/hypergraph.hpp"

namespace causality::dpo {

using hg::EdgeId;
using hg::Hypergraph;
using hg::Morphism;
using hg::VertexId;

/// A span L <- I -> R of monomorphisms.
struct RewriteRule {
  Hypergraph left;
  Hypergraph interface;
  Hypergraph right;
  Morphism l;
  Morphism r;
};

/// Checks that both legs are monomorphisms with the right ends; throws
/// InvalidRule otherwise.
void check_rule(const RewriteRule& rule);

/// Builds a rule whose legs are identifier inclusions I -> L and I -> R.
RewriteRule rule_from_inclusions(const Hypergraph& left, const Hypergraph& interface, const Hypergraph& right);

struct Match {
  RewriteRule rule;
  Hypergraph host;
  Morphism m;
};

struct DpoEvent {
  Match match;
  Hypergraph complement;
  Hypergraph production;
  Morphism co_match;               // R -> H
  Morphism interface_embed;        // I -> G'
  Morphism complement_to_host;     // G' -> G
  Morphism complement_to_production;  // G' -> H
};

struct DpoTransition {
  Hypergraph source_class;
  Hypergraph target_class;
  DpoEvent event;
};

std::vector<Match> find_matches(const RewriteRule& rule, const Hypergraph& host);

/// Host vertices the match would delete, i.e. m(V_L \ l(V_I)).
std::set<VertexId> deleted_vertices(const Match& match);
/// Host edges the match would delete, i.e. m(E_L \ l(E_I)).
std::set<EdgeId> deleted_edges(const Match& match);

bool no_dangling_edges(const Match& match);
/// Host edges that touch a deleted vertex without being matched.
std::set<EdgeId> dangling_edges(const Match& match);

struct Complement {
  Hypergraph graph;
  Morphism embed;     // I -> G'
  Morphism to_host;   // G' -> G
};

/// The cut graph, computed whether or not edges dangle (dangling edges are
/// removed along with their vertices).
Complement cut_graph(const Match& match);
/// The cut graph, refusing dangling matches with DanglingEdges.
Complement pushout_complement(const Match& match);

DpoEvent apply(const Match& match);

/// Transitions out of canonical_form(host) for every rule and every
/// non-dangling match, ordered by rule index and then match order.
std::vector<DpoTransition> step_all(const std::vector<RewriteRule>& rules, const Hypergraph& host);

/// Same rule with the interface stripped of its edges.
RewriteRule edge_free_interface(const RewriteRule& rule);

/// Witness of an isomorphism of rules: f on L, h on I, g on R commuting
/// with both legs.
struct RuleIsomorphism {
  Morphism on_left;
  Morphism on_interface;
  Morphism on_right;
};
std::optional<RuleIsomorphism> find_rule_isomorphism(const RewriteRule& a, const RewriteRule& b);

bool can_happen_together(const Match& e1, const Match& e2);

/// Glues two compatible events into one rule with its mediating match.
std::pair<RewriteRule, Match> combined_event(const Match& e1, const Match& e2);

bool parallel_independent(const Match& e1, const Match& e2);

/// Moves a match on the host of `event` to its production, provided its image
/// survives in the complement.
std::optional<Match> transport(const DpoEvent& event, const Match& later);

/// Whether `e2`, a match on a graph isomorphic to the production of `e1`,
/// uses anything `e1` created.
bool causally_related_successive(const DpoEvent& e1, const Match& e2);

}  // namespace causality::dpo
