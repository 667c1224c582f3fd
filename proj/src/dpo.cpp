#include "causality/dpo.hpp"

#include "causality/error.hpp"

namespace causality::dpo {

using hg::MorphismKind;

namespace {

void check_match(const Match& match) {
  if (!(match.m.source == match.rule.left))
    throw Error(ErrorCode::InvalidMatch, "match does not start at the rule's left-hand side");
  if (!(match.m.target == match.host)) throw Error(ErrorCode::InvalidMatch, "match does not land in the host");
  if (!hg::is_monomorphism(match.m)) throw Error(ErrorCode::InvalidMatch, "matches must be injective");
}

void require_same_host(const Match& e1, const Match& e2) {
  if (!(e1.host == e2.host)) throw Error(ErrorCode::DifferentHost, "events live on different graphs");
}

void require_no_dangling(const Match& match) {
  auto dangling = dangling_edges(match);
  if (dangling.empty()) return;
  std::string msg = "deleting";
  for (const auto& v : deleted_vertices(match)) msg += " " + v.value;
  msg += " leaves dangling edge(s)";
  for (const auto& e : dangling) {
    msg += " " + e.value + "=(";
    const auto& t = match.host.edges.at(e);
    for (std::size_t i = 0; i < t.size(); ++i) msg += (i ? "," : "") + t[i].value;
    msg += ")";
  }
  throw Error(ErrorCode::DanglingEdges, msg);
}

struct Footprint {
  std::set<VertexId> vertices;
  std::set<EdgeId> edges;
};

Footprint matched(const Match& match) {
  Footprint f;
  for (const auto& [v, w] : match.m.vmap) f.vertices.insert(w);
  for (const auto& [e, h] : match.m.emap) f.edges.insert(h);
  return f;
}

Footprint preserved(const Match& match) {
  Footprint f;
  for (const auto& [v, w] : match.rule.l.vmap) f.vertices.insert(match.m(w));
  for (const auto& [e, h] : match.rule.l.emap) f.edges.insert(match.m(h));
  return f;
}

Morphism restrict_target(const Morphism& m, const Hypergraph& target) {
  return Morphism{m.source, target, m.vmap, m.emap};
}

}  // namespace

void check_rule(const RewriteRule& rule) {
  for (const auto* g : {&rule.left, &rule.interface, &rule.right})
    if (auto problems = hg::validate(*g); !problems.empty()) throw Error(ErrorCode::InvalidRule, problems.front());
  if (!(rule.l.source == rule.interface) || !(rule.l.target == rule.left))
    throw Error(ErrorCode::InvalidRule, "l must map I into L");
  if (!(rule.r.source == rule.interface) || !(rule.r.target == rule.right))
    throw Error(ErrorCode::InvalidRule, "r must map I into R");
  try {
    if (!hg::is_monomorphism(rule.l)) throw Error(ErrorCode::InvalidRule, "l is not injective");
    if (!hg::is_monomorphism(rule.r)) throw Error(ErrorCode::InvalidRule, "r is not injective");
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidRule) throw;
    throw Error(ErrorCode::InvalidRule, e.what());
  }
}

RewriteRule rule_from_inclusions(const Hypergraph& left, const Hypergraph& interface, const Hypergraph& right) {
  RewriteRule rule{left, interface, right, hg::inclusion(interface, left), hg::inclusion(interface, right)};
  check_rule(rule);
  return rule;
}

std::vector<Match> find_matches(const RewriteRule& rule, const Hypergraph& host) {
  std::vector<Match> out;
  hg::for_each_morphism(rule.left, host, MorphismKind::Mono, [&](const Morphism& m) {
    out.push_back(Match{rule, host, m});
    return true;
  });
  return out;
}

std::set<VertexId> deleted_vertices(const Match& match) {
  std::set<VertexId> kept;
  for (const auto& [v, w] : match.rule.l.vmap) kept.insert(w);
  std::set<VertexId> out;
  for (const auto& v : match.rule.left.vertices)
    if (!kept.contains(v)) out.insert(match.m(v));
  return out;
}

std::set<EdgeId> deleted_edges(const Match& match) {
  std::set<EdgeId> kept;
  for (const auto& [e, f] : match.rule.l.emap) kept.insert(f);
  std::set<EdgeId> out;
  for (const auto& [e, t] : match.rule.left.edges)
    if (!kept.contains(e)) out.insert(match.m(e));
  return out;
}

std::set<EdgeId> dangling_edges(const Match& match) {
  auto doomed = deleted_vertices(match);
  std::set<EdgeId> image;
  for (const auto& [e, f] : match.m.emap) image.insert(f);
  std::set<EdgeId> out;
  for (const auto& [e, t] : match.host.edges) {
    if (image.contains(e)) continue;
    for (const auto& v : t)
      if (doomed.contains(v)) {
        out.insert(e);
        break;
      }
  }
  return out;
}

bool no_dangling_edges(const Match& match) {
  check_match(match);
  return dangling_edges(match).empty();
}

Complement cut_graph(const Match& match) {
  check_match(match);
  Hypergraph g = hg::delete_vertices(match.host, deleted_vertices(match));
  std::set<EdgeId> remaining;
  for (const auto& e : deleted_edges(match))
    if (g.has_edge(e)) remaining.insert(e);
  g = hg::delete_edges(g, remaining);

  Morphism embed{match.rule.interface, g, {}, {}};
  for (const auto& [v, w] : match.rule.l.vmap) embed.vmap.emplace(v, match.m(w));
  for (const auto& [e, f] : match.rule.l.emap) embed.emap.emplace(e, match.m(f));
  return Complement{g, std::move(embed), hg::inclusion(g, match.host)};
}

Complement pushout_complement(const Match& match) {
  check_match(match);
  require_no_dangling(match);
  return cut_graph(match);
}

DpoEvent apply(const Match& match) {
  Complement c = pushout_complement(match);
  hg::Cospan glued = hg::pushout(match.rule.r, c.embed);
  return DpoEvent{match,          c.graph,        glued.apex,  glued.left,
                  c.embed,        c.to_host,      glued.right};
}

std::vector<DpoTransition> step_all(const std::vector<RewriteRule>& rules, const Hypergraph& host) {
  Hypergraph source = hg::canonical_form(host);
  std::vector<DpoTransition> out;
  for (const auto& rule : rules)
    for (const auto& match : find_matches(rule, source)) {
      if (!dangling_edges(match).empty()) continue;
      DpoEvent event = apply(match);
      Hypergraph target = hg::canonical_form(event.production);
      out.push_back(DpoTransition{source, std::move(target), std::move(event)});
    }
  return out;
}

RewriteRule edge_free_interface(const RewriteRule& rule) {
  Hypergraph bare;
  bare.vertices = rule.interface.vertices;
  RewriteRule out{rule.left, bare, rule.right, {bare, rule.left, rule.l.vmap, {}}, {bare, rule.right, rule.r.vmap, {}}};
  return out;
}

std::optional<RuleIsomorphism> find_rule_isomorphism(const RewriteRule& a, const RewriteRule& b) {
  std::optional<RuleIsomorphism> found;
  hg::for_each_morphism(a.interface, b.interface, MorphismKind::Iso, [&](const Morphism& h) {
    auto seed_through = [&](const Morphism& leg_a, const Morphism& leg_b) {
      hg::Seed seed;
      for (const auto& [v, w] : leg_a.vmap) seed.vmap.emplace(w, leg_b(h(v)));
      for (const auto& [e, f] : leg_a.emap) seed.emap.emplace(f, leg_b(h(e)));
      return seed;
    };
    auto f = hg::morphisms(a.left, b.left, MorphismKind::Iso, seed_through(a.l, b.l));
    if (f.empty()) return true;
    auto g = hg::morphisms(a.right, b.right, MorphismKind::Iso, seed_through(a.r, b.r));
    if (g.empty()) return true;
    found = RuleIsomorphism{f.front(), h, g.front()};
    return false;
  });
  return found;
}

bool can_happen_together(const Match& e1, const Match& e2) {
  require_same_host(e1, e2);
  check_match(e1);
  check_match(e2);
  Footprint used1 = matched(e1), used2 = matched(e2);
  Footprint kept1 = preserved(e1), kept2 = preserved(e2);
  for (const auto& v : used1.vertices)
    if (used2.vertices.contains(v) && kept1.vertices.contains(v) != kept2.vertices.contains(v)) return false;
  for (const auto& e : used1.edges)
    if (used2.edges.contains(e) && kept1.edges.contains(e) != kept2.edges.contains(e)) return false;
  return true;
}

std::pair<RewriteRule, Match> combined_event(const Match& e1, const Match& e2) {
  if (!can_happen_together(e1, e2))
    throw Error(ErrorCode::NotCompatible, "one event deletes what the other preserves");
  const RewriteRule& r1 = e1.rule;
  const RewriteRule& r2 = e2.rule;

  hg::Span overlap = hg::pullback(e1.m, e2.m);                  // L1 x_G L2
  hg::Cospan left = hg::pushout(overlap.left, overlap.right);  // L

  hg::Span shared = hg::pullback(overlap.left, r1.l);  // B, as a pullback against I1
  Morphism b_to_i1 = shared.right;
  Morphism b_to_i2{shared.apex, r2.interface, {}, {}};
  {
    std::map<VertexId, VertexId> lv;
    std::map<EdgeId, EdgeId> le;
    for (const auto& [v, w] : r2.l.vmap) lv.emplace(w, v);
    for (const auto& [e, f] : r2.l.emap) le.emplace(f, e);
    for (const auto& [b, p] : shared.left.vmap) b_to_i2.vmap.emplace(b, lv.at(overlap.right(p)));
    for (const auto& [b, p] : shared.left.emap) b_to_i2.emap.emplace(b, le.at(overlap.right(p)));
  }

  hg::Cospan interface = hg::pushout(b_to_i1, b_to_i2);
  hg::Cospan right = hg::pushout(hg::compose(r1.r, b_to_i1), hg::compose(r2.r, b_to_i2));

  RewriteRule rule{left.apex, interface.apex, right.apex,
                   hg::pushout_mediator(interface, hg::compose(left.left, r1.l), hg::compose(left.right, r2.l)),
                   hg::pushout_mediator(interface, hg::compose(right.left, r1.r), hg::compose(right.right, r2.r))};
  check_rule(rule);
  Match match{rule, e1.host, hg::pushout_mediator(left, e1.m, e2.m)};
  check_match(match);
  return {std::move(rule), std::move(match)};
}

bool parallel_independent(const Match& e1, const Match& e2) {
  require_same_host(e1, e2);
  check_match(e1);
  check_match(e2);
  require_no_dangling(e1);
  require_no_dangling(e2);
  auto survives = [](const Match& user, const Match& deleter) {
    auto dv = deleted_vertices(deleter);
    auto de = deleted_edges(deleter);
    for (const auto& [v, w] : user.m.vmap)
      if (dv.contains(w)) return false;
    for (const auto& [e, f] : user.m.emap)
      if (de.contains(f)) return false;
    return true;
  };
  return survives(e1, e2) && survives(e2, e1);
}

std::optional<Match> transport(const DpoEvent& event, const Match& later) {
  require_same_host(event.match, later);
  for (const auto& [v, w] : later.m.vmap)
    if (!event.complement.has_vertex(w)) return std::nullopt;
  for (const auto& [e, f] : later.m.emap)
    if (!event.complement.has_edge(f)) return std::nullopt;
  Morphism into_complement = restrict_target(later.m, event.complement);
  return Match{later.rule, event.production, hg::compose(event.complement_to_production, into_complement)};
}

bool causally_related_successive(const DpoEvent& e1, const Match& e2) {
  check_match(e2);
  Morphism iso;
  if (e2.host == e1.production) {
    iso = hg::identity(e1.production);
  } else {
    auto found = hg::find_isomorphism(e2.host, e1.production);
    if (!found) throw Error(ErrorCode::NotSuccessive, "second event's host is not the first event's production");
    iso = std::move(*found);
  }
  Morphism moved = hg::compose(iso, e2.m);
  Hypergraph survivors = hg::image(e1.complement_to_production);
  for (const auto& [v, w] : moved.vmap)
    if (!survivors.has_vertex(w)) return true;
  for (const auto& [e, f] : moved.emap)
    if (!survivors.has_edge(f)) return true;
  return false;
}

}  // namespace causality::dpo
