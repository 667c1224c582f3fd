#include "causality/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "causality/error.hpp"

namespace causality::hg {

namespace {

bool is_numeric(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string_view strip_zeros(const std::string& s) {
  std::size_t i = 0;
  while (i + 1 < s.size() && s[i] == '0') ++i;
  return std::string_view(s).substr(i);
}

/// Hands out names in request order, priming any that were already taken.
class NameAllocator {
 public:
  std::string claim(std::string wanted) {
    while (taken_.contains(wanted)) wanted += '\'';
    taken_.insert(wanted);
    return wanted;
  }

 private:
  std::set<std::string> taken_;
};

void require_morphism(const Morphism& m, const char* what) {
  if (!is_morphism(m)) throw Error(ErrorCode::NotAMorphism, std::string(what) + " is not a morphism");
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

using Signature = std::vector<std::pair<std::size_t, std::size_t>>;

std::map<VertexId, Signature> incidence_signatures(const Hypergraph& g) {
  std::map<VertexId, Signature> sig;
  for (const auto& v : g.vertices) sig[v];
  for (const auto& [e, t] : g.edges)
    for (std::size_t i = 0; i < t.size(); ++i) sig[t[i]].emplace_back(t.size(), i);
  for (auto& [v, s] : sig) std::sort(s.begin(), s.end());
  return sig;
}

class MorphismSearch {
 public:
  MorphismSearch(const Hypergraph& a, const Hypergraph& b, MorphismKind kind,
                 const std::function<bool(const Morphism&)>& visit, const Seed& seed)
      : a_(a), b_(b), kind_(kind), visit_(visit), seed_(seed) {
    current_.source = a;
    current_.target = b;
    av_.assign(a.vertices.begin(), a.vertices.end());
    bv_.assign(b.vertices.begin(), b.vertices.end());
    std::map<VertexId, std::size_t> position;
    for (std::size_t i = 0; i < av_.size(); ++i) position[av_[i]] = i;
    completed_at_.resize(av_.size());
    for (const auto& [e, t] : a.edges) {
      ae_.emplace_back(e, &t);
      std::size_t last = 0;
      for (const auto& v : t) last = std::max(last, position.at(v));
      completed_at_[last].push_back(ae_.size() - 1);
    }
    for (const auto& [e, t] : b.edges) by_tuple_[t].push_back(e);
    if (kind == MorphismKind::Iso) {
      sig_a_ = incidence_signatures(a);
      sig_b_ = incidence_signatures(b);
    }
  }

  void run() {
    if (kind_ == MorphismKind::Iso &&
        (a_.vertex_count() != b_.vertex_count() || a_.edge_count() != b_.edge_count()))
      return;
    assign_vertex(0);
  }

 private:
  bool injective() const { return kind_ != MorphismKind::Any; }

  Tuple mapped(const Tuple& t) const {
    Tuple out;
    out.reserve(t.size());
    for (const auto& v : t) out.push_back(current_.vmap.at(v));
    return out;
  }

  bool admit_completed(std::size_t i, std::vector<Tuple>& pushed) {
    for (std::size_t idx : completed_at_[i]) {
      Tuple t = mapped(*ae_[idx].second);
      auto it = by_tuple_.find(t);
      std::size_t supply = it == by_tuple_.end() ? 0 : it->second.size();
      std::size_t& need = demand_[t];
      ++need;
      pushed.push_back(std::move(t));
      if (injective() ? need > supply : supply == 0) return false;
    }
    return true;
  }

  void assign_vertex(std::size_t i) {
    if (stop_) return;
    if (i == av_.size()) {
      assign_edge(0);
      return;
    }
    const VertexId& v = av_[i];
    auto fixed = seed_.vmap.find(v);
    for (const auto& w : bv_) {
      if (fixed != seed_.vmap.end() && fixed->second != w) continue;
      if (injective() && used_v_.contains(w)) continue;
      if (kind_ == MorphismKind::Iso && sig_a_.at(v) != sig_b_.at(w)) continue;
      current_.vmap[v] = w;
      used_v_.insert(w);
      std::vector<Tuple> pushed;
      if (admit_completed(i, pushed)) assign_vertex(i + 1);
      for (const auto& t : pushed) --demand_[t];
      used_v_.erase(w);
      current_.vmap.erase(v);
      if (stop_) return;
    }
  }

  void assign_edge(std::size_t i) {
    if (stop_) return;
    if (i == ae_.size()) {
      if (!visit_(current_)) stop_ = true;
      return;
    }
    const auto& [e, t] = ae_[i];
    auto it = by_tuple_.find(mapped(*t));
    if (it == by_tuple_.end()) return;
    auto fixed = seed_.emap.find(e);
    for (const auto& f : it->second) {
      if (fixed != seed_.emap.end() && fixed->second != f) continue;
      if (injective() && used_e_.contains(f)) continue;
      current_.emap[e] = f;
      used_e_.insert(f);
      assign_edge(i + 1);
      used_e_.erase(f);
      current_.emap.erase(e);
      if (stop_) return;
    }
  }

  const Hypergraph& a_;
  const Hypergraph& b_;
  MorphismKind kind_;
  const std::function<bool(const Morphism&)>& visit_;
  const Seed& seed_;
  Morphism current_;
  std::vector<VertexId> av_, bv_;
  std::vector<std::pair<EdgeId, const Tuple*>> ae_;
  std::vector<std::vector<std::size_t>> completed_at_;
  std::map<Tuple, std::vector<EdgeId>> by_tuple_;
  std::map<Tuple, std::size_t> demand_;
  std::set<VertexId> used_v_;
  std::set<EdgeId> used_e_;
  std::map<VertexId, Signature> sig_a_, sig_b_;
  bool stop_ = false;
};

// Colour refinement over vertex indices; colours are ranks of signatures, so
// they depend only on structure and on the incoming colours.
using Coloring = std::vector<std::size_t>;
using IndexTuples = std::vector<std::vector<std::size_t>>;

std::size_t count_colors(const Coloring& c) { return std::set<std::size_t>(c.begin(), c.end()).size(); }

Coloring refine(Coloring colors, const IndexTuples& tuples, const std::vector<std::vector<std::size_t>>& incident) {
  using Incidence = std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>;
  using Sig = std::pair<std::size_t, std::vector<Incidence>>;
  std::size_t before = count_colors(colors);
  for (;;) {
    std::vector<Sig> sigs(colors.size());
    for (std::size_t v = 0; v < colors.size(); ++v) {
      sigs[v].first = colors[v];
      for (std::size_t e : incident[v]) {
        const auto& t = tuples[e];
        std::vector<std::size_t> tc;
        tc.reserve(t.size());
        for (std::size_t u : t) tc.push_back(colors[u]);
        for (std::size_t p = 0; p < t.size(); ++p)
          if (t[p] == v) sigs[v].second.emplace_back(t.size(), p, tc);
      }
      std::sort(sigs[v].second.begin(), sigs[v].second.end());
    }
    std::vector<Sig> sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t v = 0; v < colors.size(); ++v)
      colors[v] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), sigs[v]) - sorted.begin());
    std::size_t after = sorted.size();
    if (after == before) return colors;
    before = after;
  }
}

using Encoding = std::vector<std::vector<std::size_t>>;

Encoding encode(const Coloring& discrete, const IndexTuples& tuples) {
  Encoding enc;
  enc.reserve(tuples.size());
  for (const auto& t : tuples) {
    std::vector<std::size_t> m;
    m.reserve(t.size());
    for (std::size_t v : t) m.push_back(discrete[v]);
    enc.push_back(std::move(m));
  }
  std::sort(enc.begin(), enc.end());
  return enc;
}

void search_canonical(const Coloring& colors, const IndexTuples& tuples,
                      const std::vector<std::vector<std::size_t>>& incident, std::optional<Encoding>& best) {
  std::size_t n = colors.size();
  if (count_colors(colors) == n) {
    Encoding enc = encode(colors, tuples);
    if (!best || enc < *best) best = std::move(enc);
    return;
  }
  // Branch on the first non-singleton cell, by colour.
  std::map<std::size_t, std::vector<std::size_t>> cells;
  for (std::size_t v = 0; v < n; ++v) cells[colors[v]].push_back(v);
  const std::vector<std::size_t>* target = nullptr;
  for (const auto& [c, members] : cells)
    if (members.size() > 1) {
      target = &members;
      break;
    }
  bool isolated = true;
  for (std::size_t v : *target) isolated = isolated && incident[v].empty();
  for (std::size_t v : *target) {
    Coloring next(n);
    for (std::size_t u = 0; u < n; ++u) next[u] = 2 * colors[u] + 1;
    next[v] = 2 * colors[v];
    search_canonical(refine(std::move(next), tuples, incident), tuples, incident, best);
    // Interchangeable isolated vertices all lead to the same leaves.
    if (isolated) break;
  }
}

}  // namespace

std::strong_ordering compare_id_text(const std::string& a, const std::string& b) {
  bool na = is_numeric(a);
  bool nb = is_numeric(b);
  if (na != nb) return na ? std::strong_ordering::less : std::strong_ordering::greater;
  if (na) {
    auto sa = strip_zeros(a);
    auto sb = strip_zeros(b);
    if (sa.size() != sb.size()) return sa.size() <=> sb.size();
    if (auto c = sa.compare(sb); c != 0) return c <=> 0;
  }
  return a.compare(b) <=> 0;
}

Hypergraph make_graph(const std::vector<std::string>& vertices,
                      const std::vector<std::pair<std::string, std::vector<std::string>>>& edges) {
  Hypergraph g;
  for (const auto& v : vertices) g.vertices.insert(VertexId(v));
  for (const auto& [e, t] : edges) {
    Tuple tuple;
    for (const auto& v : t) tuple.emplace_back(v);
    g.edges[EdgeId(e)] = std::move(tuple);
  }
  return g;
}

std::vector<std::string> validate(const Hypergraph& g) {
  std::vector<std::string> problems;
  for (const auto& [e, t] : g.edges) {
    if (t.empty()) problems.push_back("edge " + e.value + " has an empty tuple");
    for (const auto& v : t)
      if (!g.has_vertex(v))
        problems.push_back("edge " + e.value + " references unknown vertex " + v.value);
  }
  return problems;
}

const VertexId& Morphism::operator()(const VertexId& v) const {
  auto it = vmap.find(v);
  if (it == vmap.end()) throw Error(ErrorCode::PartialMap, "vertex " + v.value + " is unmapped");
  return it->second;
}

const EdgeId& Morphism::operator()(const EdgeId& e) const {
  auto it = emap.find(e);
  if (it == emap.end()) throw Error(ErrorCode::PartialMap, "edge " + e.value + " is unmapped");
  return it->second;
}

bool is_morphism(const Morphism& m) {
  for (const auto& v : m.source.vertices)
    if (!m.vmap.contains(v)) throw Error(ErrorCode::PartialMap, "vmap misses vertex " + v.value);
  for (const auto& [e, t] : m.source.edges)
    if (!m.emap.contains(e)) throw Error(ErrorCode::PartialMap, "emap misses edge " + e.value);
  if (m.vmap.size() != m.source.vertex_count() || m.emap.size() != m.source.edge_count()) return false;
  for (const auto& [v, w] : m.vmap)
    if (!m.target.has_vertex(w)) return false;
  for (const auto& [e, t] : m.source.edges) {
    auto it = m.target.edges.find(m.emap.at(e));
    if (it == m.target.edges.end()) return false;
    const Tuple& image = it->second;
    if (image.size() != t.size()) return false;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (m.vmap.at(t[i]) != image[i]) return false;
  }
  return true;
}

bool is_monomorphism(const Morphism& m) {
  require_morphism(m, "argument");
  std::set<VertexId> vs;
  for (const auto& [v, w] : m.vmap)
    if (!vs.insert(w).second) return false;
  std::set<EdgeId> es;
  for (const auto& [e, f] : m.emap)
    if (!es.insert(f).second) return false;
  return true;
}

bool is_isomorphism(const Morphism& m) {
  return is_monomorphism(m) && m.source.vertex_count() == m.target.vertex_count() &&
         m.source.edge_count() == m.target.edge_count();
}

Morphism identity(const Hypergraph& g) { return inclusion(g, g); }

Morphism inclusion(const Hypergraph& sub, const Hypergraph& super) {
  Morphism m{sub, super, {}, {}};
  for (const auto& v : sub.vertices) m.vmap.emplace(v, v);
  for (const auto& [e, t] : sub.edges) m.emap.emplace(e, e);
  return m;
}

Morphism compose(const Morphism& second, const Morphism& first) {
  if (!(first.target == second.source))
    throw Error(ErrorCode::MismatchedSource, "composition of morphisms with mismatched ends");
  Morphism m{first.source, second.target, {}, {}};
  for (const auto& [v, w] : first.vmap) m.vmap.emplace(v, second(w));
  for (const auto& [e, f] : first.emap) m.emap.emplace(e, second(f));
  return m;
}

Morphism inverse(const Morphism& iso) {
  if (!is_isomorphism(iso)) throw Error(ErrorCode::NotMono, "only isomorphisms can be inverted");
  Morphism m{iso.target, iso.source, {}, {}};
  for (const auto& [v, w] : iso.vmap) m.vmap.emplace(w, v);
  for (const auto& [e, f] : iso.emap) m.emap.emplace(f, e);
  return m;
}

Hypergraph image(const Morphism& m) {
  Hypergraph g;
  for (const auto& [v, w] : m.vmap) g.vertices.insert(w);
  for (const auto& [e, f] : m.emap) g.edges[f] = m.target.edges.at(f);
  return g;
}

Span pullback(const Morphism& f, const Morphism& g) {
  if (!(f.target == g.target)) throw Error(ErrorCode::MismatchedTarget, "pullback legs need a common target");
  require_morphism(f, "left leg");
  require_morphism(g, "right leg");

  Span out;
  out.left.target = f.source;
  out.right.target = g.source;
  NameAllocator names;
  std::map<std::pair<VertexId, VertexId>, VertexId> pair_name;
  for (const auto& a : f.source.vertices)
    for (const auto& b : g.source.vertices)
      if (f.vmap.at(a) == g.vmap.at(b)) {
        VertexId p(names.claim("(" + a.value + "," + b.value + ")"));
        pair_name.emplace(std::pair{a, b}, p);
        out.apex.vertices.insert(p);
        out.left.vmap.emplace(p, a);
        out.right.vmap.emplace(p, b);
      }
  NameAllocator edge_names;
  for (const auto& [e1, t1] : f.source.edges)
    for (const auto& [e2, t2] : g.source.edges)
      if (f.emap.at(e1) == g.emap.at(e2)) {
        EdgeId p(edge_names.claim("(" + e1.value + "," + e2.value + ")"));
        Tuple t;
        for (std::size_t i = 0; i < t1.size(); ++i) t.push_back(pair_name.at({t1[i], t2[i]}));
        out.apex.edges.emplace(p, std::move(t));
        out.left.emap.emplace(p, e1);
        out.right.emap.emplace(p, e2);
      }
  out.left.source = out.apex;
  out.right.source = out.apex;
  return out;
}

Cospan pushout(const Morphism& f, const Morphism& g) {
  if (!(f.source == g.source)) throw Error(ErrorCode::MismatchedSource, "pushout legs need a common source");
  require_morphism(f, "left leg");
  require_morphism(g, "right leg");
  if (!is_monomorphism(f)) throw Error(ErrorCode::NotMono, "left leg of a pushout must be injective");

  const Hypergraph& a = f.target;
  const Hypergraph& b = g.target;
  Cospan out;
  out.left.source = a;
  out.right.source = b;

  // Elements of the disjoint union, tagged 0 for the left side and 1 for the right.
  auto glue = [](const auto& left_ids, const auto& right_ids, const auto& pairs) {
    using Id = std::decay_t<decltype(left_ids.front())>;
    std::vector<std::pair<Id, int>> elems;
    std::map<std::pair<Id, int>, std::size_t> index;
    for (const auto& x : left_ids) index.emplace(std::pair{x, 0}, elems.size()), elems.emplace_back(x, 0);
    for (const auto& x : right_ids) index.emplace(std::pair{x, 1}, elems.size()), elems.emplace_back(x, 1);
    UnionFind uf(elems.size());
    for (const auto& [x, y] : pairs) uf.unite(index.at({x, 0}), index.at({y, 1}));
    std::map<std::size_t, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < elems.size(); ++i) classes[uf.find(i)].push_back(i);
    // Least member represents the class; members are already in (id, side) order per side.
    std::vector<std::pair<std::pair<Id, int>, std::vector<std::size_t>>> ordered;
    for (auto& [root, members] : classes) {
      auto rep = elems[members.front()];
      for (std::size_t m : members) {
        const auto& cand = elems[m];
        if (cand.first < rep.first || (cand.first == rep.first && cand.second < rep.second)) rep = cand;
      }
      ordered.emplace_back(rep, std::move(members));
    }
    std::sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
      if (x.first.first != y.first.first) return x.first.first < y.first.first;
      return x.first.second < y.first.second;
    });
    NameAllocator names;
    std::map<std::pair<Id, int>, Id> named;
    for (const auto& [rep, members] : ordered) {
      Id name(names.claim(rep.first.value));
      for (std::size_t m : members) named.emplace(elems[m], name);
    }
    return named;
  };

  std::vector<VertexId> av(a.vertices.begin(), a.vertices.end());
  std::vector<VertexId> bv(b.vertices.begin(), b.vertices.end());
  std::vector<std::pair<VertexId, VertexId>> vpairs;
  for (const auto& c : f.source.vertices) vpairs.emplace_back(f.vmap.at(c), g.vmap.at(c));
  auto vnames = glue(av, bv, vpairs);

  std::vector<EdgeId> ae, be;
  for (const auto& [e, t] : a.edges) ae.push_back(e);
  for (const auto& [e, t] : b.edges) be.push_back(e);
  std::vector<std::pair<EdgeId, EdgeId>> epairs;
  for (const auto& [c, t] : f.source.edges) epairs.emplace_back(f.emap.at(c), g.emap.at(c));
  auto enames = glue(ae, be, epairs);

  for (const auto& [key, name] : vnames) {
    out.apex.vertices.insert(name);
    (key.second == 0 ? out.left : out.right).vmap.emplace(key.first, name);
  }
  for (const auto& [key, name] : enames) {
    const Tuple& source_tuple = key.second == 0 ? a.edges.at(key.first) : b.edges.at(key.first);
    Tuple t;
    for (const auto& v : source_tuple) t.push_back(vnames.at({v, key.second}));
    out.apex.edges.emplace(name, std::move(t));
    (key.second == 0 ? out.left : out.right).emap.emplace(key.first, name);
  }
  out.left.target = out.apex;
  out.right.target = out.apex;
  return out;
}

Morphism pushout_mediator(const Cospan& po, const Morphism& to_x_from_a, const Morphism& to_x_from_b) {
  Morphism m{po.apex, to_x_from_a.target, {}, {}};
  auto record = [](auto& map, const auto& key, const auto& value) {
    auto [it, fresh] = map.emplace(key, value);
    if (!fresh && !(it->second == value))
      throw Error(ErrorCode::NotCompatible, "cocone does not commute at " + key.value);
  };
  for (const auto& [v, p] : po.left.vmap) record(m.vmap, p, to_x_from_a(v));
  for (const auto& [v, p] : po.right.vmap) record(m.vmap, p, to_x_from_b(v));
  for (const auto& [e, p] : po.left.emap) record(m.emap, p, to_x_from_a(e));
  for (const auto& [e, p] : po.right.emap) record(m.emap, p, to_x_from_b(e));
  return m;
}

Morphism pullback_mediator(const Span& pb, const Morphism& to_a, const Morphism& to_b) {
  std::map<std::pair<VertexId, VertexId>, VertexId> vertex_at;
  for (const auto& p : pb.apex.vertices) vertex_at.emplace(std::pair{pb.left(p), pb.right(p)}, p);
  std::map<std::pair<EdgeId, EdgeId>, EdgeId> edge_at;
  for (const auto& [p, t] : pb.apex.edges) edge_at.emplace(std::pair{pb.left(p), pb.right(p)}, p);
  Morphism m{to_a.source, pb.apex, {}, {}};
  for (const auto& v : to_a.source.vertices) {
    auto it = vertex_at.find({to_a(v), to_b(v)});
    if (it == vertex_at.end()) throw Error(ErrorCode::NotCompatible, "cone does not commute at " + v.value);
    m.vmap.emplace(v, it->second);
  }
  for (const auto& [e, t] : to_a.source.edges) {
    auto it = edge_at.find({to_a(e), to_b(e)});
    if (it == edge_at.end()) throw Error(ErrorCode::NotCompatible, "cone does not commute at " + e.value);
    m.emap.emplace(e, it->second);
  }
  return m;
}

Hypergraph delete_vertices(const Hypergraph& g, const std::set<VertexId>& s) {
  for (const auto& v : s)
    if (!g.has_vertex(v)) throw Error(ErrorCode::UnknownVertex, "cannot delete unknown vertex " + v.value);
  Hypergraph out;
  for (const auto& v : g.vertices)
    if (!s.contains(v)) out.vertices.insert(v);
  for (const auto& [e, t] : g.edges)
    if (std::none_of(t.begin(), t.end(), [&](const VertexId& v) { return s.contains(v); })) out.edges.emplace(e, t);
  return out;
}

Hypergraph delete_edges(const Hypergraph& g, const std::set<EdgeId>& s) {
  for (const auto& e : s)
    if (!g.has_edge(e)) throw Error(ErrorCode::UnknownEdge, "cannot delete unknown edge " + e.value);
  Hypergraph out = g;
  for (const auto& e : s) out.edges.erase(e);
  return out;
}

void for_each_morphism(const Hypergraph& a, const Hypergraph& b, MorphismKind kind,
                       const std::function<bool(const Morphism&)>& visit, const Seed& seed) {
  MorphismSearch(a, b, kind, visit, seed).run();
}

std::vector<Morphism> morphisms(const Hypergraph& a, const Hypergraph& b, MorphismKind kind, const Seed& seed) {
  std::vector<Morphism> out;
  for_each_morphism(
      a, b, kind,
      [&](const Morphism& m) {
        out.push_back(m);
        return true;
      },
      seed);
  return out;
}

std::optional<Morphism> find_isomorphism(const Hypergraph& a, const Hypergraph& b) {
  std::optional<Morphism> found;
  for_each_morphism(a, b, MorphismKind::Iso, [&](const Morphism& m) {
    found = m;
    return false;
  });
  return found;
}

Hypergraph canonical_form(const Hypergraph& g) {
  std::vector<VertexId> vs(g.vertices.begin(), g.vertices.end());
  std::map<VertexId, std::size_t> index;
  for (std::size_t i = 0; i < vs.size(); ++i) index[vs[i]] = i;
  IndexTuples tuples;
  std::vector<std::vector<std::size_t>> incident(vs.size());
  for (const auto& [e, t] : g.edges) {
    std::vector<std::size_t> it;
    for (const auto& v : t) it.push_back(index.at(v));
    for (std::size_t v : std::set<std::size_t>(it.begin(), it.end())) incident[v].push_back(tuples.size());
    tuples.push_back(std::move(it));
  }

  Hypergraph out;
  for (std::size_t i = 1; i <= vs.size(); ++i) out.vertices.insert(VertexId(std::to_string(i)));
  if (vs.empty()) return out;

  std::optional<Encoding> best;
  search_canonical(refine(Coloring(vs.size(), 0), tuples, incident), tuples, incident, best);
  std::size_t k = 0;
  for (const auto& t : *best) {
    Tuple tuple;
    for (std::size_t v : t) tuple.emplace_back(std::to_string(v + 1));
    out.edges.emplace(EdgeId("e" + std::to_string(++k)), std::move(tuple));
  }
  return out;
}

std::string to_string(const Hypergraph& g) {
  std::ostringstream os;
  os << "{V:";
  for (const auto& v : g.vertices) os << ' ' << v.value;
  os << "; E:";
  for (const auto& [e, t] : g.edges) {
    os << ' ' << e.value << "=(";
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i].value;
    os << ')';
  }
  os << '}';
  return os.str();
}

}  // namespace causality::hg
