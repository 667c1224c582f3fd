#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace causality::hg {

/// Orders identifier text: purely numeric identifiers come first, compared by
/// value; everything else follows in plain lexicographic order.
std::strong_ordering compare_id_text(const std::string& a, const std::string& b);

template <class Tag>
struct Ident {
  std::string value;

  Ident() = default;
  Ident(std::string v) : value(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  Ident(const char* v) : value(v) {}             // NOLINT(google-explicit-constructor)

  friend bool operator==(const Ident& a, const Ident& b) { return a.value == b.value; }
  friend std::strong_ordering operator<=>(const Ident& a, const Ident& b) {
    return compare_id_text(a.value, b.value);
  }
};

struct VertexTag {};
struct EdgeTag {};
using VertexId = Ident<VertexTag>;
using EdgeId = Ident<EdgeTag>;
using Tuple = std::vector<VertexId>;

/// A finite directed multihypergraph: a vertex set and a map from edge
/// identifiers to nonempty vertex tuples. Distinct edges may carry the same
/// tuple and tuples may repeat vertices.
struct Hypergraph {
  std::set<VertexId> vertices;
  std::map<EdgeId, Tuple> edges;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

  bool has_vertex(const VertexId& v) const { return vertices.contains(v); }
  bool has_edge(const EdgeId& e) const { return edges.contains(e); }
  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t edge_count() const { return edges.size(); }
};

/// Builds a graph from plain strings. Edge tuples are taken verbatim, so the
/// result may be invalid; run `validate` when that matters.
Hypergraph make_graph(const std::vector<std::string>& vertices,
                      const std::vector<std::pair<std::string, std::vector<std::string>>>& edges);

/// Invariant violations, one human-readable line each. Empty means valid.
std::vector<std::string> validate(const Hypergraph& g);

struct Morphism {
  Hypergraph source;
  Hypergraph target;
  std::map<VertexId, VertexId> vmap;
  std::map<EdgeId, EdgeId> emap;

  friend bool operator==(const Morphism&, const Morphism&) = default;

  const VertexId& operator()(const VertexId& v) const;
  const EdgeId& operator()(const EdgeId& e) const;
};

/// Throws PartialMap when either map misses a source element.
bool is_morphism(const Morphism& m);
/// Throws NotAMorphism when `m` fails the commutation check.
bool is_monomorphism(const Morphism& m);
bool is_isomorphism(const Morphism& m);

Morphism identity(const Hypergraph& g);
/// Identity-on-identifiers inclusion of `sub` into `super`.
Morphism inclusion(const Hypergraph& sub, const Hypergraph& super);
/// `second` after `first`.
Morphism compose(const Morphism& second, const Morphism& first);
Morphism inverse(const Morphism& iso);

/// Image of `m` as a subgraph of its target.
Hypergraph image(const Morphism& m);

struct Span {
  Hypergraph apex;
  Morphism left;
  Morphism right;
};

struct Cospan {
  Hypergraph apex;
  Morphism left;
  Morphism right;
};

/// Fibre product of f: A -> C and g: B -> C. Vertices and edges of the apex
/// are the pairs with equal images, named "(a,b)".
Span pullback(const Morphism& f, const Morphism& g);

/// Gluing of A and B along f: C -> A (mono) and g: C -> B. Each class of the
/// generated equivalence is named after its least member, left side first
/// on ties; clashing names get trailing primes.
Cospan pushout(const Morphism& f, const Morphism& g);

/// The unique morphism out of a pushout apex induced by a commuting cocone.
Morphism pushout_mediator(const Cospan& po, const Morphism& to_x_from_a, const Morphism& to_x_from_b);
/// The unique morphism into a pullback apex induced by a commuting cone.
Morphism pullback_mediator(const Span& pb, const Morphism& to_a, const Morphism& to_b);

Hypergraph delete_vertices(const Hypergraph& g, const std::set<VertexId>& s);
Hypergraph delete_edges(const Hypergraph& g, const std::set<EdgeId>& s);

enum class MorphismKind { Any, Mono, Iso };

/// Partial assignment that every enumerated morphism must extend.
struct Seed {
  std::map<VertexId, VertexId> vmap;
  std::map<EdgeId, EdgeId> emap;
};

/// Visits every morphism a -> b of the requested kind in lexicographic order
/// (source vertices by identifier, candidates by identifier, then edges
/// likewise). The visitor returns false to stop early.
void for_each_morphism(const Hypergraph& a, const Hypergraph& b, MorphismKind kind,
                       const std::function<bool(const Morphism&)>& visit, const Seed& seed = {});

std::vector<Morphism> morphisms(const Hypergraph& a, const Hypergraph& b, MorphismKind kind,
                                const Seed& seed = {});

/// Lexicographically least isomorphism a -> b, if any.
std::optional<Morphism> find_isomorphism(const Hypergraph& a, const Hypergraph& b);

/// Representative of the isomorphism class: vertices "1".."n", edges
/// "e1".."em" in tuple order.
Hypergraph canonical_form(const Hypergraph& g);

std::string to_string(const Hypergraph& g);

}  // namespace causality::hg
