#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "causality/state_graph.hpp"

namespace causality::lam {

using Label = std::uint64_t;

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Var {
  std::string name;
};
struct Abs {
  std::string binder;
  TermPtr body;
};
struct App {
  TermPtr fun;
  TermPtr arg;
  Label label;
};

struct Term {
  std::variant<Var, Abs, App> node;
};

TermPtr var(std::string name);
TermPtr abs(std::string binder, TermPtr body);
TermPtr app(TermPtr fun, TermPtr arg, Label label);

const Var* as_var(const TermPtr& t);
const Abs* as_abs(const TermPtr& t);
const App* as_app(const TermPtr& t);

/// Parses the surface syntax: `\x. M` or `λx. M`, left-associative
/// juxtaposition, parentheses, and `M @n N` for an application labelled n.
/// Unlabelled applications are numbered after their function and argument
/// subterms, using the smallest positive labels not written explicitly.
TermPtr parse(std::string_view text);
std::string print(const TermPtr& t);

/// Structural key identifying terms up to renaming of bound variables.
/// Labels are part of the key.
std::string alpha_key(const TermPtr& t);
bool alpha_equal(const TermPtr& a, const TermPtr& b);

std::set<std::string> free_vars(const TermPtr& t);
std::size_t free_occurrences(const TermPtr& t, const std::string& x);
/// `x` with the fewest trailing primes that avoids every name in `taken`.
std::string fresh_name(const std::string& x, const std::set<std::string>& taken);
/// Capture-avoiding M[N/x].
TermPtr substitute(const TermPtr& m, const std::string& x, const TermPtr& n);

std::set<Label> label_set(const TermPtr& t);
std::size_t length(const TermPtr& t);
/// Every binder occurs free at most once in its body and no label repeats.
bool is_good(const TermPtr& t);

struct Event {
  TermPtr source;
  TermPtr target;
  Label label;
};

/// One event per redex, the redex itself before its function part before its
/// argument part. Throws NotGood.
std::vector<Event> reduce_step(const TermPtr& t);

using MultiwaySystem = StateGraph<TermPtr, Label>;
constexpr std::size_t default_max_states = 100000;

MultiwaySystem multiway(const TermPtr& t, std::size_t max_states = default_max_states);
Event event_of(const MultiwaySystem& msys, std::size_t transition);

/// Successive-event causality: the application that `e2` reduces had a
/// non-abstraction in function position before `e1`. Throws NotSuccessive.
bool causal_2(const Event& e1, const Event& e2);

struct CausalGraph {
  std::set<Label> events;
  std::set<std::pair<Label, Label>> relation;
};

/// Order facts of one multiway system, computed once.
class CausalAnalysis {
 public:
  explicit CausalAnalysis(const MultiwaySystem& msys);

  const std::set<Label>& events() const { return events_; }
  /// Some path has an n-event followed later by an m-event.
  bool can_precede(Label n, Label m) const;
  /// n occurs before m on every maximal path that has both, and some path
  /// has both. Throws UnknownLabel.
  bool causal(Label n, Label m) const;
  /// Least 1 + number of events strictly between n and m over all paths.
  /// Throws NotCausallyOrdered unless causal(n, m).
  std::size_t proper_time(Label n, Label m) const;
  CausalGraph graph() const;

 private:
  void require_label(Label n) const;

  const MultiwaySystem& msys_;
  std::set<Label> events_;
  std::vector<std::set<Label>> ahead_;  // labels on transitions reachable from each state
};

bool causal(const MultiwaySystem& msys, Label n, Label m);
std::size_t proper_time(const MultiwaySystem& msys, Label n, Label m);
CausalGraph causal_graph(const TermPtr& t, std::size_t max_states = default_max_states);

using Path = std::vector<Event>;

/// All root-to-normal-form paths, in depth-first order. Throws
/// StateCapExceeded after `limit` paths.
std::vector<Path> maximal_paths(const MultiwaySystem& msys, std::size_t limit = 1000000);

/// Whether p2 is reachable from p1 by replacing one intermediate state at a
/// time. Throws EndpointMismatch unless both start and end together and have
/// the same length.
bool homotopic(const Path& p1, const Path& p2, std::size_t max_paths = 1000000);

}  // namespace causality::lam
