#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "causality/lambda.hpp"
#include "causality/state_graph.hpp"

namespace causality::full {

using Base = std::uint64_t;

struct HistoryEntry;

/// A base label together with the (event, variable) pairs appended by every
/// substitution that copied it. Event and variable labels share this shape.
struct Label {
  Base base = 0;
  std::vector<HistoryEntry> history;

  Label() = default;
  Label(Base b) : base(b) {}  // NOLINT(google-explicit-constructor)
  Label(Base b, std::vector<HistoryEntry> h);
};

struct HistoryEntry {
  Label event;
  Label var;
};

bool operator==(const Label& a, const Label& b);
std::strong_ordering operator<=>(const Label& a, const Label& b);
bool operator==(const HistoryEntry& a, const HistoryEntry& b);
std::strong_ordering operator<=>(const HistoryEntry& a, const HistoryEntry& b);

using EventLabel = Label;
using VarLabel = Label;

/// "3" for a bare label, "(3,(2,1))" once (2,1) has been appended.
std::string to_string(const Label& l);
/// Same base, and the history of `ancestor` is a prefix of that of `l`.
bool descends_from(const Label& l, const Label& ancestor);

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Var {
  std::string name;
  VarLabel label;
};
struct Abs {
  std::string binder;
  TermPtr body;
  std::size_t count;  // free occurrences of binder in body
};
struct App {
  TermPtr fun;
  TermPtr arg;
  EventLabel label;
};

struct Term {
  std::variant<Var, Abs, App> node;
};

TermPtr var(std::string name, VarLabel label);
/// Counts the free occurrences of `binder` itself.
TermPtr abs(std::string binder, TermPtr body);
TermPtr app(TermPtr fun, TermPtr arg, EventLabel label);

const Var* as_var(const TermPtr& t);
const Abs* as_abs(const TermPtr& t);
const App* as_app(const TermPtr& t);

/// Application labels carry over as bases with empty history; occurrences of
/// each variable name are numbered 1, 2, ... from left to right.
TermPtr annotate(const lam::TermPtr& t);
TermPtr annotate(std::string_view text);

std::string print(const TermPtr& t);
/// Equal exactly for terms that differ only in bound-variable names.
std::string alpha_key(const TermPtr& t);

std::set<EventLabel> event_labels(const TermPtr& t);
/// Labels of the free occurrences of x, left to right.
std::vector<VarLabel> var_labels(const TermPtr& t, const std::string& x);
std::set<std::string> free_vars(const TermPtr& t);

/// Distinct event labels, per-name distinct variable labels and correct
/// abstraction counts.
bool well_formed(const TermPtr& t);

TermPtr append_history(const TermPtr& t, const EventLabel& l, const VarLabel& m);
/// M[P/x, m]: replaces the free occurrence of x labelled m.
TermPtr substitute_at(const TermPtr& m, const std::string& x, const VarLabel& at, const TermPtr& p);

/// An event label with the occurrence it substitutes at; no occurrence when
/// the argument is discarded.
struct FineStep {
  EventLabel l;
  std::optional<VarLabel> m;

  friend bool operator==(const FineStep&, const FineStep&) = default;
};
std::string to_string(const FineStep& s);

struct FullEvent {
  TermPtr source;
  TermPtr target;
  EventLabel event_label;
  std::optional<VarLabel> var_label;

  FineStep step() const { return {event_label, var_label}; }
};

/// One-substitution-at-a-time reduction: every redex event (one per
/// occurrence while more than one remains) before those of the function part,
/// before those of the argument part.
std::vector<FullEvent> reduce_step_full(const TermPtr& t);

struct ClassicStep {
  TermPtr source;
  TermPtr target;
  EventLabel label;
  std::vector<FineStep> bundle;
};

/// Ordinary reduction, substituting at every occurrence at once.
std::vector<ClassicStep> reduce_step_classic(const TermPtr& t);

/// The label in e1.source that `l_prime` (a label of e1.target) was copied
/// from. Throws LabelNotFound.
EventLabel project_label(const FullEvent& e1, const EventLabel& l_prime);

/// Throws NotSuccessive.
bool causal_2_full(const FullEvent& e1, const FullEvent& e2);

struct ClassicEdge {
  EventLabel label;
  std::vector<FineStep> bundle;
};

using FineMultiway = StateGraph<TermPtr, FineStep>;
using ClassicMultiway = StateGraph<TermPtr, ClassicEdge>;

FineMultiway multiway_full(const TermPtr& t, std::size_t max_states = lam::default_max_states);
ClassicMultiway multiway_classic(const TermPtr& t, std::size_t max_states = lam::default_max_states);

enum class Verdict { False, True, Unknown };
std::string_view to_string(Verdict v);

/// Whether an event descending from l1 comes before one descending from l2 on
/// every maximal path holding both (and some path holds both). Unknown when
/// the state cap is hit or the system has a cycle.
Verdict causal_all_paths_full(const TermPtr& t, const EventLabel& l1, const EventLabel& l2,
                              std::size_t max_states = lam::default_max_states);

/// Same criterion for fine events, matching the variable label as well.
Verdict fine_causal(const FineMultiway& g, const FineStep& first, const FineStep& second);

/// Induced causality between classic steps i and j of `path`: for every
/// ordering of the fine substitutions bundled in steps i..j, some fine event
/// of step i precedes every fine event of step j. Unknown once more than
/// `budget` orderings would be needed or the fine system is too large.
/// Throws BadIndices, NotSuccessive.
Verdict induced_causal(const std::vector<ClassicStep>& path, std::size_t i, std::size_t j, std::size_t budget,
                       std::size_t max_states = lam::default_max_states);

}  // namespace causality::full
