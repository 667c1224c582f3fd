#include "causality/full.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

#include "causality/error.hpp"

namespace causality::full {

Label::Label(Base b, std::vector<HistoryEntry> h) : base(b), history(std::move(h)) {}

bool operator==(const Label& a, const Label& b) { return a.base == b.base && a.history == b.history; }
std::strong_ordering operator<=>(const Label& a, const Label& b) {
  if (auto c = a.base <=> b.base; c != 0) return c;
  return std::lexicographical_compare_three_way(a.history.begin(), a.history.end(), b.history.begin(),
                                                b.history.end());
}
bool operator==(const HistoryEntry& a, const HistoryEntry& b) { return a.event == b.event && a.var == b.var; }
std::strong_ordering operator<=>(const HistoryEntry& a, const HistoryEntry& b) {
  if (auto c = a.event <=> b.event; c != 0) return c;
  return a.var <=> b.var;
}

std::string to_string(const Label& l) {
  if (l.history.empty()) return std::to_string(l.base);
  std::string s = "(" + std::to_string(l.base);
  for (const auto& h : l.history) s += ",(" + to_string(h.event) + "," + to_string(h.var) + ")";
  return s + ")";
}

std::string to_string(const FineStep& s) { return "(" + to_string(s.l) + "," + (s.m ? to_string(*s.m) : "-") + ")"; }

bool descends_from(const Label& l, const Label& ancestor) {
  return l.base == ancestor.base && l.history.size() >= ancestor.history.size() &&
         std::equal(ancestor.history.begin(), ancestor.history.end(), l.history.begin());
}

namespace {

void free_occurrences(const TermPtr& t, const std::string& x, std::vector<VarLabel>& out) {
  if (const auto* v = as_var(t)) {
    if (v->name == x) out.push_back(v->label);
  } else if (const auto* a = as_abs(t)) {
    if (a->binder != x) free_occurrences(a->body, x, out);
  } else {
    const auto& p = std::get<App>(t->node);
    free_occurrences(p.fun, x, out);
    free_occurrences(p.arg, x, out);
  }
}

}  // namespace

TermPtr var(std::string name, VarLabel label) {
  return std::make_shared<const Term>(Term{Var{std::move(name), std::move(label)}});
}
TermPtr abs(std::string binder, TermPtr body) {
  std::vector<VarLabel> occ;
  free_occurrences(body, binder, occ);
  return std::make_shared<const Term>(Term{Abs{std::move(binder), std::move(body), occ.size()}});
}
TermPtr app(TermPtr fun, TermPtr arg, EventLabel label) {
  return std::make_shared<const Term>(Term{App{std::move(fun), std::move(arg), std::move(label)}});
}

const Var* as_var(const TermPtr& t) { return std::get_if<Var>(&t->node); }
const Abs* as_abs(const TermPtr& t) { return std::get_if<Abs>(&t->node); }
const App* as_app(const TermPtr& t) { return std::get_if<App>(&t->node); }

namespace {

TermPtr annotate_with(const lam::TermPtr& t, std::map<std::string, Base>& counters) {
  if (const auto* v = lam::as_var(t)) return var(v->name, Label(++counters[v->name]));
  if (const auto* a = lam::as_abs(t)) return abs(a->binder, annotate_with(a->body, counters));
  const auto& p = std::get<lam::App>(t->node);
  TermPtr f = annotate_with(p.fun, counters);
  TermPtr x = annotate_with(p.arg, counters);
  return app(std::move(f), std::move(x), Label(p.label));
}

void print_to(std::ostringstream& os, const TermPtr& t) {
  if (const auto* v = as_var(t)) {
    os << v->name << '_' << to_string(v->label);
  } else if (const auto* a = as_abs(t)) {
    os << '\\' << a->binder << ". ";
    print_to(os, a->body);
  } else {
    const auto& p = std::get<App>(t->node);
    bool wrap_fun = as_abs(p.fun) != nullptr;
    bool wrap_arg = as_var(p.arg) == nullptr;
    if (wrap_fun) os << '(';
    print_to(os, p.fun);
    if (wrap_fun) os << ')';
    os << " @" << to_string(p.label) << ' ';
    if (wrap_arg) os << '(';
    print_to(os, p.arg);
    if (wrap_arg) os << ')';
  }
}

void key_to(std::ostringstream& os, const TermPtr& t, std::vector<std::string>& bound) {
  if (const auto* v = as_var(t)) {
    auto it = std::find(bound.rbegin(), bound.rend(), v->name);
    if (it == bound.rend())
      os << '$' << v->name;
    else
      os << '#' << (it - bound.rbegin());
    os << ':' << to_string(v->label) << ';';
  } else if (const auto* a = as_abs(t)) {
    os << "\\(";
    bound.push_back(a->binder);
    key_to(os, a->body, bound);
    bound.pop_back();
    os << ')';
  } else {
    const auto& p = std::get<App>(t->node);
    os << '[' << to_string(p.label) << ' ';
    key_to(os, p.fun, bound);
    key_to(os, p.arg, bound);
    os << ']';
  }
}

void event_labels_to(const TermPtr& t, std::vector<EventLabel>& out) {
  if (const auto* a = as_abs(t)) {
    event_labels_to(a->body, out);
  } else if (const auto* p = as_app(t)) {
    event_labels_to(p->fun, out);
    event_labels_to(p->arg, out);
    out.push_back(p->label);
  }
}

void names_to(const TermPtr& t, std::set<std::string>& out) {
  if (const auto* v = as_var(t)) {
    out.insert(v->name);
  } else if (const auto* a = as_abs(t)) {
    out.insert(a->binder);
    names_to(a->body, out);
  } else {
    const auto& p = std::get<App>(t->node);
    names_to(p.fun, out);
    names_to(p.arg, out);
  }
}

std::set<std::string> all_names(const TermPtr& t) {
  std::set<std::string> out;
  names_to(t, out);
  return out;
}

std::string fresh_for(const std::string& x, const TermPtr& body, const TermPtr& incoming) {
  std::set<std::string> taken = all_names(body);
  for (const auto& n : all_names(incoming)) taken.insert(n);
  taken.insert(x);
  return lam::fresh_name(x, taken);
}

TermPtr rename_free(const TermPtr& t, const std::string& from, const std::string& to) {
  if (const auto* v = as_var(t)) return v->name == from ? var(to, v->label) : t;
  if (const auto* a = as_abs(t)) return a->binder == from ? t : abs(a->binder, rename_free(a->body, from, to));
  const auto& p = std::get<App>(t->node);
  return app(rename_free(p.fun, from, to), rename_free(p.arg, from, to), p.label);
}

bool has_occurrence(const TermPtr& t, const std::string& x, const VarLabel& at) {
  std::vector<VarLabel> occ;
  free_occurrences(t, x, occ);
  return std::find(occ.begin(), occ.end(), at) != occ.end();
}

// M[N/x] with A(N, (l, m)) at each free occurrence x_m.
TermPtr substitute_all(const TermPtr& t, const std::string& x, const TermPtr& n, const EventLabel& l) {
  if (const auto* v = as_var(t)) return v->name == x ? append_history(n, l, v->label) : t;
  if (const auto* p = as_app(t)) return app(substitute_all(p->fun, x, n, l), substitute_all(p->arg, x, n, l), p->label);
  const auto& a = std::get<Abs>(t->node);
  if (a.binder == x || !free_vars(a.body).contains(x)) return t;
  if (free_vars(n).contains(a.binder)) {
    std::string y = fresh_for(a.binder, a.body, n);
    return abs(y, substitute_all(rename_free(a.body, a.binder, y), x, n, l));
  }
  return abs(a.binder, substitute_all(a.body, x, n, l));
}

using Steps = std::vector<std::pair<TermPtr, FineStep>>;

Steps fine_steps(const TermPtr& t) {
  Steps out;
  if (const auto* a = as_abs(t)) {
    for (auto& [b, s] : fine_steps(a->body)) out.emplace_back(abs(a->binder, std::move(b)), std::move(s));
    return out;
  }
  const auto* p = as_app(t);
  if (!p) return out;
  if (const auto* f = as_abs(p->fun)) {
    const std::string& x = f->binder;
    auto occurrences = var_labels(f->body, x);
    if (occurrences.empty()) {
      out.emplace_back(f->body, FineStep{p->label, std::nullopt});
    } else if (occurrences.size() == 1) {
      out.emplace_back(substitute_at(f->body, x, occurrences[0], append_history(p->arg, p->label, occurrences[0])),
                       FineStep{p->label, occurrences[0]});
    } else {
      // The binder stays, so it must not capture free variables of the copy.
      bool clash = free_vars(p->arg).contains(x);
      std::string y = clash ? fresh_for(x, f->body, p->arg) : x;
      TermPtr body = clash ? rename_free(f->body, x, y) : f->body;
      for (const auto& m : occurrences) {
        TermPtr next = substitute_at(body, y, m, append_history(p->arg, p->label, m));
        out.emplace_back(app(abs(y, std::move(next)), p->arg, p->label), FineStep{p->label, m});
      }
    }
  }
  for (auto& [f, s] : fine_steps(p->fun)) out.emplace_back(app(std::move(f), p->arg, p->label), std::move(s));
  for (auto& [a, s] : fine_steps(p->arg)) out.emplace_back(app(p->fun, std::move(a), p->label), std::move(s));
  return out;
}

std::vector<std::pair<TermPtr, ClassicEdge>> classic_steps(const TermPtr& t) {
  std::vector<std::pair<TermPtr, ClassicEdge>> out;
  if (const auto* a = as_abs(t)) {
    for (auto& [b, s] : classic_steps(a->body)) out.emplace_back(abs(a->binder, std::move(b)), std::move(s));
    return out;
  }
  const auto* p = as_app(t);
  if (!p) return out;
  if (const auto* f = as_abs(p->fun)) {
    ClassicEdge edge{p->label, {}};
    auto occurrences = var_labels(f->body, f->binder);
    for (const auto& m : occurrences) edge.bundle.push_back(FineStep{p->label, m});
    if (occurrences.empty()) edge.bundle.push_back(FineStep{p->label, std::nullopt});
    out.emplace_back(substitute_all(f->body, f->binder, p->arg, p->label), std::move(edge));
  }
  for (auto& [f, s] : classic_steps(p->fun)) out.emplace_back(app(std::move(f), p->arg, p->label), std::move(s));
  for (auto& [a, s] : classic_steps(p->arg)) out.emplace_back(app(p->fun, std::move(a), p->label), std::move(s));
  return out;
}

const App* find_app(const TermPtr& t, const EventLabel& label) {
  if (const auto* a = as_abs(t)) return find_app(a->body, label);
  if (const auto* p = as_app(t)) {
    if (p->label == label) return p;
    if (const auto* hit = find_app(p->fun, label)) return hit;
    return find_app(p->arg, label);
  }
  return nullptr;
}

bool counts_and_binders_ok(const TermPtr& t) {
  if (const auto* a = as_abs(t)) {
    auto occ = var_labels(a->body, a->binder);
    std::set<VarLabel> distinct(occ.begin(), occ.end());
    return occ.size() == a->count && distinct.size() == occ.size() && counts_and_binders_ok(a->body);
  }
  if (const auto* p = as_app(t)) return counts_and_binders_ok(p->fun) && counts_and_binders_ok(p->arg);
  return true;
}

using Matcher = std::function<bool(const FineStep&)>;

bool has_cycle(const FineMultiway& g) {
  auto out = g.outgoing();
  std::vector<char> state(g.states.size(), 0);
  std::function<bool(std::size_t)> visit = [&](std::size_t s) {
    state[s] = 1;
    for (std::size_t i : out[s]) {
      std::size_t to = g.transitions[i].to;
      if (state[to] == 1) return true;
      if (state[to] == 0 && visit(to)) return true;
    }
    state[s] = 2;
    return false;
  };
  for (std::size_t s = 0; s < g.states.size(); ++s)
    if (state[s] == 0 && visit(s)) return true;
  return false;
}

// Walks (state, phase) pairs: phase 0 before either event, 1 after a
// first-event, 2 after a second-event, 3 when one step matched both.
Verdict precedes_everywhere(const FineMultiway& g, const Matcher& first, const Matcher& second) {
  if (has_cycle(g)) return Verdict::Unknown;
  auto out = g.outgoing();
  std::vector<std::array<bool, 4>> seen(g.states.size(), {false, false, false, false});
  std::deque<std::pair<std::size_t, int>> queue{{0, 0}};
  seen[0][0] = true;
  bool forward = false, backward = false;
  while (!queue.empty()) {
    auto [s, phase] = queue.front();
    queue.pop_front();
    for (std::size_t i : out[s]) {
      const auto& t = g.transitions[i];
      bool a = first(t.edge), b = second(t.edge);
      int next = phase;
      if (phase == 0) {
        next = a && b ? 3 : a ? 1 : b ? 2 : 0;
      } else if (phase == 1 && b) {
        forward = true;
      } else if (phase == 2 && a) {
        backward = true;
      }
      if (!seen[t.to][next]) {
        seen[t.to][next] = true;
        queue.emplace_back(t.to, next);
      }
    }
  }
  return forward && !backward ? Verdict::True : Verdict::False;
}

}  // namespace

TermPtr annotate(const lam::TermPtr& t) {
  std::map<std::string, Base> counters;
  return annotate_with(t, counters);
}

TermPtr annotate(std::string_view text) { return annotate(lam::parse(text)); }

std::string print(const TermPtr& t) {
  std::ostringstream os;
  print_to(os, t);
  return os.str();
}

std::string alpha_key(const TermPtr& t) {
  std::ostringstream os;
  std::vector<std::string> bound;
  key_to(os, t, bound);
  return os.str();
}

std::set<EventLabel> event_labels(const TermPtr& t) {
  std::vector<EventLabel> all;
  event_labels_to(t, all);
  return std::set<EventLabel>(all.begin(), all.end());
}

std::vector<VarLabel> var_labels(const TermPtr& t, const std::string& x) {
  std::vector<VarLabel> out;
  free_occurrences(t, x, out);
  return out;
}

std::set<std::string> free_vars(const TermPtr& t) {
  if (const auto* v = as_var(t)) return {v->name};
  if (const auto* a = as_abs(t)) {
    auto s = free_vars(a->body);
    s.erase(a->binder);
    return s;
  }
  const auto& p = std::get<App>(t->node);
  auto s = free_vars(p.fun);
  auto r = free_vars(p.arg);
  s.insert(r.begin(), r.end());
  return s;
}

bool well_formed(const TermPtr& t) {
  std::vector<EventLabel> all;
  event_labels_to(t, all);
  std::set<EventLabel> distinct(all.begin(), all.end());
  if (distinct.size() != all.size()) return false;
  for (const auto& x : free_vars(t)) {
    auto occ = var_labels(t, x);
    if (std::set<VarLabel>(occ.begin(), occ.end()).size() != occ.size()) return false;
  }
  return counts_and_binders_ok(t);
}

TermPtr append_history(const TermPtr& t, const EventLabel& l, const VarLabel& m) {
  if (const auto* v = as_var(t)) {
    VarLabel label = v->label;
    label.history.push_back(HistoryEntry{l, m});
    return var(v->name, std::move(label));
  }
  if (const auto* a = as_abs(t)) return abs(a->binder, append_history(a->body, l, m));
  const auto& p = std::get<App>(t->node);
  EventLabel label = p.label;
  label.history.push_back(HistoryEntry{l, m});
  return app(append_history(p.fun, l, m), append_history(p.arg, l, m), std::move(label));
}

TermPtr substitute_at(const TermPtr& t, const std::string& x, const VarLabel& at, const TermPtr& p) {
  if (const auto* v = as_var(t)) return v->name == x && v->label == at ? p : t;
  if (const auto* q = as_app(t)) return app(substitute_at(q->fun, x, at, p), substitute_at(q->arg, x, at, p), q->label);
  const auto& a = std::get<Abs>(t->node);
  if (a.binder == x || !has_occurrence(a.body, x, at)) return t;
  if (free_vars(p).contains(a.binder)) {
    std::string y = fresh_for(a.binder, a.body, p);
    return abs(y, substitute_at(rename_free(a.body, a.binder, y), x, at, p));
  }
  return abs(a.binder, substitute_at(a.body, x, at, p));
}

std::vector<FullEvent> reduce_step_full(const TermPtr& t) {
  std::vector<FullEvent> out;
  for (auto& [target, s] : fine_steps(t)) out.push_back(FullEvent{t, std::move(target), std::move(s.l), std::move(s.m)});
  return out;
}

std::vector<ClassicStep> reduce_step_classic(const TermPtr& t) {
  std::vector<ClassicStep> out;
  for (auto& [target, e] : classic_steps(t))
    out.push_back(ClassicStep{t, std::move(target), std::move(e.label), std::move(e.bundle)});
  return out;
}

EventLabel project_label(const FullEvent& e1, const EventLabel& l_prime) {
  if (!event_labels(e1.target).contains(l_prime))
    throw Error(ErrorCode::LabelNotFound, "no application labelled " + to_string(l_prime) + " after the event");
  if (event_labels(e1.source).contains(l_prime)) return l_prime;
  if (e1.var_label && !l_prime.history.empty()) {
    const HistoryEntry& last = l_prime.history.back();
    if (last.event == e1.event_label && last.var == *e1.var_label) {
      EventLabel origin = l_prime;
      origin.history.pop_back();
      if (event_labels(e1.source).contains(origin)) return origin;
    }
  }
  throw Error(ErrorCode::LabelNotFound, to_string(l_prime) + " was not copied by event " + to_string(e1.step()));
}

bool causal_2_full(const FullEvent& e1, const FullEvent& e2) {
  if (alpha_key(e1.target) != alpha_key(e2.source))
    throw Error(ErrorCode::NotSuccessive, "the second event does not start where the first ends");
  const App* before = find_app(e1.source, project_label(e1, e2.event_label));
  return before && as_abs(before->fun) == nullptr;
}

FineMultiway multiway_full(const TermPtr& t, std::size_t max_states) {
  return explore<TermPtr, FineStep>(t, alpha_key, fine_steps, max_states);
}

ClassicMultiway multiway_classic(const TermPtr& t, std::size_t max_states) {
  return explore<TermPtr, ClassicEdge>(t, alpha_key, classic_steps, max_states);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::False:
      return "false";
    case Verdict::True:
      return "true";
    case Verdict::Unknown:
      return "unknown";
  }
  return "unknown";
}

Verdict causal_all_paths_full(const TermPtr& t, const EventLabel& l1, const EventLabel& l2, std::size_t max_states) {
  if (l1 == l2) return Verdict::False;
  FineMultiway g;
  try {
    g = multiway_full(t, max_states);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::StateCapExceeded) return Verdict::Unknown;
    throw;
  }
  return precedes_everywhere(
      g, [&](const FineStep& s) { return descends_from(s.l, l1); },
      [&](const FineStep& s) { return descends_from(s.l, l2); });
}

Verdict fine_causal(const FineMultiway& g, const FineStep& first, const FineStep& second) {
  if (first == second) return Verdict::False;
  auto matcher = [](const FineStep& pattern) {
    return [pattern](const FineStep& s) {
      if (!descends_from(s.l, pattern.l)) return false;
      if (!pattern.m) return !s.m.has_value();
      return s.m.has_value() && descends_from(*s.m, *pattern.m);
    };
  };
  return precedes_everywhere(g, matcher(first), matcher(second));
}

Verdict induced_causal(const std::vector<ClassicStep>& path, std::size_t i, std::size_t j, std::size_t budget,
                       std::size_t max_states) {
  if (!(i < j && j < path.size()))
    throw Error(ErrorCode::BadIndices, "need i < j < " + std::to_string(path.size()) + ", got " + std::to_string(i) +
                                           ", " + std::to_string(j));
  for (std::size_t k = i; k < j; ++k)
    if (alpha_key(path[k].target) != alpha_key(path[k + 1].source))
      throw Error(ErrorCode::NotSuccessive, "classic steps " + std::to_string(k) + " and " + std::to_string(k + 1) +
                                                " do not chain");

  // Number of orderings of the bundles between i and j.
  std::size_t total = 1;
  for (std::size_t k = i; k <= j; ++k)
    for (std::size_t f = 2; f <= path[k].bundle.size(); ++f) {
      if (total > budget / f) return Verdict::Unknown;
      total *= f;
    }
  if (total > budget) return Verdict::Unknown;

  FineMultiway g;
  try {
    g = multiway_full(path[i].source, max_states);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::StateCapExceeded) return Verdict::Unknown;
    throw;
  }

  std::map<std::pair<std::size_t, std::size_t>, Verdict> memo;
  auto relation = [&](std::size_t a, std::size_t b) {
    auto it = memo.find({a, b});
    if (it != memo.end()) return it->second;
    Verdict v = fine_causal(g, path[i].bundle[a], path[j].bundle[b]);
    memo.emplace(std::make_pair(a, b), v);
    return v;
  };

  std::vector<std::vector<std::size_t>> orders;
  for (std::size_t k = i; k <= j; ++k) {
    std::vector<std::size_t> o(path[k].bundle.size());
    for (std::size_t x = 0; x < o.size(); ++x) o[x] = x;
    orders.push_back(std::move(o));
  }
  bool unknown = false;
  for (;;) {
    // Within this refinement, look for a fine event of step i before every
    // fine event of step j.
    bool found = false;
    for (std::size_t a : orders.front()) {
      bool all = true;
      for (std::size_t b : orders.back()) {
        Verdict v = relation(a, b);
        if (v == Verdict::Unknown) unknown = true;
        all = all && v == Verdict::True;
      }
      if (all) {
        found = true;
        break;
      }
    }
    if (!found) return unknown ? Verdict::Unknown : Verdict::False;
    std::size_t k = 0;
    while (k < orders.size() && !std::next_permutation(orders[k].begin(), orders[k].end())) ++k;
    if (k == orders.size()) break;
  }
  return Verdict::True;
}

}  // namespace causality::full
