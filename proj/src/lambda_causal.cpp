#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <unordered_set>

#include "causality/error.hpp"
#include "causality/lambda.hpp"

namespace causality::lam {

namespace {

const App* find_app(const TermPtr& t, Label label) {
  if (const auto* a = as_abs(t)) return find_app(a->body, label);
  if (const auto* p = as_app(t)) {
    if (p->label == label) return p;
    if (const auto* hit = find_app(p->fun, label)) return hit;
    return find_app(p->arg, label);
  }
  return nullptr;
}

std::vector<std::size_t> distances_from(const MultiwaySystem& msys, const std::vector<std::vector<std::size_t>>& out,
                                        std::size_t start) {
  constexpr auto unreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(msys.states.size(), unreached);
  std::deque<std::size_t> queue{start};
  dist[start] = 0;
  while (!queue.empty()) {
    std::size_t s = queue.front();
    queue.pop_front();
    for (std::size_t t : out[s]) {
      std::size_t to = msys.transitions[t].to;
      if (dist[to] != unreached) continue;
      dist[to] = dist[s] + 1;
      queue.push_back(to);
    }
  }
  return dist;
}

}  // namespace

MultiwaySystem multiway(const TermPtr& t, std::size_t max_states) {
  if (!is_good(t)) throw Error(ErrorCode::NotGood, print(t) + " is not a good term");
  return explore<TermPtr, Label>(
      t, alpha_key,
      [](const TermPtr& s) {
        std::vector<std::pair<TermPtr, Label>> out;
        for (auto& e : reduce_step(s)) out.emplace_back(std::move(e.target), e.label);
        return out;
      },
      max_states);
}

Event event_of(const MultiwaySystem& msys, std::size_t transition) {
  const auto& t = msys.transitions.at(transition);
  return Event{msys.states[t.from], msys.states[t.to], t.edge};
}

bool causal_2(const Event& e1, const Event& e2) {
  if (alpha_key(e1.target) != alpha_key(e2.source))
    throw Error(ErrorCode::NotSuccessive, "the second event does not start where the first ends");
  const App* before = find_app(e1.source, e2.label);
  const App* after = find_app(e1.target, e2.label);
  if (!before || !after) return false;
  return as_abs(before->fun) == nullptr && as_abs(after->fun) != nullptr;
}

CausalAnalysis::CausalAnalysis(const MultiwaySystem& msys) : msys_(msys), ahead_(msys.states.size()) {
  for (const auto& t : msys.transitions) events_.insert(t.edge);
  auto out = msys.outgoing();
  std::vector<char> state(msys.states.size(), 0);  // 0 new, 1 on stack, 2 done
  std::function<void(std::size_t)> visit = [&](std::size_t s) {
    state[s] = 1;
    for (std::size_t i : out[s]) {
      const auto& t = msys.transitions[i];
      if (state[t.to] == 1) throw Error(ErrorCode::InvalidGraph, "multiway system has a cycle");
      if (state[t.to] == 0) visit(t.to);
      ahead_[s].insert(t.edge);
      ahead_[s].insert(ahead_[t.to].begin(), ahead_[t.to].end());
    }
    state[s] = 2;
  };
  for (std::size_t s = 0; s < msys.states.size(); ++s)
    if (state[s] == 0) visit(s);
}

void CausalAnalysis::require_label(Label n) const {
  if (!events_.contains(n)) throw Error(ErrorCode::UnknownLabel, "no event labelled " + std::to_string(n));
}

bool CausalAnalysis::can_precede(Label n, Label m) const {
  for (const auto& t : msys_.transitions)
    if (t.edge == n && ahead_[t.to].contains(m)) return true;
  return false;
}

bool CausalAnalysis::causal(Label n, Label m) const {
  require_label(n);
  require_label(m);
  return n != m && can_precede(n, m) && !can_precede(m, n);
}

std::size_t CausalAnalysis::proper_time(Label n, Label m) const {
  if (!causal(n, m))
    throw Error(ErrorCode::NotCausallyOrdered,
                std::to_string(n) + " does not precede " + std::to_string(m) + " on every path");
  auto out = msys_.outgoing();
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& tn : msys_.transitions) {
    if (tn.edge != n) continue;
    auto dist = distances_from(msys_, out, tn.to);
    for (const auto& tm : msys_.transitions)
      if (tm.edge == m && dist[tm.from] != std::numeric_limits<std::size_t>::max())
        best = std::min(best, dist[tm.from] + 1);
  }
  return best;
}

CausalGraph CausalAnalysis::graph() const {
  CausalGraph g;
  g.events = events_;
  for (Label n : events_)
    for (Label m : events_)
      if (causal(n, m)) g.relation.emplace(n, m);
  return g;
}

bool causal(const MultiwaySystem& msys, Label n, Label m) { return CausalAnalysis(msys).causal(n, m); }

std::size_t proper_time(const MultiwaySystem& msys, Label n, Label m) {
  return CausalAnalysis(msys).proper_time(n, m);
}

CausalGraph causal_graph(const TermPtr& t, std::size_t max_states) {
  MultiwaySystem msys = multiway(t, max_states);
  return CausalAnalysis(msys).graph();
}

std::vector<Path> maximal_paths(const MultiwaySystem& msys, std::size_t limit) {
  std::vector<Path> out;
  auto next = msys.outgoing();
  Path current;
  std::function<void(std::size_t)> walk = [&](std::size_t s) {
    if (next[s].empty()) {
      if (out.size() >= limit) throw Error(ErrorCode::StateCapExceeded, "more than " + std::to_string(limit) + " paths");
      out.push_back(current);
      return;
    }
    for (std::size_t i : next[s]) {
      current.push_back(event_of(msys, i));
      walk(msys.transitions[i].to);
      current.pop_back();
    }
  };
  walk(0);
  return out;
}

bool homotopic(const Path& p1, const Path& p2, std::size_t max_paths) {
  if (p1.size() != p2.size()) throw Error(ErrorCode::EndpointMismatch, "paths have different lengths");
  if (p1.empty()) return true;
  if (alpha_key(p1.front().source) != alpha_key(p2.front().source) ||
      alpha_key(p1.back().target) != alpha_key(p2.back().target))
    throw Error(ErrorCode::EndpointMismatch, "paths do not share their endpoints");

  auto states_of = [](const Path& p) {
    std::vector<TermPtr> s{p.front().source};
    for (const auto& e : p) s.push_back(e.target);
    return s;
  };
  auto key_of = [](const std::vector<TermPtr>& s) {
    std::string k;
    for (const auto& t : s) k += alpha_key(t) + '|';
    return k;
  };

  std::vector<TermPtr> start = states_of(p1);
  const std::string goal = key_of(states_of(p2));
  std::unordered_set<std::string> seen{key_of(start)};
  std::deque<std::vector<TermPtr>> queue{start};
  while (!queue.empty()) {
    auto path = std::move(queue.front());
    queue.pop_front();
    if (key_of(path) == goal) return true;
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
      const std::string skip = alpha_key(path[i]);
      const std::string next = alpha_key(path[i + 1]);
      for (const auto& e : reduce_step(path[i - 1])) {
        if (alpha_key(e.target) == skip) continue;
        bool joins = false;
        for (const auto& f : reduce_step(e.target)) joins = joins || alpha_key(f.target) == next;
        if (!joins) continue;
        auto moved = path;
        moved[i] = e.target;
        if (!seen.insert(key_of(moved)).second) continue;
        if (seen.size() > max_paths)
          throw Error(ErrorCode::StateCapExceeded, "more than " + std::to_string(max_paths) + " paths");
        queue.push_back(std::move(moved));
      }
    }
  }
  return false;
}

}  // namespace causality::lam
