#pragma once

#include <cstddef>
#include <deque>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "causality/error.hpp"

namespace causality {

/// Explored rewriting system: states in breadth-first discovery order (the
/// root is state 0) and every transition between them.
template <class State, class Edge>
struct StateGraph {
  struct Transition {
    std::size_t from;
    std::size_t to;
    Edge edge;
  };

  std::vector<State> states;
  std::vector<Transition> transitions;

  const State& root() const { return states.front(); }

  std::vector<std::vector<std::size_t>> outgoing() const {
    std::vector<std::vector<std::size_t>> out(states.size());
    for (std::size_t i = 0; i < transitions.size(); ++i) out[transitions[i].from].push_back(i);
    return out;
  }
};

/// Breadth-first closure of `step` from `root`. `key` maps a state to a string
/// that is equal exactly for states to be identified; `step` returns the
/// (successor, edge) pairs of a state in a fixed order.
template <class State, class Edge, class KeyFn, class StepFn>
StateGraph<State, Edge> explore(State root, KeyFn key, StepFn step, std::size_t max_states) {
  StateGraph<State, Edge> g;
  std::unordered_map<std::string, std::size_t> index;
  index.emplace(key(root), 0);
  g.states.push_back(std::move(root));
  for (std::size_t next = 0; next < g.states.size(); ++next) {
    for (auto& [succ, edge] : step(g.states[next])) {
      std::string k = key(succ);
      auto it = index.find(k);
      std::size_t to;
      if (it == index.end()) {
        if (g.states.size() >= max_states)
          throw Error(ErrorCode::StateCapExceeded, "more than " + std::to_string(max_states) + " states");
        to = g.states.size();
        index.emplace(std::move(k), to);
        g.states.push_back(std::move(succ));
      } else {
        to = it->second;
      }
      g.transitions.push_back({next, to, std::move(edge)});
    }
  }
  return g;
}

}  // namespace causality

namespace causality {

/// Transition-index sequences of every path from the root to a state with
/// no successors. Throws StateCapExceeded past `limit` paths.
template <class State, class Edge>
std::vector<std::vector<std::size_t>> maximal_transition_paths(const StateGraph<State, Edge>& g,
                                                               std::size_t limit = 1000000) {
  std::vector<std::vector<std::size_t>> out;
  auto next = g.outgoing();
  std::vector<std::size_t> current;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};  // (state, next outgoing index)
  while (!stack.empty()) {
    auto& [s, k] = stack.back();
    if (next[s].empty()) {
      if (out.size() >= limit) throw Error(ErrorCode::StateCapExceeded, "more than " + std::to_string(limit) + " paths");
      out.push_back(current);
    }
    if (k == next[s].size()) {
      stack.pop_back();
      if (!current.empty()) current.pop_back();
      continue;
    }
    std::size_t t = next[s][k++];
    current.push_back(t);
    stack.emplace_back(g.transitions[t].to, 0);
  }
  return out;
}

}  // namespace causality
