#include <doctest.h>

#include <algorithm>
#include <set>

#include "causality/error.hpp"
#include "causality/full.hpp"
#include "support/full_oracles.hpp"
#include "support/lambda_oracles.hpp"

using namespace causality;
using namespace causality::full;

namespace doctest {
template <>
struct StringMaker<Label> {
  static String convert(const Label& l) { return to_string(l).c_str(); }
};
template <>
struct StringMaker<FineStep> {
  static String convert(const FineStep& s) { return to_string(s).c_str(); }
};
template <>
struct StringMaker<std::set<EventLabel>> {
  static String convert(const std::set<EventLabel>& s) {
    std::string out = "{";
    for (const auto& l : s) out += " " + to_string(l);
    return (out + " }").c_str();
  }
};
}  // namespace doctest

namespace {

Label hist(Base base, std::vector<std::pair<Label, Label>> entries) {
  std::vector<HistoryEntry> h;
  for (auto& [l, m] : entries) h.push_back(HistoryEntry{l, m});
  return Label(base, std::move(h));
}

FullEvent event_at(const std::vector<FullEvent>& events, const FineStep& s) {
  auto it = std::find_if(events.begin(), events.end(), [&](const FullEvent& e) { return e.step() == s; });
  REQUIRE(it != events.end());
  return *it;
}

std::set<std::size_t> classic_path_lengths(const ClassicMultiway& g) {
  std::set<std::size_t> out;
  for (const auto& p : maximal_transition_paths(g)) out.insert(p.size());
  return out;
}

}  // namespace

TEST_CASE("labels print with their histories and order by base first") {
  CHECK(to_string(Label(3)) == "3");
  Label copied = hist(3, {{Label(2), Label(1)}});
  CHECK(to_string(copied) == "(3,(2,1))");
  CHECK(to_string(hist(1, {{Label(2), Label(1)}, {Label(4), copied}})) == "(1,(2,1),(4,(3,(2,1))))");
  CHECK(Label(3) < copied);
  CHECK(copied < Label(4));
  CHECK(descends_from(copied, Label(3)));
  CHECK_FALSE(descends_from(Label(3), copied));
  CHECK_FALSE(descends_from(copied, Label(2)));
}

TEST_CASE("annotate numbers occurrences per variable from left to right") {
  auto t = annotate("(\\x. x@1 x)@2 b");
  const auto* a = as_abs(as_app(t)->fun);
  REQUIRE(a);
  CHECK(a->count == 2);
  CHECK(var_labels(a->body, "x") == std::vector<VarLabel>{Label(1), Label(2)});
  CHECK(as_app(t)->label == Label(2));

  auto lone = annotate("a");
  CHECK(as_var(lone)->label == Label(1));
  CHECK(as_var(lone)->label.history.empty());

  auto walk = annotate("(\\x. (\\y. y@1 y)@2 (x@3 x))@4 m");
  CHECK(event_labels(walk) == std::set<EventLabel>{Label(1), Label(2), Label(3), Label(4)});
  const auto* outer = as_abs(as_app(walk)->fun);
  CHECK(outer->count == 2);
  CHECK(var_labels(outer->body, "x") == std::vector<VarLabel>{Label(1), Label(2)});
  CHECK(as_abs(as_app(outer->body)->fun)->count == 2);
  CHECK(well_formed(walk));

  CHECK_THROWS_AS(annotate("(\\x. x"), SyntaxError);
}

TEST_CASE("append_history extends every label in order") {
  auto once = append_history(var("x", Label(1)), Label(2), Label(1));
  CHECK(as_var(once)->label.history.size() == 1);
  auto twice = append_history(once, Label(5), Label(3));
  CHECK(as_var(twice)->label == hist(1, {{Label(2), Label(1)}, {Label(5), Label(3)}}));

  auto t = annotate("x@3 x");
  auto shifted = append_history(t, Label(2), Label(1));
  CHECK(print(shifted) == "x_(1,(2,1)) @(3,(2,1)) x_(2,(2,1))");
}

TEST_CASE("reduce_step_full applies one substitution at a time") {
  SUBCASE("discarding redex") {
    auto t = annotate("(\\x. a)@1 ((\\y. y)@2 b)");
    auto events = reduce_step_full(t);
    REQUIRE(events.size() == 2);
    CHECK(events[0].step() == FineStep{Label(1), std::nullopt});
    CHECK(print(events[0].target) == "a_1");
    CHECK(events[1].event_label == Label(2));
  }
  SUBCASE("duplicating redex") {
    auto t = annotate("(\\x. x@1 x)@2 ((\\y. y)@3 z)");
    auto events = reduce_step_full(t);
    REQUIRE(events.size() == 3);
    CHECK(events[0].step() == FineStep{Label(2), Label(1)});
    CHECK(events[1].step() == FineStep{Label(2), Label(2)});
    CHECK(events[2].step() == FineStep{Label(3), Label(1)});

    auto first = reduce_step_full(events[0].target);
    const auto& finish = event_at(first, FineStep{Label(2), Label(2)});
    CHECK(print(finish.target) ==
          "(\\y. y_(1,(2,1))) @(3,(2,1)) z_(1,(2,1)) @1 ((\\y. y_(1,(2,2))) @(3,(2,2)) z_(1,(2,2)))");
    CHECK(event_labels(finish.target) ==
          std::set<EventLabel>{Label(1), hist(3, {{Label(2), Label(1)}}), hist(3, {{Label(2), Label(2)}})});

    auto other = reduce_step_full(events[1].target);
    CHECK(alpha_key(event_at(other, FineStep{Label(2), Label(1)}).target) == alpha_key(finish.target));
  }
  SUBCASE("normal form") { CHECK(reduce_step_full(annotate("\\x. x@1 a")).empty()); }
  SUBCASE("binder renamed when the copy mentions it") {
    auto t = annotate("(\\x. x@1 x)@2 x");
    auto events = reduce_step_full(t);
    REQUIRE(events.size() == 2);
    const auto* kept = as_abs(as_app(events[0].target)->fun);
    REQUIRE(kept);
    CHECK(kept->binder != "x");
    CHECK(kept->count == 1);
    CHECK(var_labels(kept->body, kept->binder) == std::vector<VarLabel>{Label(2)});
    CHECK(well_formed(events[0].target));
  }
}

TEST_CASE("reduce_step_classic bundles every substitution of a redex") {
  SUBCASE("single occurrence matches the fine step") {
    auto t = annotate("(\\x. x@1 a)@2 (\\y. y)");
    auto classic = reduce_step_classic(t);
    auto fine = reduce_step_full(t);
    REQUIRE(classic.size() == 1);
    REQUIRE(fine.size() == 1);
    CHECK(alpha_key(classic[0].target) == alpha_key(fine[0].target));
    CHECK(classic[0].bundle == std::vector<FineStep>{fine[0].step()});
  }
  SUBCASE("duplication") {
    auto t = annotate("(\\x. x@1 x) ((\\y. y)@2 \\z. z)");
    auto classic = reduce_step_classic(t);
    REQUIRE(classic.size() == 2);
    CHECK(classic[0].label == Label(3));
    CHECK(classic[0].bundle == std::vector<FineStep>{{Label(3), Label(1)}, {Label(3), Label(2)}});
    CHECK(print(classic[0].target) ==
          "(\\y. y_(1,(3,1))) @(2,(3,1)) (\\z. z_(1,(3,1))) @1 ((\\y. y_(1,(3,2))) @(2,(3,2)) (\\z. z_(1,(3,2))))");
  }
  SUBCASE("discarding") {
    auto classic = reduce_step_classic(annotate("(\\x. a)@1 ((\\y. y)@2 b)"));
    REQUIRE(classic.size() == 2);
    CHECK(classic[0].bundle == std::vector<FineStep>{{Label(1), std::nullopt}});
    CHECK(print(classic[0].target) == "a_1");
  }
}

TEST_CASE("duplication gives classic paths of unequal length") {
  auto g = multiway_classic(annotate("(\\x. x@1 x) ((\\y. y)@2 \\z. z)"));
  CHECK(classic_path_lengths(g) == std::set<std::size_t>{3, 4});
  std::set<EventLabel> copies;
  for (const auto& tr : g.transitions)
    if (tr.edge.label.base == 2 && tr.edge.label.history.size() == 1) copies.insert(tr.edge.label);
  CHECK(copies == std::set<EventLabel>{hist(2, {{Label(3), Label(1)}}), hist(2, {{Label(3), Label(2)}})});
}

TEST_CASE("project_label undoes the copy made by the first event") {
  auto t = annotate("(\\x. x@1 x)@2 ((\\y. y)@3 z)");
  const auto& e1 = event_at(reduce_step_full(t), FineStep{Label(2), Label(1)});
  CHECK(project_label(e1, Label(1)) == Label(1));
  CHECK(project_label(e1, hist(3, {{Label(2), Label(1)}})) == Label(3));
  CHECK(project_label(e1, Label(3)) == Label(3));
  CHECK_THROWS_WITH_AS(project_label(e1, Label(9)), doctest::Contains("LabelNotFound"), Error);
  CHECK_THROWS_AS(project_label(e1, hist(3, {{Label(2), Label(2)}})), Error);
}

TEST_CASE("causal_2_full on the four placements of the second redex") {
  auto second = [](const std::string& text, const FineStep& s1, const FineStep& s2) {
    auto t = annotate(text);
    const auto& e1 = event_at(reduce_step_full(t), s1);
    const auto& e2 = event_at(reduce_step_full(e1.target), s2);
    return causal_2_full(e1, e2);
  };
  // Redex inside the body, untouched by the substitution.
  CHECK_FALSE(second("(\\x. ((\\y. y)@1 b)@3 (x@4 x))@2 c", {Label(2), Label(1)}, {Label(1), Label(1)}));
  // Redex inside a copy of the argument.
  CHECK_FALSE(second("(\\x. x@1 x)@2 ((\\y. y)@3 b)", {Label(2), Label(1)},
                     {hist(3, {{Label(2), Label(1)}}), hist(1, {{Label(2), Label(1)}})}));
  // The argument is substituted as the operand of an existing abstraction.
  CHECK_FALSE(second("(\\x. ((\\y. y)@1 x)@3 x)@2 b", {Label(2), Label(1)}, {Label(1), Label(1)}));
  // The argument is an abstraction substituted in operator position.
  CHECK(second("(\\x. (x@1 b)@3 x)@2 (\\y. y)", {Label(2), Label(1)}, {Label(1), hist(1, {{Label(2), Label(1)}})}));
  // Disjoint redexes.
  CHECK_FALSE(second("((\\x. x)@1 a)@3 ((\\y. y)@2 b)", {Label(1), Label(1)}, {Label(2), Label(1)}));

  auto t = annotate("((\\x. x)@1 a)@3 ((\\y. y)@2 b)");
  auto events = reduce_step_full(t);
  CHECK_THROWS_WITH_AS(causal_2_full(events[0], events[0]), doctest::Contains("NotSuccessive"), Error);
}

TEST_CASE("successive pairs fall into exactly one placement") {
  // Placement of the second redex relative to the first: in its context, the
  // same redex again, inside the argument, or inside the body with operator
  // an abstraction or the substituted variable.
  oracle::AnyTermGen gen(31);
  std::size_t pairs = 0, unplaced = 0, operator_var = 0;
  for (int round = 0; round < 120; ++round) {
    auto text = gen.text(4);
    FineMultiway g;
    try {
      g = multiway_full(annotate(text), 400);
    } catch (const Error&) {
      continue;
    }
    auto out = g.outgoing();
    for (const auto& t1 : g.transitions)
      for (std::size_t k : out[t1.to]) {
        const auto& t2 = g.transitions[k];
        FullEvent e1{g.states[t1.from], g.states[t1.to], t1.edge.l, t1.edge.m};
        FullEvent e2{g.states[t2.from], g.states[t2.to], t2.edge.l, t2.edge.m};
        ++pairs;
        EventLabel origin = project_label(e1, e2.event_label);
        bool causal = causal_2_full(e1, e2);
        // Locate the first redex and the origin of the second in e1.source.
        std::function<const App*(const TermPtr&, const EventLabel&)> find = [&](const TermPtr& s,
                                                                                const EventLabel& l) -> const App* {
          if (const auto* a = as_abs(s)) return find(a->body, l);
          if (const auto* p = as_app(s)) {
            if (p->label == l) return p;
            if (const auto* r = find(p->fun, l)) return r;
            return find(p->arg, l);
          }
          return nullptr;
        };
        const App* redex = find(e1.source, e1.event_label);
        const App* target = find(e1.source, origin);
        REQUIRE(redex);
        REQUIRE(target);
        const auto* binder = as_abs(redex->fun);
        bool in_arg = find(redex->arg, origin) != nullptr;
        bool in_body = find(binder->body, origin) != nullptr;
        if (origin == e1.event_label || in_arg) {
          CHECK_FALSE(causal);
        } else if (in_body) {
          const auto* v = as_var(target->fun);
          if (as_abs(target->fun)) {
            CHECK_FALSE(causal);
          } else if (v && v->name == binder->binder) {
            ++operator_var;
            CHECK(causal);
          } else {
            ++unplaced;
          }
        } else {
          CHECK(causal == (as_abs(target->fun) == nullptr));
        }
      }
  }
  CHECK(pairs > 200);
  CHECK(operator_var > 0);
  CHECK(unplaced == 0);
}

TEST_CASE("one-step joins fail for a duplicating redex but two-step joins succeed") {
  auto t = annotate("(\\x. x@1 x)@2 ((\\y. y)@3 b)");
  auto events = reduce_step_full(t);
  const auto& sub = event_at(events, FineStep{Label(2), Label(1)});
  const auto& inner = event_at(events, FineStep{Label(3), Label(1)});

  // Histories of the two copies differ, so compare with variable labels and
  // histories dropped.
  auto keys_after = [](const TermPtr& s) {
    std::set<std::string> out;
    for (const auto& e : reduce_step_full(s)) out.insert(lam::alpha_key(oracle::erase(e.target)));
    return out;
  };
  auto from_sub = keys_after(sub.target);
  auto from_inner = keys_after(inner.target);
  std::vector<std::string> common;
  std::set_intersection(from_sub.begin(), from_sub.end(), from_inner.begin(), from_inner.end(),
                        std::back_inserter(common));
  CHECK(common.empty());

  std::set<std::string> two_from_sub;
  for (const auto& e : reduce_step_full(sub.target))
    for (const auto& key : keys_after(e.target)) two_from_sub.insert(key);
  bool joined = std::any_of(from_inner.begin(), from_inner.end(),
                            [&](const std::string& k) { return two_from_sub.contains(k); });
  CHECK(joined);
}

TEST_CASE("causal_all_paths_full") {
  auto t = annotate("(\\x. x@1 a)@2 (\\y. y)");
  CHECK(causal_all_paths_full(t, Label(2), Label(1)) == Verdict::True);
  CHECK(causal_all_paths_full(t, Label(1), Label(2)) == Verdict::False);
  CHECK(causal_all_paths_full(t, Label(1), Label(1)) == Verdict::False);

  auto omega = annotate("(\\x. x@1 x)@2 (\\x. x@3 x)");
  CHECK(causal_all_paths_full(omega, Label(2), Label(1), 200) == Verdict::Unknown);

  // Copies of 2 descend from it, so 3 precedes both.
  auto dup = annotate("(\\x. x@1 x) ((\\y. y)@2 \\z. z)");
  CHECK(causal_all_paths_full(dup, Label(1), Label(3)) == Verdict::False);
}

TEST_CASE("induced_causal over classic paths") {
  SUBCASE("single substitutions reduce to fine causality") {
    auto t = annotate("(\\x. x@1 a)@2 (\\y. y)");
    auto s1 = reduce_step_classic(t);
    REQUIRE(s1.size() == 1);
    auto s2 = reduce_step_classic(s1[0].target);
    REQUIRE(s2.size() == 1);
    CHECK(induced_causal({s1[0], s2[0]}, 0, 1, 100) == Verdict::True);
  }
  SUBCASE("operator-position copy causes the later step") {
    auto t = annotate("(\\x. (x@1 b)@3 x)@2 (\\y. y)");
    auto s1 = reduce_step_classic(t);
    REQUIRE(s1[0].bundle.size() == 2);
    auto s2 = reduce_step_classic(s1[0].target);
    auto it = std::find_if(s2.begin(), s2.end(), [](const ClassicStep& s) { return s.label == Label(1); });
    REQUIRE(it != s2.end());
    CHECK(induced_causal({s1[0], *it}, 0, 1, 100) == Verdict::True);
    CHECK(induced_causal({s1[0], *it}, 0, 1, 1) == Verdict::Unknown);
  }
  SUBCASE("disjoint steps") {
    auto t = annotate("((\\x. x@4 x)@1 a)@3 ((\\y. y)@2 b)");
    auto s1 = reduce_step_classic(t);
    auto first = std::find_if(s1.begin(), s1.end(), [](const ClassicStep& s) { return s.label == Label(1); });
    REQUIRE(first != s1.end());
    auto s2 = reduce_step_classic(first->target);
    auto later = std::find_if(s2.begin(), s2.end(), [](const ClassicStep& s) { return s.label == Label(2); });
    REQUIRE(later != s2.end());
    CHECK(induced_causal({*first, *later}, 0, 1, 100) == Verdict::False);
  }
  SUBCASE("errors") {
    auto t = annotate("((\\x. x)@1 a)@3 ((\\y. y)@2 b)");
    auto s = reduce_step_classic(t);
    CHECK_THROWS_WITH_AS(induced_causal(s, 1, 1, 10), doctest::Contains("BadIndices"), Error);
    CHECK_THROWS_WITH_AS(induced_causal(s, 0, 5, 10), doctest::Contains("BadIndices"), Error);
    CHECK_THROWS_WITH_AS(induced_causal({s[0], s[0]}, 0, 1, 10), doctest::Contains("NotSuccessive"), Error);
  }
}

TEST_CASE("alpha renaming keeps variable labels") {
  auto a = annotate("\\x. x@1 x");
  auto b = annotate("\\y. y@1 y");
  CHECK(alpha_key(a) == alpha_key(b));
  auto c = append_history(b, Label(7), Label(1));
  CHECK(alpha_key(a) != alpha_key(c));
}

TEST_CASE("properties on random terms") {
  oracle::AnyTermGen gen(7);
  oracle::Tally within, orders, shape;
  std::size_t explored = 0;
  for (int round = 0; round < 150; ++round) {
    auto t = annotate(gen.text(4));
    FineMultiway g;
    try {
      g = multiway_full(t, 400);
      multiway_classic(t, 400);
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::StateCapExceeded);
      continue;
    }
    ++explored;
    within.merge(oracle::classic_within_fine(t, 400));
    orders.merge(oracle::substitution_orders(t, 400));
    shape.merge(oracle::fine_paths_well_formed(g));
  }
  CHECK(explored > 100);
  CHECK(orders.checked >= 10);
  CHECK_MESSAGE(within.violations == 0, (within.notes.empty() ? "" : within.notes[0]));
  CHECK_MESSAGE(orders.violations == 0, (orders.notes.empty() ? "" : orders.notes[0]));
  CHECK_MESSAGE(shape.violations == 0, (shape.notes.empty() ? "" : shape.notes[0]));
}

TEST_CASE("agreement with the good calculus") {
  oracle::TermGen gen(11);
  oracle::Tally all_paths, successive;
  for (int round = 0; round < 60; ++round) {
    auto t = gen.good_term(5);
    all_paths.merge(oracle::full_agrees_with_good(t));
    successive.merge(oracle::causal_2_agrees_with_good(t));
  }
  CHECK(all_paths.checked > 200);
  CHECK_MESSAGE(all_paths.violations == 0, (all_paths.notes.empty() ? "" : all_paths.notes[0]));
  CHECK_MESSAGE(successive.violations == 0, (successive.notes.empty() ? "" : successive.notes[0]));

  auto example = annotate("(\\x. x@1 a)@2 (\\y. y)");
  CHECK(causal_all_paths_full(example, Label(2), Label(1)) == Verdict::True);
}
