#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "causality/error.hpp"
#include "causality/lambda.hpp"

namespace causality::lam {

TermPtr var(std::string name) { return std::make_shared<const Term>(Term{Var{std::move(name)}}); }
TermPtr abs(std::string binder, TermPtr body) {
  return std::make_shared<const Term>(Term{Abs{std::move(binder), std::move(body)}});
}
TermPtr app(TermPtr fun, TermPtr arg, Label label) {
  return std::make_shared<const Term>(Term{App{std::move(fun), std::move(arg), label}});
}

const Var* as_var(const TermPtr& t) { return std::get_if<Var>(&t->node); }
const Abs* as_abs(const TermPtr& t) { return std::get_if<Abs>(&t->node); }
const App* as_app(const TermPtr& t) { return std::get_if<App>(&t->node); }

namespace {

struct Syntax {
  enum Kind { Variable, Lambda, Apply } kind;
  std::size_t pos;
  std::string name;
  std::optional<Label> label;
  std::vector<Syntax> kids;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Syntax parse_all() {
    Syntax t = term();
    skip();
    if (i_ != s_.size()) throw SyntaxError(i_, "unexpected '" + std::string(1, s_[i_]) + "'");
    return t;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool at_lambda() const {
    return (i_ < s_.size() && s_[i_] == '\\') || s_.substr(i_, 2) == "\xCE\xBB";
  }
  bool at_ident() const { return i_ < s_.size() && s_[i_] >= 'a' && s_[i_] <= 'z'; }
  bool at_operand() {
    skip();
    return at_lambda() || at_ident() || (i_ < s_.size() && s_[i_] == '(');
  }

  std::string ident() {
    skip();
    if (!at_ident()) throw SyntaxError(i_, "expected a variable");
    std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    while (i_ < s_.size() && s_[i_] == '\'') ++i_;
    return std::string(s_.substr(start, i_ - start));
  }

  Syntax term() {
    skip();
    if (at_lambda()) return lambda();
    return application();
  }

  Syntax lambda() {
    std::size_t pos = i_;
    i_ += s_[i_] == '\\' ? 1 : 2;
    std::string x = ident();
    skip();
    if (i_ >= s_.size() || s_[i_] != '.') throw SyntaxError(i_, "expected '.' after binder");
    ++i_;
    Syntax body = term();
    return Syntax{Syntax::Lambda, pos, std::move(x), std::nullopt, {std::move(body)}};
  }

  Syntax operand() {
    skip();
    if (at_lambda()) return lambda();
    return atom();
  }

  Syntax atom() {
    skip();
    if (i_ < s_.size() && s_[i_] == '(') {
      ++i_;
      Syntax inner = term();
      skip();
      if (i_ >= s_.size() || s_[i_] != ')') throw SyntaxError(i_, "expected ')'");
      ++i_;
      return inner;
    }
    std::size_t pos = i_;
    if (!at_ident()) {
      if (i_ >= s_.size()) throw SyntaxError(i_, "unexpected end of input");
      throw SyntaxError(i_, "unexpected '" + std::string(1, s_[i_]) + "'");
    }
    return Syntax{Syntax::Variable, pos, ident(), std::nullopt, {}};
  }

  Label number() {
    skip();
    std::size_t start = i_;
    Label n = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      Label next = n * 10 + Label(s_[i_] - '0');
      if (next / 10 != n) throw SyntaxError(start, "label too large");
      n = next;
      ++i_;
    }
    if (i_ == start) throw SyntaxError(i_, "expected a label after '@'");
    return n;
  }

  Syntax application() {
    Syntax acc = atom();
    for (;;) {
      skip();
      std::optional<Label> label;
      std::size_t pos = i_;
      if (i_ < s_.size() && s_[i_] == '@') {
        ++i_;
        label = number();
        if (!at_operand()) throw SyntaxError(i_, "expected an argument after the label");
      } else if (!at_operand()) {
        return acc;
      }
      Syntax arg = operand();
      acc = Syntax{Syntax::Apply, pos, "", label, {std::move(acc), std::move(arg)}};
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

void collect_explicit(const Syntax& s, std::set<Label>& seen) {
  for (const auto& k : s.kids) collect_explicit(k, seen);
  if (s.label && !seen.insert(*s.label).second)
    throw Error(ErrorCode::DuplicateLabel, "label " + std::to_string(*s.label) + " used twice (offset " +
                                               std::to_string(s.pos) + ")");
}

TermPtr build(const Syntax& s, const std::set<Label>& taken, Label& next) {
  switch (s.kind) {
    case Syntax::Variable:
      return var(s.name);
    case Syntax::Lambda:
      return abs(s.name, build(s.kids[0], taken, next));
    case Syntax::Apply: {
      TermPtr f = build(s.kids[0], taken, next);
      TermPtr a = build(s.kids[1], taken, next);
      Label l;
      if (s.label) {
        l = *s.label;
      } else {
        while (taken.contains(next)) ++next;
        l = next++;
      }
      return app(std::move(f), std::move(a), l);
    }
  }
  return nullptr;
}

void print_to(std::ostringstream& os, const TermPtr& t) {
  if (const auto* v = as_var(t)) {
    os << v->name;
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
    os << " @" << p.label << ' ';
    if (wrap_arg) os << '(';
    print_to(os, p.arg);
    if (wrap_arg) os << ')';
  }
}

void key_to(std::ostringstream& os, const TermPtr& t, std::vector<std::string>& bound) {
  if (const auto* v = as_var(t)) {
    auto it = std::find(bound.rbegin(), bound.rend(), v->name);
    if (it == bound.rend())
      os << '$' << v->name << ';';
    else
      os << '#' << (it - bound.rbegin()) << ';';
  } else if (const auto* a = as_abs(t)) {
    os << "\\(";
    bound.push_back(a->binder);
    key_to(os, a->body, bound);
    bound.pop_back();
    os << ')';
  } else {
    const auto& p = std::get<App>(t->node);
    os << '[' << p.label << ' ';
    key_to(os, p.fun, bound);
    key_to(os, p.arg, bound);
    os << ']';
  }
}

void free_vars_to(const TermPtr& t, std::multiset<std::string>& out, std::vector<std::string>& bound) {
  if (const auto* v = as_var(t)) {
    if (std::find(bound.begin(), bound.end(), v->name) == bound.end()) out.insert(v->name);
  } else if (const auto* a = as_abs(t)) {
    bound.push_back(a->binder);
    free_vars_to(a->body, out, bound);
    bound.pop_back();
  } else {
    const auto& p = std::get<App>(t->node);
    free_vars_to(p.fun, out, bound);
    free_vars_to(p.arg, out, bound);
  }
}

std::multiset<std::string> free_multiset(const TermPtr& t) {
  std::multiset<std::string> out;
  std::vector<std::string> bound;
  free_vars_to(t, out, bound);
  return out;
}

void labels_to(const TermPtr& t, std::vector<Label>& out) {
  if (const auto* a = as_abs(t)) {
    labels_to(a->body, out);
  } else if (const auto* p = as_app(t)) {
    labels_to(p->fun, out);
    labels_to(p->arg, out);
    out.push_back(p->label);
  }
}

bool binders_linear(const TermPtr& t) {
  if (const auto* a = as_abs(t)) return free_occurrences(a->body, a->binder) <= 1 && binders_linear(a->body);
  if (const auto* p = as_app(t)) return binders_linear(p->fun) && binders_linear(p->arg);
  return true;
}

std::vector<std::pair<TermPtr, Label>> steps(const TermPtr& t) {
  std::vector<std::pair<TermPtr, Label>> out;
  if (const auto* a = as_abs(t)) {
    for (auto& [b, l] : steps(a->body)) out.emplace_back(abs(a->binder, std::move(b)), l);
  } else if (const auto* p = as_app(t)) {
    if (const auto* f = as_abs(p->fun)) out.emplace_back(substitute(f->body, f->binder, p->arg), p->label);
    for (auto& [f, l] : steps(p->fun)) out.emplace_back(app(std::move(f), p->arg, p->label), l);
    for (auto& [a, l] : steps(p->arg)) out.emplace_back(app(p->fun, std::move(a), p->label), l);
  }
  return out;
}

}  // namespace

TermPtr parse(std::string_view text) {
  Syntax s = Parser(text).parse_all();
  std::set<Label> taken;
  collect_explicit(s, taken);
  Label next = 1;
  return build(s, taken, next);
}

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

bool alpha_equal(const TermPtr& a, const TermPtr& b) { return alpha_key(a) == alpha_key(b); }

std::set<std::string> free_vars(const TermPtr& t) {
  auto m = free_multiset(t);
  return std::set<std::string>(m.begin(), m.end());
}

std::size_t free_occurrences(const TermPtr& t, const std::string& x) { return free_multiset(t).count(x); }

std::string fresh_name(const std::string& x, const std::set<std::string>& taken) {
  std::string name = x + '\'';
  while (taken.contains(name)) name += '\'';
  return name;
}

TermPtr substitute(const TermPtr& m, const std::string& x, const TermPtr& n) {
  if (const auto* v = as_var(m)) return v->name == x ? n : m;
  if (const auto* p = as_app(m)) return app(substitute(p->fun, x, n), substitute(p->arg, x, n), p->label);
  const auto& a = std::get<Abs>(m->node);
  if (a.binder == x) return m;
  auto body_free = free_vars(a.body);
  if (!body_free.contains(x)) return m;
  auto arg_free = free_vars(n);
  if (!arg_free.contains(a.binder)) return abs(a.binder, substitute(a.body, x, n));
  std::set<std::string> taken = arg_free;
  taken.insert(body_free.begin(), body_free.end());
  taken.insert(x);
  std::string y = fresh_name(a.binder, taken);
  return abs(y, substitute(substitute(a.body, a.binder, var(y)), x, n));
}

std::set<Label> label_set(const TermPtr& t) {
  std::vector<Label> all;
  labels_to(t, all);
  return std::set<Label>(all.begin(), all.end());
}

std::size_t length(const TermPtr& t) { return label_set(t).size(); }

bool is_good(const TermPtr& t) {
  std::vector<Label> all;
  labels_to(t, all);
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) return false;
  return binders_linear(t);
}

std::vector<Event> reduce_step(const TermPtr& t) {
  if (!is_good(t)) throw Error(ErrorCode::NotGood, print(t) + " is not a good term");
  std::vector<Event> out;
  for (auto& [target, label] : steps(t)) out.push_back(Event{t, std::move(target), label});
  return out;
}

}  // namespace causality::lam
