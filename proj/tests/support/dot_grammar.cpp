#include "support/dot_grammar.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

namespace oracle {

namespace {

enum class Tok { Id, Punct, Arrow, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t at;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) { throw std::runtime_error(msg + " at offset " + std::to_string(i)); };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '/' && i + 1 < s.size() && s[i + 1] == '/') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (c == '/' && i + 1 < s.size() && s[i + 1] == '*') {
      auto end = s.find("*/", i + 2);
      if (end == std::string::npos) fail("unterminated comment");
      i = end + 2;
    } else if (c == '"') {
      std::size_t start = i++;
      while (i < s.size() && s[i] != '"') i += s[i] == '\\' ? 2 : 1;
      if (i >= s.size()) fail("unterminated string");
      ++i;
      out.push_back({Tok::Id, s.substr(start, i - start), start});
    } else if (c == '<') {
      std::size_t start = i;
      int depth = 0;
      do {
        if (s[i] == '<') ++depth;
        if (s[i] == '>') --depth;
        ++i;
      } while (i < s.size() && depth > 0);
      if (depth > 0) fail("unterminated HTML string");
      out.push_back({Tok::Id, s.substr(start, i - start), start});
    } else if (c == '-' && i + 1 < s.size() && (s[i + 1] == '>' || s[i + 1] == '-')) {
      out.push_back({Tok::Arrow, s.substr(i, 2), i});
      i += 2;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || static_cast<unsigned char>(c) >= 0x80) {
      std::size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' ||
                              static_cast<unsigned char>(s[i]) >= 0x80))
        ++i;
      out.push_back({Tok::Id, s.substr(start, i - start), start});
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.') {
      std::size_t start = i;
      if (s[i] == '-') ++i;
      bool digits = false, dot = false;
      while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || (s[i] == '.' && !dot))) {
        if (s[i] == '.') dot = true;
        else digits = true;
        ++i;
      }
      if (!digits) fail("malformed numeral");
      out.push_back({Tok::Id, s.substr(start, i - start), start});
    } else if (std::string("{}[]=;,:").find(c) != std::string::npos) {
      out.push_back({Tok::Punct, std::string(1, c), i});
      ++i;
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

bool keyword(const Token& t, const char* word) {
  if (t.kind != Tok::Id || t.text.size() != std::string(word).size()) return false;
  for (std::size_t i = 0; i < t.text.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(t.text[i])) != word[i]) return false;
  return true;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  void graph() {
    if (keyword(peek(), "strict")) ++p_;
    if (keyword(peek(), "graph")) {
      directed_ = false;
    } else if (keyword(peek(), "digraph")) {
      directed_ = true;
    } else {
      fail("expected graph or digraph");
    }
    ++p_;
    if (peek().kind == Tok::Id && !is_keyword(peek())) ++p_;
    expect("{");
    stmt_list();
    expect("}");
    if (peek().kind != Tok::End) fail("trailing input");
  }

 private:
  const Token& peek(std::size_t k = 0) const { return t_[std::min(p_ + k, t_.size() - 1)]; }
  bool punct(const char* c) const { return peek().kind == Tok::Punct && peek().text == c; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error(msg + " at offset " + std::to_string(peek().at));
  }
  void expect(const char* c) {
    if (!punct(c)) fail(std::string("expected '") + c + "'");
    ++p_;
  }
  static bool is_keyword(const Token& t) {
    for (const char* k : {"node", "edge", "graph", "digraph", "subgraph", "strict"})
      if (keyword(t, k)) return true;
    return false;
  }
  void id() {
    if (peek().kind != Tok::Id || is_keyword(peek())) fail("expected an ID");
    ++p_;
  }

  void stmt_list() {
    while (!punct("}")) {
      if (peek().kind == Tok::End) fail("unexpected end of input");
      stmt();
      if (punct(";")) ++p_;
    }
  }

  void stmt() {
    if (keyword(peek(), "graph") || keyword(peek(), "node") || keyword(peek(), "edge")) {
      ++p_;
      attr_list(true);
      return;
    }
    if (peek().kind == Tok::Id && !is_keyword(peek()) && peek(1).kind == Tok::Punct && peek(1).text == "=") {
      p_ += 2;
      id();
      return;
    }
    operand();
    if (peek().kind == Tok::Arrow) {
      while (peek().kind == Tok::Arrow) {
        if ((peek().text == "->") != directed_) fail("edge operator does not match graph kind");
        ++p_;
        operand();
      }
    }
    attr_list(false);
  }

  void operand() {
    if (keyword(peek(), "subgraph") || punct("{")) {
      subgraph();
      return;
    }
    id();
    if (punct(":")) {
      ++p_;
      id();
      if (punct(":")) {
        ++p_;
        id();
      }
    }
  }

  void subgraph() {
    if (keyword(peek(), "subgraph")) {
      ++p_;
      if (peek().kind == Tok::Id && !is_keyword(peek())) ++p_;
    }
    expect("{");
    stmt_list();
    expect("}");
  }

  void attr_list(bool required) {
    if (!punct("[")) {
      if (required) fail("expected '['");
      return;
    }
    while (punct("[")) {
      ++p_;
      while (!punct("]")) {
        id();
        expect("=");
        id();
        if (punct(";") || punct(",")) ++p_;
      }
      ++p_;
    }
  }

  std::vector<Token> t_;
  std::size_t p_ = 0;
  bool directed_ = true;
};

}  // namespace

std::string dot_problem(const std::string& text) {
  try {
    Parser(lex(text)).graph();
    return "";
  } catch (const std::runtime_error& e) {
    return e.what();
  }
}

}  // namespace oracle
