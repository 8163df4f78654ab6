#include <cctype>

#include "cnlasp/asp_io.hpp"

namespace cnlasp {

namespace {

struct Tok {
  enum Kind { ident, var, number, punct, end } kind;
  std::string text;
  std::size_t line;
};

std::vector<Tok> lex(std::string_view s) {
  std::vector<Tok> out;
  std::size_t line = 1;
  std::size_t i = 0;
  auto is_word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < s.size()) {
    const char c = s[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '%') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::number, std::string(s.substr(i, j - i)), line});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && is_word(s[j])) ++j;
      const bool upper = std::isupper(static_cast<unsigned char>(c)) || c == '_';
      out.push_back({upper ? Tok::var : Tok::ident, std::string(s.substr(i, j - i)), line});
      i = j;
    } else if (c == ':' && i + 1 < s.size() && s[i + 1] == '-') {
      out.push_back({Tok::punct, ":-", line});
      i += 2;
    } else if (std::string_view("().,;:{}-").find(c) != std::string_view::npos) {
      out.push_back({Tok::punct, std::string(1, c), line});
      ++i;
    } else {
      throw AspSyntaxError(line, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::end, "", line});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Tok> toks) : toks_(std::move(toks)) {}

  AspProgram program() {
    AspProgram p;
    while (peek().kind != Tok::end) p.clauses.push_back(clause());
    return p;
  }

 private:
  const Tok& peek() const { return toks_[pos_]; }
  bool at(std::string_view p) const { return peek().kind == Tok::punct && peek().text == p; }
  bool accept(std::string_view p) {
    if (!at(p)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const {
    const Tok& t = peek();
    throw AspSyntaxError(t.line, "expected " + what + (t.kind == Tok::end ? " at end of input" : " before '" + t.text + "'"));
  }
  void expect(std::string_view p) {
    if (!accept(p)) fail("'" + std::string(p) + "'");
  }

  AspTerm term() {
    const Tok& t = peek();
    if (t.kind == Tok::var) {
      ++pos_;
      return {true, t.text};
    }
    if (t.kind == Tok::ident || t.kind == Tok::number) {
      ++pos_;
      return {false, t.text};
    }
    fail("a term");
  }

  AspAtom atom() {
    AspAtom a;
    a.strong_neg = accept("-");
    if (peek().kind != Tok::ident) fail("a predicate name");
    a.pred = toks_[pos_++].text;
    if (accept("(")) {
      do a.args.push_back(term());
      while (accept(","));
      expect(")");
    }
    return a;
  }

  std::optional<long> bound() {
    if (peek().kind != Tok::number) return std::nullopt;
    return std::stol(toks_[pos_++].text);
  }

  std::vector<BodyLit> body() {
    std::vector<BodyLit> out;
    do {
      BodyLit b;
      if (peek().kind == Tok::ident && peek().text == "not") {
        ++pos_;
        b.weak_neg = true;
      }
      b.atom = atom();
      out.push_back(std::move(b));
    } while (accept(","));
    return out;
  }

  AspClause clause() {
    AspClause c;
    if (accept(":-")) {
      c.kind = AspClause::Kind::constraint;
      c.body = body();
      expect(".");
      return c;
    }
    const std::size_t save = pos_;
    std::optional<long> lower = bound();
    if (at("{")) {
      ++pos_;
      CardHead h;
      h.lower = lower;
      h.lit = atom();
      if (accept(":")) {
        do h.conds.push_back(atom());
        while (accept(","));
      }
      expect("}");
      h.upper = bound();
      c.kind = AspClause::Kind::card_rule;
      c.card = std::move(h);
    } else {
      pos_ = save;
      do c.head.push_back(atom());
      while (accept(";"));
      c.kind = c.head.size() == 1 ? AspClause::Kind::fact : AspClause::Kind::rule;
    }
    if (accept(":-")) {
      c.body = body();
      if (c.kind == AspClause::Kind::fact) c.kind = AspClause::Kind::rule;
    }
    expect(".");
    if (c.kind == AspClause::Kind::rule && c.head.size() == 1 && c.head[0].pred == "answer" &&
        c.head[0].args.size() == 1 && c.head[0].args[0].variable && !c.head[0].strong_neg) {
      c.kind = AspClause::Kind::query;
    }
    return c;
  }

  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

AspProgram parse_asp(std::string_view text) { return Parser(lex(text)).program(); }

}  // namespace cnlasp
