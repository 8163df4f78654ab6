#include "cnlasp/grammar.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>

namespace cnlasp {

namespace {

enum class Loc { top, body, head };

struct Cursor {
  std::shared_ptr<const std::vector<Item>> list;
  std::size_t pos = 0;

  bool at_end() const { return pos >= list->size(); }
  const Item& front() const { return (*list)[pos]; }
};

// Derivation state. Copied at every step so that alternatives can be tried
// without undo bookkeeping; sentences are short.
struct State {
  std::size_t pos = 0;                        // proc: next token
  std::vector<std::vector<Item>> groups{{}};  // proc: open lists, back() is current
  std::vector<std::vector<Item>> pending;     // proc: finished bodies; gen: heads to come
  std::vector<Cursor> cursors;                // gen: lists being consumed
  Tokens out;                                 // gen: emitted tokens
  AntecedentStore ante;
  BindingStore bind;
  VarId next_var = 0;
  std::size_t consumed = 0;  // gen: items taken so far, for diagnostics

  VarId fresh() { return next_var++; }
};

using K = std::function<bool(const State&)>;
using KLit = std::function<bool(const State&, const TypedLiteral&)>;
using KNum = std::function<bool(const State&, long)>;

constexpr std::array<const char*, 11> kNumberWords = {"zero", "one", "two",   "three", "four", "five",
                                                      "six",  "seven", "eight", "nine",  "ten"};
constexpr std::array<const char*, 6> kVariableNames = {"X", "Y", "Z", "U", "V", "W"};

std::string capitalize(std::string_view w) {
  std::string s(w);
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

bool same_word(const std::string& tok, std::string_view w, bool sentence_start) {
  return tok == w || (sentence_start && tok == capitalize(w));
}

class Collector {
 public:
  void add(const std::string& category, Tokens form) {
    for (Continuation& c : conts_) {
      if (c.category == category) {
        if (std::find(c.forms.begin(), c.forms.end(), form) == c.forms.end()) c.forms.push_back(std::move(form));
        return;
      }
    }
    conts_.push_back({category, {std::move(form)}});
  }
  std::vector<Continuation> take() { return std::move(conts_); }

 private:
  std::vector<Continuation> conts_;
};

class Derivation {
 public:
  Derivation(const Grammar& g, Mode mode, std::span<const std::string> tokens, Collector* collect)
      : g_(g), mode_(mode), toks_(tokens), collect_(collect) {}

  bool gen() const { return mode_ == Mode::gen; }

  std::size_t furthest = 0;
  std::size_t gen_best = 0;
  std::string gen_failed_item;
  std::set<std::string> missing;

  // ---------------------------------------------------------------------
  // Sentences.

  bool sentence(const State& s, const K& k) {
    return query(s, k) || constraint(s, k) || conditional(s, k) || universal(s, k) || fact(s, k) ||
           expletive(s, k);
  }

 private:
  // ---------------------------------------------------------------------
  // Terminals.

  void note(std::size_t pos) { furthest = std::max(furthest, pos); }

  void expect(const std::string& category, Tokens form) {
    if (collect_) collect_->add(category, std::move(form));
  }

  // Matches or emits a fixed token sequence. When the tokens run out inside
  // the sequence the remainder is recorded as a continuation.
  bool form(const State& s, const Tokens& f, const std::string& category, const K& k) {
    State t = s;
    if (gen()) {
      t.out.insert(t.out.end(), f.begin(), f.end());
      return k(t);
    }
    note(s.pos);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const std::size_t p = s.pos + i;
      if (p >= toks_.size()) {
        Tokens rest(f.begin() + static_cast<std::ptrdiff_t>(i), f.end());
        if (p == 0) rest[0] = capitalize(rest[0]);
        expect(category, std::move(rest));
        return false;
      }
      if (!same_word(toks_[p], f[i], p == 0)) return false;
    }
    t.pos += f.size();
    return k(t);
  }

  bool word(const State& s, std::string_view w, const K& k) {
    const bool punct = w == "." || w == "?" || w == ",";
    return form(s, Tokens{std::string(w)}, punct ? "punctuation" : "function", k);
  }

  // Function word looked up in the lexicon by its symbol.
  bool fword(const State& s, Category cat, const std::string& symbol, const K& k) {
    for (const LexEntry* e : g_.entries_by_length(cat)) {
      if (e->symbol != symbol) continue;
      if (form(s, e->wform, to_string(cat), k)) return true;
      if (gen()) return false;  // first entry is the canonical surface form
    }
    return false;
  }

  // ---------------------------------------------------------------------
  // Item preterminals. In proc mode they append to the current list, in gen
  // mode they remove from the front of it.

  bool put(const State& s, Item item, const K& k) {
    State t = s;
    t.groups.back().push_back(std::move(item));
    return k(t);
  }

  void gen_fail(const State& s) {
    if (s.consumed >= gen_best) {
      gen_best = s.consumed;
      const Cursor& c = s.cursors.back();
      gen_failed_item = c.at_end() ? "end of list" : to_string(c.front());
    }
  }

  // Gen: takes the front literal if it has the pattern's kind and polarity
  // (and symbol, when match_symbol) and its variables unify.
  bool take(const State& s, const TypedLiteral& pat, bool match_symbol, const KLit& k) {
    const Cursor& c = s.cursors.back();
    const TypedLiteral* l = c.at_end() ? nullptr : c.front().literal();
    if (!l || l->kind != pat.kind || l->polarity != pat.polarity || (match_symbol && l->symbol != pat.symbol) ||
        l->isa() != pat.isa()) {
      gen_fail(s);
      return false;
    }
    State t = s;
    if (!t.bind.unify(Term::Var(pat.a), Term::Var(l->a)) ||
        (pat.binary() && !t.bind.unify(Term::Var(pat.b), Term::Var(l->b)))) {
      gen_fail(s);
      return false;
    }
    ++t.cursors.back().pos;
    ++t.consumed;
    return k(t, *l);
  }

  // A literal without surface words of its own (the isa of "is a", repeated
  // relation literals in enumerations).
  bool silent(const State& s, const TypedLiteral& lit, const K& k) {
    if (gen()) return take(s, lit, true, [&](const State& t, const TypedLiteral&) { return k(t); });
    return put(s, lit, k);
  }

  // Content word: the lexicon maps between its word form and the literal.
  bool lex(const State& s, Category cat, Number num, const TypedLiteral& pat, const KLit& k) {
    if (gen()) {
      return take(s, pat, false, [&](const State& t, const TypedLiteral& l) {
        auto entries = g_.lexicon().find_by_symbol(cat, l.symbol, num);
        if (entries.empty()) {
          missing.insert(l.symbol);
          return false;
        }
        return form(t, entries.front()->wform, to_string(cat), [&](const State& u) { return k(u, l); });
      });
    }
    for (const LexEntry* e : g_.entries_by_length(cat)) {
      if (num != Number::na && e->num != num && e->num != Number::na) continue;
      TypedLiteral lit = pat;
      lit.symbol = e->symbol;
      auto next = [&](const State& t) { return put(t, lit, [&](const State& u) { return k(u, lit); }); };
      if (form(s, e->wform, to_string(cat), next)) return true;
    }
    return false;
  }

  bool noun(const State& s, VarId y, Number num, const KLit& k) {
    return lex(s, Category::noun, num, TypedLiteral::Class(y, ""), k);
  }

  bool integer_apposition(const State& s, VarId y, const K& k) {
    if (gen()) {
      return take(s, TypedLiteral::Integer(y, 0), false, [&](const State& t, const TypedLiteral& l) {
        return word(t, std::to_string(l.number), k);
      });
    }
    note(s.pos);
    if (s.pos >= toks_.size()) {
      for (int i = 1; i <= 9; ++i) expect("number", {std::to_string(i)});
      return false;
    }
    if (!is_number_token(toks_[s.pos])) return false;
    State t = s;
    const long n = std::stol(toks_[s.pos]);
    ++t.pos;
    return put(t, TypedLiteral::Integer(y, n), k);
  }

  bool variable_apposition(const State& s, VarId y, const K& k) {
    if (gen()) {
      return take(s, TypedLiteral::Variable(y, ""), false,
                  [&](const State& t, const TypedLiteral& l) { return word(t, l.symbol, k); });
    }
    note(s.pos);
    if (s.pos >= toks_.size()) {
      for (const char* v : kVariableNames) expect("variable", {v});
      return false;
    }
    if (s.pos == 0 || !is_variable_token(toks_[s.pos])) return false;
    State t = s;
    ++t.pos;
    return put(t, TypedLiteral::Variable(y, toks_[s.pos]), k);
  }

  // Cardinality numbers: number words or digits.
  bool card_number(const State& s, std::optional<long> gen_value, const KNum& k) {
    if (gen()) {
      const long n = *gen_value;
      const std::string w = n >= 0 && n < static_cast<long>(kNumberWords.size()) ? kNumberWords[n] : std::to_string(n);
      return word(s, w, [&](const State& t) { return k(t, n); });
    }
    note(s.pos);
    if (s.pos >= toks_.size()) {
      for (std::size_t i = 1; i < kNumberWords.size(); ++i) expect("number", {kNumberWords[i]});
      return false;
    }
    const std::string& tok = toks_[s.pos];
    std::optional<long> n;
    if (is_number_token(tok)) n = std::stol(tok);
    for (std::size_t i = 0; i < kNumberWords.size() && !n; ++i) {
      if (tok == kNumberWords[i]) n = static_cast<long>(i);
    }
    if (!n) return false;
    State t = s;
    ++t.pos;
    return k(t, *n);
  }

  // ---------------------------------------------------------------------
  // Structural preterminals for clause shapes.

  // Proc: '.' or '?' closes the sentence. Gen: the clause's full stop.
  bool full_stop(const State& s, std::string_view punct, const K& k) {
    return word(s, punct, [&](const State& t) {
      if (gen()) {
        if (t.cursors.size() != 1 || t.cursors.back().at_end() || !t.cursors.back().front().is_full_stop()) {
          gen_fail(t);
          return false;
        }
        State u = t;
        ++u.cursors.back().pos;
        ++u.consumed;
        return k(u);
      }
      if (t.pos != toks_.size() || t.groups.size() != 1) return false;
      return put(t, FullStop{}, k);
    });
  }

  // [Head] ':-' [Body]: opens the body list.
  bool enter_body(const State& s, bool empty_head, const K& k) {
    State t = s;
    if (gen()) {
      const Cursor& c = t.cursors.back();
      if (c.pos + 2 >= c.list->size()) return false;
      const Sublist* head = (*c.list)[c.pos].sublist();
      const bool arrow = std::holds_alternative<ArrowGen>((*c.list)[c.pos + 1]);
      const Sublist* body = (*c.list)[c.pos + 2].sublist();
      if (!head || !arrow || !body || head->items.empty() != empty_head) {
        gen_fail(t);
        return false;
      }
      t.pending.push_back(head->items);
      auto body_items = std::make_shared<const std::vector<Item>>(body->items);
      t.cursors.back().pos += 3;
      t.cursors.push_back(Cursor{std::move(body_items), 0});
    } else {
      t.groups.emplace_back();
    }
    t.ante.push(FrameKind::body);
    return k(t);
  }

  bool body_to_head(const State& s, const K& k) {
    State t = s;
    if (gen()) {
      if (!t.cursors.back().at_end()) {
        gen_fail(t);
        return false;
      }
      t.cursors.back() = Cursor{std::make_shared<const std::vector<Item>>(std::move(t.pending.back())), 0};
      t.pending.pop_back();
    } else {
      t.pending.push_back(std::move(t.groups.back()));
      t.groups.back().clear();
    }
    t.ante.push(FrameKind::head);
    return k(t);
  }

  bool exit_head(const State& s, const K& k) {
    State t = s;
    if (gen()) {
      if (!t.cursors.back().at_end()) {
        gen_fail(t);
        return false;
      }
      t.cursors.pop_back();
    } else {
      std::vector<Item> head = std::move(t.groups.back());
      t.groups.pop_back();
      std::vector<Item> body = std::move(t.pending.back());
      t.pending.pop_back();
      t.groups.back().push_back(Sublist{std::move(head)});
      t.groups.back().push_back(ArrowGen{});
      t.groups.back().push_back(Sublist{std::move(body)});
    }
    t.ante.pop();
    t.ante.pop();
    return k(t);
  }

  bool enter_query(const State& s, VarId x, const K& k) {
    State t = s;
    if (gen()) {
      const Cursor& c = t.cursors.back();
      if (c.pos + 1 >= c.list->size()) return false;
      const auto* mark = std::get_if<QueryMark>(&(*c.list)[c.pos]);
      const Sublist* body = (*c.list)[c.pos + 1].sublist();
      if (!mark || !body || !t.bind.unify(Term::Var(x), Term::Var(mark->answer))) {
        gen_fail(t);
        return false;
      }
      auto body_items = std::make_shared<const std::vector<Item>>(body->items);
      t.cursors.back().pos += 2;
      t.cursors.push_back(Cursor{std::move(body_items), 0});
    } else {
      t.groups.emplace_back();
    }
    t.ante.push(FrameKind::body);
    return k(t);
  }

  bool exit_query(const State& s, VarId x, const K& k) {
    State t = s;
    if (gen()) {
      if (!t.cursors.back().at_end()) {
        gen_fail(t);
        return false;
      }
      t.cursors.pop_back();
    } else {
      std::vector<Item> body = std::move(t.groups.back());
      t.groups.pop_back();
      t.groups.back().push_back(QueryMark{x});
      t.groups.back().push_back(Sublist{std::move(body)});
    }
    t.ante.pop();
    return k(t);
  }

  // ---------------------------------------------------------------------
  // Noun phrases and anaphora.

  std::size_t mark(const State& s) const { return gen() ? s.cursors.back().pos : s.groups.back().size(); }

  std::vector<TypedLiteral> group_since(const State& s, std::size_t from) const {
    std::vector<TypedLiteral> out;
    if (gen()) {
      const Cursor& c = s.cursors.back();
      for (std::size_t i = from; i < c.pos; ++i) {
        if (const TypedLiteral* l = (*c.list)[i].literal()) out.push_back(*l);
      }
    } else {
      for (std::size_t i = from; i < s.groups.back().size(); ++i) {
        if (const TypedLiteral* l = s.groups.back()[i].literal()) out.push_back(*l);
      }
    }
    for (TypedLiteral& l : out) apply_bindings(l, s.bind);
    return out;
  }

  // Indefinite noun phrase or first mention: a new antecedent.
  bool introduce(const State& s, std::size_t from, const K& k) {
    State t = s;
    auto group = group_since(t, from);
    if (group.empty()) return false;
    if (gen() && t.ante.accessible(group.front().a)) return false;
    t.ante.add(Referent{group.front().a, std::move(group)});
    return k(t);
  }

  bool resolve_def(const State& s, std::size_t from, const K& k) {
    State t = s;
    if (!gen()) {
      Resolution r = resolve_definite(t.groups.back(), from, std::move(t.ante), t.bind);
      t.groups.back() = std::move(r.cl);
      t.ante = std::move(r.ante);
      return k(t);
    }
    auto group = group_since(t, from);
    if (group.empty()) return false;
    const VarId v = group.front().a;
    // The definite form must read back as the same entity: either it picks
    // up v itself, or v is new and nothing accessible would capture it.
    if (may_generate_definite(group, t.ante)) return k(t);
    if (t.ante.accessible(v) || t.ante.closest(Description::of(group))) return false;
    t.ante.add(Referent{v, std::move(group)});
    return k(t);
  }

  bool np_pname(const State& s, VarId y, const K& k) {
    const std::size_t from = mark(s);
    return lex(s, Category::pname, Number::na, TypedLiteral::Named(y, ""), [&](const State& t, const TypedLiteral&) {
      State u = t;
      if (gen()) {
        auto group = group_since(u, from);
        if (!u.ante.accessible(group.front().a)) u.ante.add_proper_name(Referent{group.front().a, group});
        return k(u);
      }
      Resolution r = resolve_proper_name(u.groups.back(), from, std::move(u.ante), u.bind);
      u.groups.back() = std::move(r.cl);
      u.ante = std::move(r.ante);
      return k(u);
    });
  }

  // "the N [int | var]"
  bool np_def(const State& s, VarId y, Number num, bool require_integer, const K& k) {
    const std::size_t from = mark(s);
    return fword(s, Category::det, "def", [&](const State& t) {
      return noun(t, y, num, [&](const State& u, const TypedLiteral&) {
        auto done = [&](const State& v) { return resolve_def(v, from, k); };
        if (integer_apposition(u, y, done)) return true;
        if (require_integer) return false;
        return variable_apposition(u, y, done) || done(u);
      });
    });
  }

  // "a N [var | int] [who VP]"
  bool np_indef(const State& s, VarId y, bool relative, bool allow_integer, const K& k) {
    const std::size_t from = mark(s);
    return fword(s, Category::det, "indef", [&](const State& t) {
      return noun(t, y, Number::sg, [&](const State& u, const TypedLiteral&) {
        auto done = [&](const State& v) {
          return introduce(v, from, [&](const State& w) {
            if (relative && word(w, "who", [&](const State& x) { return vp_coord(x, y, Loc::body, k); })) return true;
            return k(w);
          });
        };
        return variable_apposition(u, y, done) || (allow_integer && integer_apposition(u, y, done)) || done(u);
      });
    });
  }

  bool np_object(const State& s, VarId y, const K& k) {
    return np_pname(s, y, k) || np_def(s, y, Number::sg, true, k) || np_indef(s, y, false, false, k) ||
           np_def(s, y, Number::sg, false, k);
  }

  bool np_subject_body(const State& s, VarId y, const K& k) {
    return np_pname(s, y, k) || np_def(s, y, Number::sg, true, k) || np_indef(s, y, true, false, k) ||
           np_def(s, y, Number::sg, false, k);
  }

  bool np_subject_fact(const State& s, VarId y, const K& k) {
    return np_pname(s, y, k) || np_def(s, y, Number::sg, false, k);
  }

  // ---------------------------------------------------------------------
  // Verb phrases.

  static std::vector<Polarity> negations(Loc loc) {
    if (loc == Loc::body) return {Polarity::strong_neg, Polarity::weak_neg};
    return {Polarity::strong_neg};
  }

  // "not" or "not provably"
  bool negation(const State& s, Polarity p, const K& k) {
    return fword(s, Category::neg_marker, "not", [&](const State& t) {
      if (p == Polarity::strong_neg) return k(t);
      return word(t, "provably", k);
    });
  }

  bool vp_coord(const State& s, VarId x, Loc loc, const K& k) {
    return vp(s, x, loc, [&](const State& t) {
      return word(t, "and", [&](const State& u) { return vp_coord(u, x, loc, k); }) || k(t);
    });
  }

  bool vp_disjunction(const State& s, VarId x, const K& k) {
    return vp(s, x, Loc::head, [&](const State& t) {
      return word(t, "or", [&](const State& u) { return vp_disjunction(u, x, k); }) || k(t);
    });
  }

  bool vp(const State& s, VarId x, Loc loc, const K& k) {
    return vp_enumeration(s, x, k) || vp_isa(s, x, k) || vp_copula(s, x, loc, k) || vp_verb(s, x, loc, k);
  }

  // "is a N"
  bool vp_isa(const State& s, VarId x, const K& k) {
    return word(s, "is", [&](const State& t) {
      State u = t;
      const VarId y = u.fresh();
      return silent(u, TypedLiteral::Pred2(x, y, kIsa), [&](const State& v) {
        return fword(v, Category::det, "indef", [&](const State& w) {
          return noun(w, y, Number::sg, [&](const State& z, const TypedLiteral&) { return k(z); });
        });
      });
    });
  }

  // "is [not [provably]] ADJ" and "is [not [provably]] RADJ NP"
  bool vp_copula(const State& s, VarId x, Loc loc, const K& k) {
    return word(s, "is", [&](const State& t) {
      auto complement = [&](const State& u, Polarity p) {
        if (lex(u, Category::adj, Number::na, TypedLiteral::Prop1(x, "", p),
                [&](const State& v, const TypedLiteral&) { return k(v); })) {
          return true;
        }
        State v = u;
        const VarId y = v.fresh();
        return lex(v, Category::radj, Number::na, TypedLiteral::Prop2(x, y, "", p),
                   [&](const State& w, const TypedLiteral&) { return np_object(w, y, k); });
      };
      if (complement(t, Polarity::plain)) return true;
      for (Polarity p : negations(loc)) {
        if (negation(t, p, [&](const State& u) { return complement(u, p); })) return true;
      }
      return false;
    });
  }

  // "V", "V NP", "does not [provably] V [NP]"
  bool vp_verb(const State& s, VarId x, Loc loc, const K& k) {
    auto verb = [&](const State& u, Number num, Polarity p) {
      if (lex(u, Category::iverb, num, TypedLiteral::Pred1(x, "", p),
              [&](const State& v, const TypedLiteral&) { return k(v); })) {
        return true;
      }
      State v = u;
      const VarId y = v.fresh();
      return lex(v, Category::tverb, num, TypedLiteral::Pred2(x, y, "", p),
                 [&](const State& w, const TypedLiteral&) { return np_object(w, y, k); });
    };
    if (verb(s, Number::sg, Polarity::plain)) return true;
    return word(s, "does", [&](const State& t) {
      for (Polarity p : negations(loc)) {
        if (negation(t, p, [&](const State& u) { return verb(u, Number::pl, p); })) return true;
      }
      return false;
    });
  }

  // The relation part of "is RADJ" / "TVERB" with a fresh object variable.
  bool relation(const State& s, VarId x, const std::function<bool(const State&, VarId, const TypedLiteral&)>& k) {
    State t = s;
    const VarId y = t.fresh();
    auto next = [&](const State& u, const TypedLiteral& l) { return k(u, y, l); };
    if (word(t, "is", [&](const State& u) {
          return lex(u, Category::radj, Number::na, TypedLiteral::Prop2(x, y, ""), next);
        })) {
      return true;
    }
    return lex(t, Category::tverb, Number::sg, TypedLiteral::Pred2(x, y, ""), next);
  }

  // Object enumeration: "is connected to the nodes 2, 3 and 4",
  // "is enrolled in COMP329, COMP330 and COMP332". Each object repeats the
  // relation literal.
  bool vp_enumeration(const State& s, VarId x, const K& k) {
    return relation(s, x, [&](const State& t, VarId y1, const TypedLiteral& rel) {
      TypedLiteral pattern = rel;
      pattern.a = x;
      // Proper names.
      auto pname_item = [&](const State& u, const K& kk) {
        State v = u;
        TypedLiteral r = pattern;
        r.b = v.fresh();
        return silent(v, r, [&](const State& w) { return np_pname(w, r.b, kk); });
      };
      if (np_pname(t, y1, [&](const State& u) { return enumeration_rest(u, pname_item, k); })) return true;
      // "the Ns 1, 2 and 3"
      const std::size_t from = mark(t);
      return fword(t, Category::det, "def", [&](const State& u) {
        return noun(u, y1, Number::pl, [&](const State& v, const TypedLiteral& cls) {
          const std::string noun_symbol = cls.symbol;
          auto int_item = [&](const State& w, const K& kk) {
            State a = w;
            TypedLiteral r = pattern;
            r.b = a.fresh();
            return silent(a, r, [&](const State& b) {
              const std::size_t item_from = mark(b);
              return silent(b, TypedLiteral::Class(r.b, noun_symbol), [&](const State& c) {
                return integer_apposition(c, r.b, [&](const State& d) { return resolve_def(d, item_from, kk); });
              });
            });
          };
          return integer_apposition(v, y1, [&](const State& w) {
            return resolve_def(w, from, [&](const State& a) { return enumeration_rest(a, int_item, k); });
          });
        });
      });
    });
  }

  // At least one more item: ", ITEM REST" or "and ITEM".
  bool enumeration_rest(const State& s, const std::function<bool(const State&, const K&)>& item, const K& k) {
    auto more = [&](const State& t) {
      return item(t, [&](const State& u) { return enumeration_rest(u, item, k); });
    };
    if (word(s, ",", more)) return true;
    return word(s, "and", [&](const State& t) { return item(t, k); });
  }

  // "is assigned to exactly one colour": a cardinality head.
  bool vp_cardinality(const State& s, VarId x, const K& k) {
    State t = s;
    const CardSpec* spec = nullptr;
    if (gen()) {
      const Cursor& c = t.cursors.back();
      spec = c.at_end() ? nullptr : std::get_if<CardSpec>(&c.front());
      if (!spec) {
        gen_fail(t);
        return false;
      }
      std::vector<Item> parts(spec->lit.begin(), spec->lit.end());
      parts.insert(parts.end(), spec->conds.begin(), spec->conds.end());
      ++t.cursors.back().pos;
      ++t.consumed;
      t.cursors.push_back(Cursor{std::make_shared<const std::vector<Item>>(std::move(parts)), 0});
    } else {
      t.groups.emplace_back();
    }
    auto close = [&](const State& u, std::optional<long> lower, std::optional<long> upper) {
      State v = u;
      if (gen()) {
        if (!v.cursors.back().at_end()) return false;
        v.cursors.pop_back();
        return k(v);
      }
      std::vector<Item> parts = std::move(v.groups.back());
      v.groups.pop_back();
      CardSpec card{lower, upper, {}, {}};
      for (std::size_t i = 0; i < parts.size(); ++i) {
        (i == 0 ? card.lit : card.conds).push_back(*parts[i].literal());
      }
      return put(v, std::move(card), k);
    };
    return relation(t, x, [&](const State& u, VarId y, const TypedLiteral&) {
      auto quantity = [&](const State& v, std::optional<long> lower, std::optional<long> upper, long shown) {
        return card_number(v, shown, [&](const State& w, long n) {
          const std::optional<long> lo = lower ? std::optional<long>(n) : std::nullopt;
          const std::optional<long> hi = upper ? std::optional<long>(n) : std::nullopt;
          return noun(w, y, n == 1 ? Number::sg : Number::pl,
                      [&](const State& z, const TypedLiteral&) { return close(z, lo, hi); });
        });
      };
      // In gen mode the bounds select the quantifier.
      const bool exactly = !spec || (spec->lower && spec->upper && *spec->lower == *spec->upper);
      const bool at_least = !spec || (spec->lower && !spec->upper);
      const bool at_most = !spec || (!spec->lower && spec->upper);
      const long shown = spec ? (spec->lower ? *spec->lower : spec->upper.value_or(0)) : 0;
      if (exactly && fword(u, Category::cqnt, "exactly", [&](const State& v) { return quantity(v, 1, 1, shown); })) {
        return true;
      }
      if (at_least &&
          fword(u, Category::cqnt, "at_least", [&](const State& v) { return quantity(v, 1, std::nullopt, shown); })) {
        return true;
      }
      return at_most &&
             fword(u, Category::cqnt, "at_most", [&](const State& v) { return quantity(v, std::nullopt, 1, shown); });
    });
  }

  bool head_vp(const State& s, VarId x, const K& k) { return vp_cardinality(s, x, k) || vp_disjunction(s, x, k); }

  // ---------------------------------------------------------------------
  // Sentence rules.

  // Tom is a student and works.
  bool fact(const State& s, const K& k) {
    State t = s;
    const VarId x = t.fresh();
    return np_subject_fact(t, x, [&](const State& u) {
      return vp_coord(u, x, Loc::top, [&](const State& v) { return full_stop(v, ".", k); });
    });
  }

  // There is a N.
  bool there_is(const State& s, const K& k) {
    return word(s, "there", [&](const State& t) {
      return word(t, "is", [&](const State& u) {
        State v = u;
        const VarId y = v.fresh();
        return np_indef(v, y, false, true, k);
      });
    });
  }

  bool expletive(const State& s, const K& k) {
    return there_is(s, [&](const State& t) { return full_stop(t, ".", k); });
  }

  bool body_sentence(const State& s, const K& k) {
    State t = s;
    const VarId x = t.fresh();
    if (np_subject_body(t, x, [&](const State& u) { return vp_coord(u, x, Loc::body, k); })) return true;
    return there_is(s, k);
  }

  bool body_sentences(const State& s, const K& k) {
    return body_sentence(s, [&](const State& t) {
      return word(t, "and", [&](const State& u) { return body_sentences(u, k); }) || k(t);
    });
  }

  // Every N [X] [who VP] VP.
  bool universal(const State& s, const K& k) {
    return fword(s, Category::det, "every", [&](const State& t) {
      return enter_body(t, false, [&](const State& u) {
        State v = u;
        const VarId x = v.fresh();
        const std::size_t from = mark(v);
        auto to_head = [&](const State& w) {
          return body_to_head(w, [&](const State& a) {
            return head_vp(a, x, [&](const State& b) {
              return exit_head(b, [&](const State& c) { return full_stop(c, ".", k); });
            });
          });
        };
        return noun(v, x, Number::sg, [&](const State& w, const TypedLiteral&) {
          auto described = [&](const State& a) {
            return introduce(a, from, [&](const State& b) {
              if (word(b, "who", [&](const State& c) { return vp_coord(c, x, Loc::body, to_head); })) return true;
              return to_head(b);
            });
          };
          return variable_apposition(w, x, described) || described(w);
        });
      });
    });
  }

  // If S [and S]* then NP VP.
  bool conditional(const State& s, const K& k) {
    return fword(s, Category::cond_marker, "if", [&](const State& t) {
      return enter_body(t, false, [&](const State& u) {
        return body_sentences(u, [&](const State& v) {
          return body_to_head(v, [&](const State& w) {
            return fword(w, Category::then_marker, "then", [&](const State& a) {
              State b = a;
              const VarId x = b.fresh();
              auto rest = [&](const State& c) {
                return head_vp(c, x, [&](const State& d) {
                  return exit_head(d, [&](const State& e) { return full_stop(e, ".", k); });
                });
              };
              return np_pname(b, x, rest) || np_def(b, x, Number::sg, false, rest);
            });
          });
        });
      });
    });
  }

  // It is not the case that S [and S]*.
  bool constraint(const State& s, const K& k) {
    static const Tokens kLead = {"it", "is", "not", "the", "case", "that"};
    return form(s, kLead, "function", [&](const State& t) {
      return enter_body(t, true, [&](const State& u) {
        return body_sentences(u, [&](const State& v) {
          return body_to_head(v, [&](const State& w) {
            return exit_head(w, [&](const State& a) { return full_stop(a, ".", k); });
          });
        });
      });
    });
  }

  // Who VP?
  bool query(const State& s, const K& k) {
    auto body = [&](const State& t) {
      State u = t;
      const VarId x = u.fresh();
      return enter_query(u, x, [&](const State& v) {
        return vp_coord(v, x, Loc::body, [&](const State& w) {
          return exit_query(w, x, [&](const State& a) { return full_stop(a, "?", k); });
        });
      });
    };
    return word(s, "who", body) || word(s, "what", body);
  }

  const Grammar& g_;
  Mode mode_;
  std::span<const std::string> toks_;
  Collector* collect_;
};

VarId max_var(const std::vector<Item>& items) {
  VarId m = 0;
  auto lit = [&](const TypedLiteral& l) { m = std::max({m, l.a, l.binary() ? l.b : 0}); };
  for (const Item& item : items) {
    if (const TypedLiteral* l = item.literal()) lit(*l);
    else if (const Sublist* s = item.sublist()) m = std::max(m, max_var(s->items));
    else if (const auto* q = std::get_if<QueryMark>(&item)) m = std::max(m, q->answer);
    else if (const auto* c = std::get_if<CardSpec>(&item)) {
      for (const auto& l : c->lit) lit(l);
      for (const auto& l : c->conds) lit(l);
    }
  }
  return m;
}

// Vowel letter, but not a vowel sound as in "university" or "one".
bool takes_an(const std::string& word) {
  if (word.empty() || std::string("aeiouAEIOU").find(word[0]) == std::string::npos) return false;
  std::string w = word;
  for (char& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (const char* p : {"uni", "use", "usu", "eu", "one"}) {
    if (w.rfind(p, 0) == 0) return false;
  }
  return true;
}

// Post-editing of generated tokens: sentence-initial capital and a/an.
void finish_tokens(Tokens& toks, const Lexicon& lex) {
  const bool has_an = !lex.find_by_symbol(Category::det, "indef", Number::sg).empty() &&
                      std::any_of(lex.entries().begin(), lex.entries().end(), [](const LexEntry& e) {
                        return e.category == Category::det && e.wform == Tokens{"an"};
                      });
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    if (has_an && toks[i] == "a" && takes_an(toks[i + 1])) {
      toks[i] = "an";
    }
  }
  if (!toks.empty()) toks[0] = capitalize(toks[0]);
}

}  // namespace

Grammar::Grammar(const Lexicon& lex) : lex_(lex) {
  for (const LexEntry& e : lex_.entries()) by_category_[e.category].push_back(&e);
  for (auto& [cat, entries] : by_category_) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const LexEntry* a, const LexEntry* b) { return a->wform.size() > b->wform.size(); });
  }
}

const std::vector<const LexEntry*>& Grammar::entries_by_length(Category c) const {
  static const std::vector<const LexEntry*> kNone;
  auto it = by_category_.find(c);
  return it == by_category_.end() ? kNone : it->second;
}

InternalForm Grammar::parse_sentence(const Tokens& tokens, const InternalForm& cl_in, DerivationContext& ctx) const {
  Derivation d(*this, Mode::proc, tokens, nullptr);
  State start;
  start.ante = ctx.ante;
  start.next_var = ctx.next_var;
  std::optional<State> result;
  d.sentence(start, [&](const State& s) {
    result = s;
    return true;
  });
  if (!result) {
    const std::size_t pos = std::min(d.furthest, tokens.size());
    Tokens prefix(tokens.begin(), tokens.begin() + static_cast<std::ptrdiff_t>(pos));
    auto expected = lookahead(prefix, ctx);
    std::string msg = "cannot parse at token " + std::to_string(pos);
    if (pos < tokens.size()) msg += " ('" + tokens[pos] + "')";
    if (!expected.empty()) {
      msg += "; expected";
      for (const Continuation& c : expected) msg += " " + c.category;
    }
    throw ParseError(0, pos, std::move(expected), msg);
  }
  std::vector<Item> items = std::move(result->groups.front());
  apply_bindings(items, result->bind);
  ctx.ante = std::move(result->ante);
  ctx.next_var = result->next_var;

  InternalForm out;
  out.order = Order::proc;
  out.items = mirror_items(items, Order::proc);
  out.items.insert(out.items.end(), cl_in.items.begin(), cl_in.items.end());
  return out;
}

InternalForm Grammar::parse_specification(const std::vector<Tokens>& sentences) const {
  DerivationContext ctx;
  InternalForm form{{}, Order::proc};
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    try {
      form = parse_sentence(sentences[i], form, ctx);
    } catch (const ParseError& e) {
      throw ParseError(i, e.position, e.expected, "sentence " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return form;
}

DerivationContext Grammar::context_after(const std::vector<Tokens>& sentences) const {
  DerivationContext ctx;
  InternalForm form{{}, Order::proc};
  for (const Tokens& s : sentences) form = parse_sentence(s, form, ctx);
  return ctx;
}

Grammar::Generated Grammar::generate_sentence(const std::vector<Item>& cl_in, DerivationContext& ctx,
                                              std::size_t clause_index) const {
  if (cl_in.empty()) return {{}, cl_in};
  Derivation d(*this, Mode::gen, {}, nullptr);
  State start;
  start.groups.clear();
  start.cursors.push_back(Cursor{std::make_shared<const std::vector<Item>>(cl_in), 0});
  start.ante = ctx.ante;
  start.next_var = std::max(ctx.next_var, max_var(cl_in) + 1);
  std::optional<State> result;
  d.sentence(start, [&](const State& s) {
    result = s;
    return true;
  });
  if (!result) {
    if (!d.missing.empty()) {
      throw Error("MissingSurfaceForm", "no word form for symbol '" + *d.missing.begin() + "' (clause " +
                                            std::to_string(clause_index + 1) + ")");
    }
    throw GenerationError(clause_index, d.gen_failed_item,
                          "clause " + std::to_string(clause_index + 1) + ": no rule verbalises " + d.gen_failed_item);
  }
  Generated g;
  g.tokens = std::move(result->out);
  finish_tokens(g.tokens, lex_);
  const Cursor& c = result->cursors.front();
  g.rest.assign(c.list->begin() + static_cast<std::ptrdiff_t>(c.pos), c.list->end());
  ctx.ante = std::move(result->ante);
  ctx.next_var = result->next_var;
  return g;
}

std::vector<Tokens> Grammar::generate(const InternalForm& form) const {
  const InternalForm gen_form = form.order == Order::gen ? form : mirror(form);
  std::vector<Tokens> out;
  DerivationContext ctx;
  std::vector<Item> rest = gen_form.items;
  while (!rest.empty()) {
    Generated g = generate_sentence(rest, ctx, out.size());
    out.push_back(std::move(g.tokens));
    rest = std::move(g.rest);
  }
  return out;
}

std::vector<Continuation> Grammar::lookahead(const Tokens& prefix, const DerivationContext& ctx) const {
  Collector collect;
  Derivation d(*this, Mode::proc, prefix, &collect);
  State start;
  start.ante = ctx.ante;
  start.next_var = ctx.next_var;
  d.sentence(start, [](const State&) { return false; });
  return collect.take();
}

}  // namespace cnlasp
