#include <algorithm>
#include <map>
#include <set>

#include "cnlasp/asp_io.hpp"
#include "cnlasp/tokenizer.hpp"

namespace cnlasp {

namespace {

bool is_integer(const AspTerm& t) { return !t.variable && is_number_token(t.text); }

class Reader {
 public:
  Reader(const AspProgram& p, const Lexicon& lex) : prog_(p), lex_(lex) { survey(); }

  InternalForm run() {
    InternalForm out{{}, Order::gen};
    for (std::size_t i = 0; i < prog_.clauses.size(); ++i) {
      if (absorbed_.count(i)) continue;
      const AspClause& c = prog_.clauses[i];
      vars_.clear();
      std::vector<Item> seg;
      if (c.kind == AspClause::Kind::fact) seg = fact(c);
      else if (c.kind == AspClause::Kind::query) seg = query(c);
      else seg = rule(c);
      out.items.insert(out.items.end(), seg.begin(), seg.end());
    }
    return out;
  }

 private:
  // Literal kind of a predicate symbol used with the given arity.
  LitKind kind_of(const AspAtom& a) const {
    for (const LexEntry& e : lex_.entries()) {
      if (e.symbol != a.pred || !e.kind || e.category == Category::pname) continue;
      const LitKind k = *e.kind;
      const std::size_t arity = (k == LitKind::pred2 || k == LitKind::prop2) ? 2 : 1;
      if (arity == a.args.size()) return k;
    }
    throw Error("UnknownSymbol", "predicate " + a.pred + "/" + std::to_string(a.args.size()) + " is not in the lexicon");
  }

  bool is_class(const AspAtom& a) const { return kind_of(a) == LitKind::cls; }

  // Integer constants get their noun from a class fact. Such a fact is
  // absorbed into the descriptor of the integer when another fact mentions
  // the integer and will therefore produce it again.
  void survey() {
    std::map<std::string, std::size_t> fact_mentions;
    for (const AspClause& c : prog_.clauses) {
      if (c.kind != AspClause::Kind::fact) continue;
      for (const AspTerm& t : c.head[0].args) {
        if (is_integer(t)) ++fact_mentions[t.text];
      }
    }
    for (std::size_t i = 0; i < prog_.clauses.size(); ++i) {
      const AspClause& c = prog_.clauses[i];
      if (c.kind != AspClause::Kind::fact) continue;
      const AspAtom& a = c.head[0];
      if (a.args.size() != 1 || !is_integer(a.args[0]) || a.strong_neg || !is_class(a)) continue;
      auto [it, fresh] = int_noun_.emplace(a.args[0].text, a.pred);
      if (fresh && fact_mentions[a.args[0].text] > 1) absorbed_.insert(i);
    }
  }

  VarId var(const AspTerm& t) {
    if (t.variable) {
      auto [it, fresh] = vars_.emplace(t.text, 0);
      if (fresh) it->second = next_++;
      return it->second;
    }
    auto [it, fresh] = constants_.emplace(t.text, 0);
    if (fresh) it->second = next_++;
    return it->second;
  }

  // How a noun phrase names the term.
  std::vector<TypedLiteral> describe(const AspTerm& t, const std::map<std::string, std::string>& nouns) {
    const VarId v = var(t);
    if (t.variable) {
      auto it = nouns.find(t.text);
      if (it == nouns.end()) throw Error("UnverbalisableTerm", "variable " + t.text + " has no class literal");
      return {TypedLiteral::Class(v, it->second)};
    }
    if (is_integer(t)) {
      auto it = int_noun_.find(t.text);
      if (it == int_noun_.end()) throw Error("UnverbalisableTerm", "integer " + t.text + " has no class fact");
      return {TypedLiteral::Class(v, it->second), TypedLiteral::Integer(v, std::stol(t.text))};
    }
    return {TypedLiteral::Named(v, t.text)};
  }

  // Relation literal for an atom, followed by the description of its object.
  // A class atom becomes "is a N".
  void relation(const AspAtom& a, bool weak_neg, const std::map<std::string, std::string>& nouns,
                std::vector<Item>& out) {
    const LitKind k = kind_of(a);
    const Polarity pol = weak_neg ? Polarity::weak_neg : a.strong_neg ? Polarity::strong_neg : Polarity::plain;
    const VarId s = var(a.args[0]);
    if (k == LitKind::cls) {
      if (pol != Polarity::plain) throw Error("UnverbalisableTerm", "negated class literal " + to_string(a));
      const VarId y = next_++;
      out.push_back(TypedLiteral::Pred2(s, y, kIsa));
      out.push_back(TypedLiteral::Class(y, a.pred));
      return;
    }
    TypedLiteral lit{k, s, 0, a.pred, 0, pol};
    if (lit.binary()) {
      lit.b = var(a.args[1]);
      out.push_back(lit);
      for (const TypedLiteral& d : describe(a.args[1], nouns)) out.push_back(d);
      return;
    }
    out.push_back(lit);
  }

  std::vector<Item> fact(const AspClause& c) {
    const AspAtom& a = c.head[0];
    std::vector<Item> out;
    if (a.args.size() == 1 && is_integer(a.args[0]) && is_class(a)) {
      // There is a node 1.
      const VarId v = var(a.args[0]);
      out.push_back(TypedLiteral::Class(v, a.pred));
      out.push_back(TypedLiteral::Integer(v, std::stol(a.args[0].text)));
    } else {
      for (const TypedLiteral& d : describe(a.args.at(0), {})) out.push_back(d);
      relation(a, false, {}, out);
    }
    out.push_back(FullStop{});
    return out;
  }

  struct Body {
    std::map<std::string, std::string> nouns;
    std::vector<const BodyLit*> rels;  // body literals other than descriptors
  };

  // The first positive class literal of a variable is its descriptor;
  // `keep` names a variable that has none (the answer of a question).
  Body split_body(const AspClause& c, const std::string& keep = "") const {
    Body b;
    for (const BodyLit& l : c.body) {
      const AspAtom& a = l.atom;
      if (!l.weak_neg && !a.strong_neg && a.args.size() == 1 && a.args[0].variable && a.args[0].text != keep &&
          is_class(a) && !b.nouns.count(a.args[0].text)) {
        b.nouns[a.args[0].text] = a.pred;
        continue;
      }
      b.rels.push_back(&l);
    }
    return b;
  }

  // Runs of consecutive relation literals about the same subject; each run
  // becomes one sentence. Described variables that occur in no relation
  // follow as "there is a N".
  void body_items(const Body& b, const std::string& skip_subject, std::vector<Item>& out) {
    std::set<std::string> mentioned;
    bool first = true;
    for (std::size_t i = 0; i < b.rels.size();) {
      const AspTerm& subject = b.rels[i]->atom.args.at(0);
      if (!(first && subject.variable && subject.text == skip_subject)) {
        for (const TypedLiteral& d : describe(subject, b.nouns)) out.push_back(d);
      }
      first = false;
      for (; i < b.rels.size() && b.rels[i]->atom.args.at(0) == subject; ++i) {
        for (const AspTerm& t : b.rels[i]->atom.args) {
          if (t.variable) mentioned.insert(t.text);
        }
        relation(b.rels[i]->atom, b.rels[i]->weak_neg, b.nouns, out);
      }
    }
    for (const auto& [name, noun] : b.nouns) {
      if (mentioned.count(name) || name == skip_subject) continue;
      const VarId v = var(AspTerm{true, name});
      out.push_back(TypedLiteral::Class(v, noun));
    }
  }

  std::vector<Item> query(const AspClause& c) {
    const std::string& answer = c.head[0].args[0].text;
    Body b = split_body(c, answer);
    // A question is a verb phrase about the answer; other entities can only
    // appear as objects.
    for (const BodyLit* l : b.rels) {
      if (l->atom.args.empty() || !(l->atom.args[0] == c.head[0].args[0])) {
        throw Error("UnverbalisableTerm", "question '" + to_string(c) + "' says something about " +
                                              (l->atom.args.empty() ? "nothing" : l->atom.args[0].text) +
                                              " other than the answer");
      }
    }
    std::vector<Item> body;
    body_items(b, answer, body);
    return {QueryMark{var(c.head[0].args[0])}, Sublist{std::move(body)}, FullStop{}};
  }

  std::vector<Item> rule(const AspClause& c) {
    Body b = split_body(c);
    std::vector<Item> head;
    std::optional<AspTerm> subject;
    std::vector<const AspAtom*> head_atoms;
    if (c.card) {
      head_atoms.push_back(&c.card->lit);
    } else {
      for (const AspAtom& a : c.head) head_atoms.push_back(&a);
    }
    for (const AspAtom* a : head_atoms) {
      if (a->args.empty()) throw Error("UnverbalisableTerm", "head literal " + to_string(*a) + " has no subject");
      if (subject && !(*subject == a->args[0])) {
        throw Error("UnverbalisableTerm", "head literals of '" + to_string(c) + "' differ in their subject");
      }
      subject = a->args[0];
    }

    // "Every N who ..." when the body only talks about the head's subject.
    bool every = subject && subject->variable && b.nouns.count(subject->text);
    if (every) {
      for (const BodyLit* l : b.rels) {
        if (!(l->atom.args.at(0) == *subject)) every = false;
      }
      std::set<std::string> objects;
      for (const BodyLit* l : b.rels) {
        for (const AspTerm& t : l->atom.args) {
          if (t.variable) objects.insert(t.text);
        }
      }
      for (const auto& [name, noun] : b.nouns) {
        if (name != subject->text && !objects.count(name)) every = false;
      }
    }

    std::vector<Item> body;
    if (every) {
      const VarId x = var(*subject);
      body.push_back(TypedLiteral::Class(x, b.nouns.at(subject->text)));
      body_items(b, subject->text, body);
    } else {
      body_items(b, "", body);
      if (subject) {
        for (const TypedLiteral& d : describe(*subject, b.nouns)) head.push_back(d);
      }
    }

    if (c.card) {
      const CardHead& h = *c.card;
      CardSpec spec{h.lower, h.upper, {}, {}};
      const LitKind k = kind_of(h.lit);
      if ((k != LitKind::pred2 && k != LitKind::prop2) || h.lit.strong_neg || !h.lit.args[1].variable ||
          h.conds.size() != 1 || !is_class(h.conds[0]) || !(h.conds[0].args[0] == h.lit.args[1])) {
        throw Error("UnverbalisableTerm", "cardinality head of '" + to_string(c) + "' is not of the form L { r(X,Y) : n(Y) } U");
      }
      spec.lit.push_back(TypedLiteral{k, var(h.lit.args[0]), var(h.lit.args[1]), h.lit.pred, 0, Polarity::plain});
      spec.conds.push_back(TypedLiteral::Class(var(h.lit.args[1]), h.conds[0].pred));
      head.push_back(std::move(spec));
    } else {
      for (const AspAtom* a : head_atoms) relation(*a, false, b.nouns, head);
    }
    return {Sublist{std::move(head)}, ArrowGen{}, Sublist{std::move(body)}, FullStop{}};
  }

  const AspProgram& prog_;
  const Lexicon& lex_;
  std::map<std::string, std::string> int_noun_;
  std::set<std::size_t> absorbed_;
  std::map<std::string, VarId> constants_;
  std::map<std::string, VarId> vars_;
  VarId next_ = 0;
};

}  // namespace

InternalForm read_program(const AspProgram& program, const Lexicon& lex) { return Reader(program, lex).run(); }

}  // namespace cnlasp
