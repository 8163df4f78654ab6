#include <algorithm>
#include <map>
#include <set>

#include "cnlasp/asp_io.hpp"

namespace cnlasp {

namespace {

class Writer {
 public:
  explicit Writer(const std::vector<Item>& items) { collect_constants(items); }

  AspProgram run(const std::vector<Item>& items) {
    for (const auto& seg : clause_segments(items)) clause(seg);
    letter();
    return std::move(prog_);
  }

 private:
  void collect_constants(const std::vector<Item>& items) {
    auto lit = [&](const TypedLiteral& l) {
      if (l.kind == LitKind::named) constants_[l.a] = l.symbol;
      if (l.kind == LitKind::integer) {
        constants_[l.a] = std::to_string(l.number);
        int_vars_.insert(l.a);
      }
    };
    for (const Item& item : items) {
      if (const TypedLiteral* l = item.literal()) lit(*l);
      else if (const Sublist* s = item.sublist()) collect_constants(s->items);
      else if (const auto* c = std::get_if<CardSpec>(&item)) {
        for (const auto& l : c->lit) lit(l);
        for (const auto& l : c->conds) lit(l);
      }
    }
  }

  AspTerm term(VarId v) const {
    auto it = constants_.find(v);
    if (it != constants_.end()) return {false, it->second};
    return {true, "#" + std::to_string(v)};
  }

  // Literals to atoms. "X is a N" is the isa literal followed by the class
  // literal of its object and becomes N(X).
  // Inside rules the noun of "the node 1" only describes the integer.
  std::vector<BodyLit> atoms(const std::vector<TypedLiteral>& lits, bool in_rule = false) const {
    std::map<VarId, VarId> isa_of;
    for (const TypedLiteral& l : lits) {
      if (l.isa()) isa_of[l.b] = l.a;
    }
    std::vector<BodyLit> out;
    for (const TypedLiteral& l : lits) {
      if (l.auxiliary() || l.isa()) continue;
      AspAtom a;
      a.pred = l.symbol;
      a.strong_neg = l.polarity == Polarity::strong_neg;
      if (l.kind == LitKind::cls) {
        auto it = isa_of.find(l.a);
        if (in_rule && it == isa_of.end() && int_vars_.count(l.a)) continue;
        a.args.push_back(term(it != isa_of.end() ? it->second : l.a));
      } else {
        a.args.push_back(term(l.a));
        if (l.binary()) a.args.push_back(term(l.b));
      }
      out.push_back({std::move(a), l.polarity == Polarity::weak_neg});
    }
    return out;
  }

  static std::vector<TypedLiteral> literals(const std::vector<Item>& items) {
    std::vector<TypedLiteral> out;
    for (const Item& item : items) {
      if (const TypedLiteral* l = item.literal()) out.push_back(*l);
    }
    return out;
  }

  static std::vector<BodyLit> dedupe(std::vector<BodyLit> lits) {
    std::vector<BodyLit> out;
    for (BodyLit& b : lits) {
      if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(std::move(b));
    }
    return out;
  }

  void clause(const std::vector<Item>& seg) {
    if (seg.empty() || seg.front().is_full_stop()) return;
    if (const auto* q = std::get_if<QueryMark>(&seg.front())) {
      AspClause c;
      c.kind = AspClause::Kind::query;
      c.head.push_back(AspAtom{"answer", {term(q->answer)}, false});
      c.body = dedupe(atoms(literals(seg.at(1).sublist()->items), true));
      emit(std::move(c));
      return;
    }
    if (const Sublist* head = seg.front().sublist()) {
      rule(head->items, seg.at(2).sublist()->items);
      return;
    }
    for (BodyLit& b : atoms(literals(seg))) {
      AspClause c;
      c.kind = AspClause::Kind::fact;
      c.head.push_back(std::move(b.atom));
      for (const AspTerm& t : c.head[0].args) {
        if (t.variable) throw Error("UngroundFact", "fact " + to_string(c.head[0]) + " contains a variable");
      }
      if (seen_facts_.insert(to_string(c.head[0])).second) emit(std::move(c));
    }
  }

  void rule(const std::vector<Item>& head, const std::vector<Item>& body) {
    AspClause c;
    c.body = dedupe(atoms(literals(body), true));
    if (head.empty()) {
      c.kind = AspClause::Kind::constraint;
    } else if (const auto* card = std::get_if<CardSpec>(&head.front())) {
      c.kind = AspClause::Kind::card_rule;
      CardHead h;
      h.lower = card->lower;
      h.upper = card->upper;
      h.lit = atoms(card->lit).at(0).atom;
      for (BodyLit& b : atoms(card->conds)) h.conds.push_back(std::move(b.atom));
      c.card = std::move(h);
    } else {
      c.kind = AspClause::Kind::rule;
      for (BodyLit& b : dedupe(atoms(literals(head), true))) {
        const bool in_body = std::find(c.body.begin(), c.body.end(), BodyLit{b.atom, false}) != c.body.end();
        if (!in_body) c.head.push_back(std::move(b.atom));
      }
      if (c.head.empty()) return;  // "then the student is a student"
    }
    emit(std::move(c));
  }

  void emit(AspClause c) {
    check_safety(c);
    prog_.clauses.push_back(std::move(c));
  }

  static void vars_of(const AspAtom& a, std::set<std::string>& out) {
    for (const AspTerm& t : a.args) {
      if (t.variable) out.insert(t.text);
    }
  }

  void check_safety(const AspClause& c) const {
    std::set<std::string> bound;
    for (const BodyLit& b : c.body) {
      if (!b.weak_neg) vars_of(b.atom, bound);
    }
    std::set<std::string> need;
    for (const AspAtom& a : c.head) vars_of(a, need);
    for (const BodyLit& b : c.body) {
      if (b.weak_neg) vars_of(b.atom, need);
    }
    if (c.card) {
      std::set<std::string> local;
      for (const AspAtom& a : c.card->conds) vars_of(a, local);
      std::set<std::string> lit;
      vars_of(c.card->lit, lit);
      for (const std::string& v : lit) {
        if (!local.count(v)) need.insert(v);
      }
    }
    for (const std::string& v : need) {
      if (!bound.count(v)) {
        throw Error("UnsafeClause", "variable in '" + to_string(c) + "' does not occur in a positive body literal");
      }
    }
  }

  // Variables are lettered A, B, C, ... by first appearance in the program
  // text.
  void letter() {
    std::map<std::string, std::string> names;
    auto atom = [&](AspAtom& a) {
      for (AspTerm& t : a.args) {
        if (!t.variable) continue;
        auto [it, fresh] = names.emplace(t.text, "");
        if (fresh) it->second = var_name(static_cast<VarId>(names.size() - 1));
        t.text = it->second;
      }
    };
    for (AspClause& c : prog_.clauses) {
      for (AspAtom& a : c.head) atom(a);
      if (c.card) {
        atom(c.card->lit);
        for (AspAtom& a : c.card->conds) atom(a);
      }
      for (BodyLit& b : c.body) atom(b.atom);
    }
  }

  std::map<VarId, std::string> constants_;
  std::set<VarId> int_vars_;
  std::set<std::string> seen_facts_;
  AspProgram prog_;
};

}  // namespace

AspProgram write_program(const InternalForm& form) {
  const InternalForm gen = form.order == Order::gen ? form : mirror(form);
  return Writer(gen.items).run(gen.items);
}

}  // namespace cnlasp
