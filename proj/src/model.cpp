#include "cnlasp/model.hpp"

#include <algorithm>
#include <sstream>

namespace cnlasp {

Term BindingStore::resolve(const Term& t) const {
  Term cur = t;
  while (cur.kind == Term::Kind::var) {
    auto it = bindings_.find(cur.var);
    if (it == bindings_.end()) break;
    cur = it->second;
  }
  return cur;
}

VarId BindingStore::resolve(VarId v) const {
  Term t = resolve(Term::Var(v));
  return t.kind == Term::Kind::var ? t.var : v;
}

bool BindingStore::unify(const Term& a, const Term& b) {
  Term x = resolve(a);
  Term y = resolve(b);
  if (x == y) return true;
  if (x.kind == Term::Kind::var) {
    // Bind the younger variable to the older one so representatives are stable.
    if (y.kind == Term::Kind::var && y.var > x.var) {
      bindings_[y.var] = x;
    } else {
      bindings_[x.var] = y;
    }
    return true;
  }
  if (y.kind == Term::Kind::var) {
    bindings_[y.var] = x;
    return true;
  }
  return false;
}

const char* to_string(LitKind k) {
  switch (k) {
    case LitKind::named: return "named";
    case LitKind::cls: return "class";
    case LitKind::pred1: return "pred1";
    case LitKind::pred2: return "pred2";
    case LitKind::prop1: return "prop1";
    case LitKind::prop2: return "prop2";
    case LitKind::integer: return "integer";
    case LitKind::variable: return "variable";
  }
  return "?";
}

std::optional<LitKind> lit_kind_from_string(const std::string& s) {
  for (LitKind k : {LitKind::named, LitKind::cls, LitKind::pred1, LitKind::pred2, LitKind::prop1, LitKind::prop2,
                    LitKind::integer, LitKind::variable}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

std::vector<Item> mirror_items(const std::vector<Item>& items, Order to) {
  std::vector<Item> out;
  out.reserve(items.size());
  for (auto it = items.rbegin(); it != items.rend(); ++it) {
    const Item& item = *it;
    if (const Sublist* s = item.sublist()) {
      out.push_back(Sublist{mirror_items(s->items, to)});
    } else if (std::holds_alternative<ArrowGen>(item) || std::holds_alternative<ArrowProc>(item)) {
      if (to == Order::proc) out.push_back(ArrowProc{});
      else out.push_back(ArrowGen{});
    } else {
      out.push_back(item);
    }
  }
  return out;
}

InternalForm mirror(const InternalForm& f) {
  Order to = f.order == Order::proc ? Order::gen : Order::proc;
  return InternalForm{mirror_items(f.items, to), to};
}

void apply_bindings(TypedLiteral& lit, const BindingStore& store) {
  lit.a = store.resolve(lit.a);
  if (lit.binary()) lit.b = store.resolve(lit.b);
}

void apply_bindings(std::vector<Item>& items, const BindingStore& store) {
  for (Item& item : items) {
    if (auto* lit = std::get_if<TypedLiteral>(&item)) {
      apply_bindings(*lit, store);
    } else if (auto* s = std::get_if<Sublist>(&item)) {
      apply_bindings(s->items, store);
    } else if (auto* q = std::get_if<QueryMark>(&item)) {
      q->answer = store.resolve(q->answer);
    } else if (auto* c = std::get_if<CardSpec>(&item)) {
      for (auto& l : c->lit) apply_bindings(l, store);
      for (auto& l : c->conds) apply_bindings(l, store);
    }
  }
}

std::vector<std::vector<Item>> clause_segments(const std::vector<Item>& gen_items) {
  std::vector<std::vector<Item>> out;
  std::vector<Item> cur;
  for (const Item& item : gen_items) {
    cur.push_back(item);
    if (item.is_full_stop()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string var_name(VarId v) {
  std::string s(1, static_cast<char>('A' + v % 26));
  if (v >= 26) s += std::to_string(v / 26);
  return s;
}

std::string to_string(const TypedLiteral& lit) {
  std::string pre;
  if (lit.polarity == Polarity::strong_neg) pre = "-";
  if (lit.polarity == Polarity::weak_neg) pre = "not ";
  const std::string a = var_name(lit.a);
  switch (lit.kind) {
    case LitKind::named: return "named(" + a + "," + lit.symbol + ")";
    case LitKind::cls: return "class(" + a + "," + lit.symbol + ")";
    case LitKind::integer: return "integer(" + a + "," + std::to_string(lit.number) + ")";
    case LitKind::variable: return "variable(" + a + ",'" + lit.symbol + "')";
    case LitKind::pred1: return pre + "pred(" + a + "," + lit.symbol + ")";
    case LitKind::prop1: return pre + "prop(" + a + "," + lit.symbol + ")";
    case LitKind::pred2: return pre + "pred(" + a + "," + var_name(lit.b) + "," + lit.symbol + ")";
    case LitKind::prop2: return pre + "prop(" + a + "," + var_name(lit.b) + "," + lit.symbol + ")";
  }
  return "?";
}

namespace {

std::string join_items(const std::vector<Item>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += to_string(items[i]);
  }
  return out;
}

std::string join_lits(const std::vector<TypedLiteral>& lits) {
  std::string out;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i) out += ", ";
    out += to_string(lits[i]);
  }
  return out;
}

}  // namespace

std::string to_string(const Item& item) {
  struct V {
    std::string operator()(const TypedLiteral& l) const { return to_string(l); }
    std::string operator()(const FullStop&) const { return "'.'"; }
    std::string operator()(const ArrowProc&) const { return "'-:'"; }
    std::string operator()(const ArrowGen&) const { return "':-'"; }
    std::string operator()(const QueryMark& q) const { return "'?'(" + var_name(q.answer) + ")"; }
    std::string operator()(const Sublist& s) const { return "[" + join_items(s.items) + "]"; }
    std::string operator()(const CardSpec& c) const {
      std::string s = "card(";
      s += c.lower ? std::to_string(*c.lower) : "_";
      s += ",";
      s += c.upper ? std::to_string(*c.upper) : "_";
      return s + ",[" + join_lits(c.lit) + "],[" + join_lits(c.conds) + "])";
    }
  };
  return std::visit(V{}, item.base());
}

std::string to_string(const InternalForm& form) { return "[[" + join_items(form.items) + "]]"; }

// ---------------------------------------------------------------------------

std::string to_string(const AspAtom& a) {
  std::string s = a.strong_neg ? "-" : "";
  s += a.pred;
  if (!a.args.empty()) {
    s += "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) s += ",";
      s += a.args[i].text;
    }
    s += ")";
  }
  return s;
}

namespace {

std::string body_string(const std::vector<BodyLit>& body) {
  std::string s;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i) s += ", ";
    if (body[i].weak_neg) s += "not ";
    s += to_string(body[i].atom);
  }
  return s;
}

}  // namespace

std::string to_string(const AspClause& c) {
  std::string s;
  switch (c.kind) {
    case AspClause::Kind::fact:
      return to_string(c.head.at(0)) + ".";
    case AspClause::Kind::constraint:
      return ":- " + body_string(c.body) + ".";
    case AspClause::Kind::rule:
    case AspClause::Kind::query:
      for (std::size_t i = 0; i < c.head.size(); ++i) {
        if (i) s += " ; ";
        s += to_string(c.head[i]);
      }
      break;
    case AspClause::Kind::card_rule: {
      const CardHead& h = *c.card;
      if (h.lower) s += std::to_string(*h.lower) + " ";
      s += "{ " + to_string(h.lit) + " : ";
      for (std::size_t i = 0; i < h.conds.size(); ++i) {
        if (i) s += ", ";
        s += to_string(h.conds[i]);
      }
      s += " }";
      if (h.upper) s += " " + std::to_string(*h.upper);
      break;
    }
  }
  if (c.body.empty()) return s + ".";
  return s + " :- " + body_string(c.body) + ".";
}

std::string to_string(const AspProgram& p) {
  std::string s;
  for (const AspClause& c : p.clauses) s += to_string(c) + "\n";
  return s;
}

namespace {

class Renamer {
 public:
  void atom(AspAtom& a) {
    for (AspTerm& t : a.args) {
      if (!t.variable) continue;
      auto [it, fresh] = names_.emplace(t.text, "V" + std::to_string(names_.size()));
      t.text = it->second;
    }
  }

 private:
  std::map<std::string, std::string> names_;
};

}  // namespace

std::string canonical(const AspClause& c) {
  AspClause copy = c;
  Renamer r;
  for (AspAtom& a : copy.head) r.atom(a);
  if (copy.card) {
    r.atom(copy.card->lit);
    for (AspAtom& a : copy.card->conds) r.atom(a);
  }
  for (BodyLit& b : copy.body) r.atom(b.atom);
  return to_string(copy);
}

bool clause_equal_modulo_renaming(const AspClause& c1, const AspClause& c2) {
  return c1.kind == c2.kind && canonical(c1) == canonical(c2);
}

}  // namespace cnlasp
