// Shared data model: logic variables, typed literals, internal-format items
// and untyped ASP clauses.

#ifndef CNLASP_MODEL_HPP_
#define CNLASP_MODEL_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace cnlasp {

// Every failure surfaced by the library carries a stable kind name so that
// the CLI and HTTP layers can report it machine-readably.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

using VarId = std::uint32_t;

struct Term {
  enum class Kind { var, constant, integer };
  Kind kind = Kind::var;
  VarId var = 0;
  std::string name;
  long value = 0;

  static Term Var(VarId v) { return Term{Kind::var, v, {}, 0}; }
  static Term Const(std::string c) { return Term{Kind::constant, 0, std::move(c), 0}; }
  static Term Int(long i) { return Term{Kind::integer, 0, {}, i}; }

  bool operator==(const Term&) const = default;
};

// Binding store for one derivation. Bindings are only ever added; callers
// that need to backtrack keep a copy.
class BindingStore {
 public:
  Term resolve(const Term& t) const;
  VarId resolve(VarId v) const;
  // Returns false and leaves the store untouched when a and b clash.
  bool unify(const Term& a, const Term& b);
  bool bound(VarId v) const { return bindings_.count(v) != 0; }

 private:
  std::map<VarId, Term> bindings_;
};

enum class LitKind { named, cls, pred1, pred2, prop1, prop2, integer, variable };
enum class Polarity { plain, strong_neg, weak_neg };

const char* to_string(LitKind k);
std::optional<LitKind> lit_kind_from_string(const std::string& s);

// Flat typed predicate over logic variables. Which fields are meaningful
// depends on kind: `symbol` holds the noun/verb/adjective symbol, the
// constant name of a `named` literal or the surface name of a `variable`
// literal; `number` is only used by `integer`.
struct TypedLiteral {
  LitKind kind = LitKind::cls;
  VarId a = 0;
  VarId b = 0;
  std::string symbol;
  long number = 0;
  Polarity polarity = Polarity::plain;

  static TypedLiteral Named(VarId v, std::string c) { return {LitKind::named, v, 0, std::move(c), 0, Polarity::plain}; }
  static TypedLiteral Class(VarId v, std::string n) { return {LitKind::cls, v, 0, std::move(n), 0, Polarity::plain}; }
  static TypedLiteral Integer(VarId v, long i) { return {LitKind::integer, v, 0, {}, i, Polarity::plain}; }
  static TypedLiteral Variable(VarId v, std::string n) { return {LitKind::variable, v, 0, std::move(n), 0, Polarity::plain}; }
  static TypedLiteral Pred1(VarId v, std::string s, Polarity p = Polarity::plain) { return {LitKind::pred1, v, 0, std::move(s), 0, p}; }
  static TypedLiteral Pred2(VarId v, VarId w, std::string s, Polarity p = Polarity::plain) { return {LitKind::pred2, v, w, std::move(s), 0, p}; }
  static TypedLiteral Prop1(VarId v, std::string s, Polarity p = Polarity::plain) { return {LitKind::prop1, v, 0, std::move(s), 0, p}; }
  static TypedLiteral Prop2(VarId v, VarId w, std::string s, Polarity p = Polarity::plain) { return {LitKind::prop2, v, w, std::move(s), 0, p}; }

  bool binary() const { return kind == LitKind::pred2 || kind == LitKind::prop2; }
  bool isa() const { return kind == LitKind::pred2 && symbol == "isa"; }
  // Literals that end up as an ASP atom in predicate position.
  bool predicative() const {
    return kind == LitKind::pred1 || kind == LitKind::pred2 || kind == LitKind::prop1 || kind == LitKind::prop2;
  }
  // named/integer/variable never become atoms of their own.
  bool auxiliary() const {
    return kind == LitKind::named || kind == LitKind::integer || kind == LitKind::variable;
  }

  bool operator==(const TypedLiteral&) const = default;
};

inline constexpr const char* kIsa = "isa";

struct FullStop {
  bool operator==(const FullStop&) const = default;
};
struct ArrowProc {
  bool operator==(const ArrowProc&) const = default;
};
struct ArrowGen {
  bool operator==(const ArrowGen&) const = default;
};
// Marks a question segment; `answer` is the variable the wh-word stands for.
struct QueryMark {
  VarId answer = 0;
  bool operator==(const QueryMark&) const = default;
};
// L { lit : conds } U. A missing bound is left open.
struct CardSpec {
  std::optional<long> lower;
  std::optional<long> upper;
  std::vector<TypedLiteral> lit;
  std::vector<TypedLiteral> conds;
  bool operator==(const CardSpec&) const = default;
};

struct Item;
struct Sublist {
  std::vector<Item> items;
  bool operator==(const Sublist&) const;
};

struct Item : std::variant<TypedLiteral, FullStop, ArrowProc, ArrowGen, QueryMark, Sublist, CardSpec> {
  using variant::variant;
  const variant& base() const { return *this; }

  const TypedLiteral* literal() const { return std::get_if<TypedLiteral>(this); }
  const Sublist* sublist() const { return std::get_if<Sublist>(this); }
  bool is_full_stop() const { return std::holds_alternative<FullStop>(*this); }
};

inline bool operator==(const Item& x, const Item& y) { return x.base() == y.base(); }
inline bool Sublist::operator==(const Sublist& o) const { return items == o.items; }

enum class Order { proc, gen };

// In proc order the most recently parsed clause comes first and every list
// is reversed; in gen order clauses read front to back. `mirror` converts
// between the two.
struct InternalForm {
  std::vector<Item> items;
  Order order = Order::gen;

  bool operator==(const InternalForm&) const = default;
};

InternalForm mirror(const InternalForm& f);
std::vector<Item> mirror_items(const std::vector<Item>& items, Order to);

// Applies the store to every variable occurring in the items.
void apply_bindings(std::vector<Item>& items, const BindingStore& store);
void apply_bindings(TypedLiteral& lit, const BindingStore& store);

// Splits a gen-order item list into clause segments, each ending in a
// FullStop (the stop is included).
std::vector<std::vector<Item>> clause_segments(const std::vector<Item>& gen_items);

// Readable rendering in the notation of the internal format listings.
std::string to_string(const TypedLiteral& lit);
std::string to_string(const Item& item);
std::string to_string(const InternalForm& form);
std::string var_name(VarId v);

// ---------------------------------------------------------------------------
// Untyped ASP side.

struct AspTerm {
  bool variable = false;
  std::string text;
  bool operator==(const AspTerm&) const = default;
  bool operator<(const AspTerm& o) const { return std::tie(variable, text) < std::tie(o.variable, o.text); }
};

struct AspAtom {
  std::string pred;
  std::vector<AspTerm> args;
  bool strong_neg = false;
  bool operator==(const AspAtom&) const = default;
};

struct BodyLit {
  AspAtom atom;
  bool weak_neg = false;
  bool operator==(const BodyLit&) const = default;
};

struct CardHead {
  std::optional<long> lower;
  std::optional<long> upper;
  AspAtom lit;
  std::vector<AspAtom> conds;
  bool operator==(const CardHead&) const = default;
};

struct AspClause {
  enum class Kind { fact, rule, constraint, card_rule, query };
  Kind kind = Kind::fact;
  std::vector<AspAtom> head;  // disjuncts; for a query the single answer atom
  std::optional<CardHead> card;
  std::vector<BodyLit> body;
  bool operator==(const AspClause&) const = default;
};

struct AspProgram {
  std::vector<AspClause> clauses;
  bool operator==(const AspProgram&) const = default;
};

std::string to_string(const AspAtom& a);
std::string to_string(const AspClause& c);
std::string to_string(const AspProgram& p);

// Variables renamed by first occurrence, literal order kept.
std::string canonical(const AspClause& c);
bool clause_equal_modulo_renaming(const AspClause& c1, const AspClause& c2);

}  // namespace cnlasp

#endif  // CNLASP_MODEL_HPP_
