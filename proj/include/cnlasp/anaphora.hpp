// Antecedent accessibility and resolution of referring expressions.

#ifndef CNLASP_ANAPHORA_HPP_
#define CNLASP_ANAPHORA_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cnlasp/model.hpp"

namespace cnlasp {

// The literals that introduced one discourse entity: a named literal, or a
// class literal with optional integer / variable apposition.
struct Referent {
  VarId var = 0;
  std::vector<TypedLiteral> lits;
};

// What a noun phrase says about its entity. Empty optionals put no
// constraint on the antecedent.
struct Description {
  std::optional<std::string> constant;
  std::optional<std::string> noun;
  std::optional<long> number;
  std::optional<std::string> name;

  static Description of(std::span<const TypedLiteral> lits);
  bool matches(const Referent& r) const;
};

enum class FrameKind { top, body, head };

// Nested antecedent groups mirroring the sublists of the internal format.
// A frame sees itself and every frame below it on the stack; a rule pushes
// its body frame before its head frame, so head sees body but not the
// reverse, and both vanish once the rule is closed.
class AntecedentStore {
 public:
  AntecedentStore() { frames_.push_back({FrameKind::top, {}}); }

  void push(FrameKind k) { frames_.push_back({k, {}}); }
  void pop();
  FrameKind current_kind() const { return frames_.back().kind; }
  std::size_t depth() const { return frames_.size(); }

  void add(Referent r) { frames_.back().refs.push_back(std::move(r)); }
  // Proper names go to the outermost frame unless they occur in a rule head.
  void add_proper_name(Referent r);

  // Closest accessible referent matching d: most recent in the innermost
  // frame first, then outwards.
  const Referent* closest(const Description& d) const;
  bool accessible(VarId v) const;

  // Number of accessible referents.
  std::size_t size() const;

 private:
  struct Frame {
    FrameKind kind;
    std::vector<Referent> refs;
  };
  std::vector<Frame> frames_;
};

struct Resolution {
  std::vector<Item> cl;
  AntecedentStore ante;
  std::optional<VarId> antecedent;
};

// Definite noun phrase: `cl_after` is the current list after the noun
// phrase's literals were appended at position `cl_before`. If an accessible
// antecedent matches, the new variable is unified with it and the temporary
// literals are dropped; otherwise they stay and become a new antecedent.
Resolution resolve_definite(const std::vector<Item>& cl_after, std::size_t cl_before, AntecedentStore ante,
                            BindingStore& bindings);

// Same for a proper name; `cl_after` ends with the named literal.
Resolution resolve_proper_name(const std::vector<Item>& cl_after, std::size_t cl_before, AntecedentStore ante,
                               BindingStore& bindings);

// Generation side: true iff the closest accessible antecedent matching the
// group's description is the group's own entity.
bool may_generate_definite(std::span<const TypedLiteral> group, const AntecedentStore& ante);

}  // namespace cnlasp

#endif  // CNLASP_ANAPHORA_HPP_
