#include "cnlasp/anaphora.hpp"

#include <algorithm>

namespace cnlasp {

Description Description::of(std::span<const TypedLiteral> lits) {
  Description d;
  for (const TypedLiteral& l : lits) {
    switch (l.kind) {
      case LitKind::named: d.constant = l.symbol; break;
      case LitKind::cls: d.noun = l.symbol; break;
      case LitKind::integer: d.number = l.number; break;
      case LitKind::variable: d.name = l.symbol; break;
      default: break;
    }
  }
  return d;
}

bool Description::matches(const Referent& r) const {
  Description other = of(r.lits);
  if (constant) return other.constant == constant;
  if (!noun || other.noun != noun) return false;
  if (number && other.number != number) return false;
  if (name && other.name != name) return false;
  return true;
}

void AntecedentStore::pop() {
  if (frames_.size() > 1) frames_.pop_back();
}

void AntecedentStore::add_proper_name(Referent r) {
  if (frames_.back().kind == FrameKind::head) {
    frames_.back().refs.push_back(std::move(r));
  } else {
    frames_.front().refs.push_back(std::move(r));
  }
}

const Referent* AntecedentStore::closest(const Description& d) const {
  for (auto f = frames_.rbegin(); f != frames_.rend(); ++f) {
    for (auto r = f->refs.rbegin(); r != f->refs.rend(); ++r) {
      if (d.matches(*r)) return &*r;
    }
  }
  return nullptr;
}

bool AntecedentStore::accessible(VarId v) const {
  for (const Frame& f : frames_) {
    for (const Referent& r : f.refs) {
      if (r.var == v) return true;
    }
  }
  return false;
}

std::size_t AntecedentStore::size() const {
  std::size_t n = 0;
  for (const Frame& f : frames_) n += f.refs.size();
  return n;
}

namespace {

std::vector<TypedLiteral> tail_literals(const std::vector<Item>& cl, std::size_t from) {
  std::vector<TypedLiteral> out;
  for (std::size_t i = from; i < cl.size(); ++i) {
    if (const TypedLiteral* l = cl[i].literal()) out.push_back(*l);
  }
  return out;
}

Resolution resolve(const std::vector<Item>& cl_after, std::size_t cl_before, AntecedentStore ante,
                   BindingStore& bindings, bool proper_name) {
  Resolution res{cl_after, std::move(ante), std::nullopt};
  std::vector<TypedLiteral> temp = tail_literals(cl_after, cl_before);
  if (temp.empty()) return res;
  const VarId var = temp.front().a;
  const Referent* found = res.ante.closest(Description::of(temp));
  if (found && bindings.unify(Term::Var(var), Term::Var(found->var))) {
    res.antecedent = found->var;
    res.cl.resize(cl_before);
    return res;
  }
  Referent r{var, std::move(temp)};
  if (proper_name) res.ante.add_proper_name(std::move(r));
  else res.ante.add(std::move(r));
  return res;
}

}  // namespace

Resolution resolve_definite(const std::vector<Item>& cl_after, std::size_t cl_before, AntecedentStore ante,
                            BindingStore& bindings) {
  return resolve(cl_after, cl_before, std::move(ante), bindings, false);
}

Resolution resolve_proper_name(const std::vector<Item>& cl_after, std::size_t cl_before, AntecedentStore ante,
                               BindingStore& bindings) {
  return resolve(cl_after, cl_before, std::move(ante), bindings, true);
}

bool may_generate_definite(std::span<const TypedLiteral> group, const AntecedentStore& ante) {
  if (group.empty()) return false;
  const Referent* r = ante.closest(Description::of(group));
  return r != nullptr && r->var == group.front().a;
}

}  // namespace cnlasp
