#include "cnlasp/planner.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>

namespace cnlasp {

namespace {

InternalForm to_gen(const InternalForm& form) { return form.order == Order::gen ? form : mirror(form); }

// A fact segment split into its subject description and its relations, each
// relation followed by the description of its object.
struct Fact {
  std::vector<TypedLiteral> subject;
  std::vector<std::vector<TypedLiteral>> rels;
};

std::optional<Fact> as_fact(const std::vector<Item>& seg) {
  Fact f;
  for (std::size_t i = 0; i + 1 < seg.size(); ++i) {
    const TypedLiteral* l = seg[i].literal();
    if (!l) return std::nullopt;
    if (l->predicative()) f.rels.push_back({*l});
    else if (f.rels.empty()) f.subject.push_back(*l);
    else f.rels.back().push_back(*l);
  }
  if (f.rels.empty() || !seg.back().is_full_stop()) return std::nullopt;
  return f;
}

std::vector<Item> to_items(const Fact& f) {
  std::vector<Item> out(f.subject.begin(), f.subject.end());
  for (const auto& r : f.rels) out.insert(out.end(), r.begin(), r.end());
  out.push_back(FullStop{});
  return out;
}

// Merges runs of adjacent one-relation facts. `fits(run_front, candidate,
// run_size)` decides whether candidate can join the run.
InternalForm merge_runs(const InternalForm& form,
                        const std::function<bool(const Fact&, const Fact&, std::size_t)>& fits) {
  const InternalForm gen = to_gen(form);
  const auto segs = clause_segments(gen.items);
  InternalForm out{{}, Order::gen};
  for (std::size_t i = 0; i < segs.size();) {
    std::optional<Fact> first = as_fact(segs[i]);
    std::size_t j = i + 1;
    if (first && first->rels.size() == 1) {
      Fact merged = *first;
      for (; j < segs.size(); ++j) {
        std::optional<Fact> next = as_fact(segs[j]);
        if (!next || next->rels.size() != 1 || next->subject != first->subject ||
            !fits(*first, *next, merged.rels.size())) {
          break;
        }
        merged.rels.push_back(next->rels.front());
      }
      if (j - i > 1) {
        auto items = to_items(merged);
        out.items.insert(out.items.end(), items.begin(), items.end());
        i = j;
        continue;
      }
    }
    out.items.insert(out.items.end(), segs[i].begin(), segs[i].end());
    i = i + 1;
  }
  return out;
}

std::size_t arity(const TypedLiteral& l) { return l.binary() ? 2 : 1; }

// "Red", or "the node 3".
std::optional<std::string> enumerable_object(const std::vector<TypedLiteral>& rel) {
  if (rel.size() == 2 && rel[1].kind == LitKind::named) return std::string("#named");
  if (rel.size() == 3 && rel[1].kind == LitKind::cls && rel[2].kind == LitKind::integer && rel[1].a == rel[2].a) {
    return rel[1].symbol;
  }
  return std::nullopt;
}

const std::array<const char*, 6> kNames = {"X", "Y", "Z", "U", "V", "W"};

void collect_names(const std::vector<Item>& items, std::vector<std::pair<VarId, std::string>>& order) {
  std::set<VarId> isa_objects, integers;
  for (const Item& item : items) {
    if (const TypedLiteral* l = item.literal()) {
      if (l->isa()) isa_objects.insert(l->b);
      if (l->kind == LitKind::integer) integers.insert(l->a);
    }
  }
  for (const Item& item : items) {
    const TypedLiteral* l = item.literal();
    if (!l || l->kind != LitKind::cls || isa_objects.count(l->a) || integers.count(l->a)) continue;
    if (std::none_of(order.begin(), order.end(), [&](const auto& p) { return p.first == l->a; })) {
      order.emplace_back(l->a, l->symbol);
    }
  }
}

std::vector<Item> with_names(const std::vector<Item>& items, const std::map<VarId, std::string>& names) {
  std::vector<Item> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    out.push_back(items[i]);
    const TypedLiteral* l = items[i].literal();
    if (!l || l->kind != LitKind::cls) continue;
    auto it = names.find(l->a);
    if (it == names.end()) continue;
    const TypedLiteral* next = i + 1 < items.size() ? items[i + 1].literal() : nullptr;
    if (next && next->kind == LitKind::variable && next->a == l->a) continue;
    out.push_back(TypedLiteral::Variable(l->a, it->second));
  }
  return out;
}

}  // namespace

InternalForm plan_coordination(const InternalForm& form) {
  return merge_runs(form, [](const Fact& first, const Fact& next, std::size_t size) {
    const TypedLiteral& a = first.rels.front().front();
    const TypedLiteral& b = next.rels.front().front();
    return size < 3 && !a.isa() && !b.isa() && arity(a) == arity(b);
  });
}

InternalForm plan_enumeration(const InternalForm& form) {
  return merge_runs(form, [](const Fact& first, const Fact& next, std::size_t) {
    const TypedLiteral& a = first.rels.front().front();
    const TypedLiteral& b = next.rels.front().front();
    if (!a.binary() || a.isa() || a.polarity != Polarity::plain) return false;
    if (b.kind != a.kind || b.symbol != a.symbol || b.polarity != a.polarity) return false;
    auto oa = enumerable_object(first.rels.front());
    auto ob = enumerable_object(next.rels.front());
    return oa && ob && *oa == *ob;
  });
}

InternalForm insert_variable_names(const InternalForm& form) {
  const InternalForm gen = to_gen(form);
  InternalForm out{{}, Order::gen};
  for (const auto& seg : clause_segments(gen.items)) {
    std::vector<std::size_t> lists;
    for (std::size_t i = 0; i < seg.size(); ++i) {
      if (seg[i].sublist()) lists.push_back(i);
    }
    if (lists.empty()) {
      out.items.insert(out.items.end(), seg.begin(), seg.end());
      continue;
    }
    // Text order: the body is read before the head.
    std::vector<std::pair<VarId, std::string>> order;
    for (auto it = lists.rbegin(); it != lists.rend(); ++it) collect_names(seg[*it].sublist()->items, order);
    std::map<std::string, std::size_t> per_noun;
    for (const auto& [v, noun] : order) ++per_noun[noun];
    std::map<VarId, std::string> names;
    for (const auto& [v, noun] : order) {
      if (per_noun[noun] < 2) continue;
      if (names.size() == kNames.size()) {
        throw Error("NameExhaustion", "more than " + std::to_string(kNames.size()) + " variables need names in one clause");
      }
      names[v] = kNames[names.size()];
    }
    for (std::size_t i = 0; i < seg.size(); ++i) {
      if (const Sublist* s = seg[i].sublist()) out.items.push_back(Sublist{with_names(s->items, names)});
      else out.items.push_back(seg[i]);
    }
  }
  return out;
}

std::vector<SeedMark> seed_antecedents(const InternalForm& form) {
  const InternalForm gen = to_gen(form);
  std::vector<SeedMark> out;
  std::set<VarId> top;
  const auto segs = clause_segments(gen.items);
  for (std::size_t c = 0; c < segs.size(); ++c) {
    const auto& seg = segs[c];
    std::set<VarId> local = top;
    auto visit = [&](const std::vector<Item>& items, std::set<VarId>& seen) {
      std::set<VarId> isa_objects;
      for (const Item& item : items) {
        if (const TypedLiteral* l = item.literal(); l && l->isa()) isa_objects.insert(l->b);
      }
      for (const Item& item : items) {
        const TypedLiteral* l = item.literal();
        if (!l || !(l->kind == LitKind::named || l->kind == LitKind::cls) || isa_objects.count(l->a)) continue;
        out.push_back({c, l->a, seen.count(l->a) != 0});
        seen.insert(l->a);
      }
    };
    std::vector<const Sublist*> lists;
    for (const Item& item : seg) {
      if (const Sublist* s = item.sublist()) lists.push_back(s);
    }
    if (lists.empty()) {
      visit(seg, top);
      continue;
    }
    for (auto it = lists.rbegin(); it != lists.rend(); ++it) visit((*it)->items, local);
  }
  return out;
}

InternalForm plan(const InternalForm& form) {
  return plan_coordination(plan_enumeration(insert_variable_names(form)));
}

}  // namespace cnlasp
