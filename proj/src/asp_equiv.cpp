#include <algorithm>
#include <functional>

#include "cnlasp/asp_io.hpp"

namespace cnlasp {

namespace {

// Atom text with variables blanked out; literals with different shapes can
// be ordered without looking at variable names.
std::string shape(const AspAtom& a) {
  AspAtom b = a;
  for (AspTerm& t : b.args) {
    if (t.variable) t.text = "_";
  }
  return to_string(b);
}
std::string shape(const BodyLit& l) { return (l.weak_neg ? "not " : "") + shape(l.atom); }

std::string text(const AspAtom& a) { return to_string(a); }
std::string text(const BodyLit& l) { return (l.weak_neg ? "not " : "") + to_string(l.atom); }

// Sorts v by shape and returns the [begin, end) ranges of equal shapes.
template <class T>
std::vector<std::pair<std::size_t, std::size_t>> tie_groups(std::vector<T>& v) {
  std::stable_sort(v.begin(), v.end(), [](const T& x, const T& y) {
    const std::string sx = shape(x), sy = shape(y);
    return sx != sy ? sx < sy : text(x) < text(y);
  });
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i + 1;
    while (j < v.size() && shape(v[j]) == shape(v[i])) ++j;
    if (j - i > 1) out.emplace_back(i, j);
    i = j;
  }
  return out;
}

// Beyond this many arrangements the sorted order alone is used.
constexpr std::size_t kMaxArrangements = 40320;

}  // namespace

std::string canonical_unordered(const AspClause& clause) {
  AspClause c = clause;
  std::vector<std::function<bool()>> steppers;  // advance one group, false when wrapped
  auto add_groups = [&](auto& v) {
    for (auto [b, e] : tie_groups(v)) {
      steppers.push_back([&v, b = b, e = e] {
        auto cmp = [](const auto& x, const auto& y) { return text(x) < text(y); };
        return std::next_permutation(v.begin() + static_cast<std::ptrdiff_t>(b),
                                     v.begin() + static_cast<std::ptrdiff_t>(e), cmp);
      });
    }
  };
  add_groups(c.head);
  if (c.card) add_groups(c.card->conds);
  add_groups(c.body);

  std::string best = canonical(c);
  for (std::size_t n = 1; n < kMaxArrangements; ++n) {
    // Odometer over the groups.
    std::size_t g = 0;
    while (g < steppers.size() && !steppers[g]()) ++g;
    if (g == steppers.size()) break;
    best = std::min(best, canonical(c));
  }
  return best;
}

bool program_equiv(const AspProgram& a, const AspProgram& b) {
  if (a.clauses.size() != b.clauses.size()) return false;
  auto keys = [](const AspProgram& p) {
    std::vector<std::string> out;
    for (const AspClause& c : p.clauses) out.push_back(canonical_unordered(c));
    std::sort(out.begin(), out.end());
    return out;
  };
  return keys(a) == keys(b);
}

}  // namespace cnlasp
