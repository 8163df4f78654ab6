#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "cnlasp/asp_io.hpp"

namespace cnlasp::testing {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(CNLASP_FIXTURES) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string squash(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::string w;
    std::string joined;
    while (words >> w) joined += (joined.empty() ? "" : " ") + w;
    if (!joined.empty()) out += joined + "\n";
  }
  return out;
}

AspClause clause(const std::string& text) {
  AspProgram p = parse_asp(text);
  if (p.clauses.size() != 1) throw std::runtime_error("expected one clause in " + text);
  return p.clauses.front();
}

bool same_modulo_lettering(const AspProgram& a, const AspProgram& b) {
  if (a.clauses.size() != b.clauses.size()) return false;
  for (std::size_t i = 0; i < a.clauses.size(); ++i) {
    if (!clause_equal_modulo_renaming(a.clauses[i], b.clauses[i])) return false;
  }
  return true;
}

namespace {

const std::vector<std::string> kNames = {"tom", "bob", "sue_miller", "biology", "linguistics", "comp329"};
const std::vector<std::string> kNouns = {"student", "person", "course", "university", "book"};
const std::vector<std::string> kUnary = {"work", "party", "successful", "stressed", "happy", "expensive"};
const std::vector<std::string> kBinary = {"study_at", "like", "work_at", "enrolled_in"};

class Generator {
 public:
  explicit Generator(std::mt19937& rng) : rng_(rng) {}

  AspProgram program() {
    AspProgram p;
    const int n = pick(1, 6);
    bool query = false;
    for (int i = 0; i < n; ++i) {
      const int kind = pick(0, 9);
      if (kind <= 3) {
        fact_run(p);
      } else if (kind <= 5) {
        p.clauses.push_back(rule());
      } else if (kind == 6) {
        p.clauses.push_back(constraint());
      } else if (kind == 7 && !query) {
        p.clauses.push_back(question());
        query = true;
      } else if (kind == 8) {
        graph(p);
      } else {
        fact_run(p);
      }
    }
    return p;
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(int percent) { return pick(1, 100) <= percent; }
  template <typename T>
  const T& one(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(pick(0, static_cast<int>(v.size()) - 1))];
  }

  static AspTerm c(const std::string& s) { return {false, s}; }
  static AspTerm v(const std::string& s) { return {true, s}; }
  static AspAtom atom(const std::string& pred, std::vector<AspTerm> args, bool neg = false) {
    return AspAtom{pred, std::move(args), neg};
  }

  void add_fact(AspProgram& p, AspAtom a) {
    AspClause cl;
    cl.kind = AspClause::Kind::fact;
    cl.head.push_back(std::move(a));
    const std::string key = to_string(cl);
    // Contradictory facts would make the program inconsistent but not
    // unverbalisable; duplicates are collapsed by the writer, so avoid them.
    if (!seen_facts_.insert(key).second) return;
    p.clauses.push_back(std::move(cl));
  }

  // One to three facts about the same constant.
  void fact_run(AspProgram& p) {
    const std::string subj = one(kNames);
    const int n = pick(1, 3);
    for (int i = 0; i < n; ++i) {
      const int kind = pick(0, 2);
      if (kind == 0) {
        add_fact(p, atom(one(kNouns), {c(subj)}));
      } else if (kind == 1) {
        add_fact(p, atom(one(kUnary), {c(subj)}, chance(20)));
      } else {
        std::string obj = one(kNames);
        while (obj == subj) obj = one(kNames);
        add_fact(p, atom(one(kBinary), {c(subj), c(obj)}, chance(15)));
      }
    }
  }

  // Nodes 1..n, some connections, and the colouring rule.
  void graph(AspProgram& p) {
    const int n = pick(1, 4);
    for (int i = 1; i <= n; ++i) add_fact(p, atom("node", {c(std::to_string(i))}));
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        if (chance(40)) add_fact(p, atom("connected_to", {c(std::to_string(i)), c(std::to_string(j))}));
      }
    }
    if (chance(50) && !card_) {
      card_ = true;
      AspClause cl;
      cl.kind = AspClause::Kind::card_rule;
      CardHead h;
      const int bounds = pick(0, 2);
      const long k = pick(1, 3);
      if (bounds != 2) h.lower = k;
      if (bounds != 1) h.upper = k;
      h.lit = atom("assigned_to", {v("A"), v("B")});
      h.conds.push_back(atom("colour", {v("B")}));
      cl.card = h;
      cl.body.push_back({atom("node", {v("A")}), false});
      p.clauses.push_back(cl);
    }
  }

  // A literal about X: unary, binary to a constant, or binary to a
  // described variable Y.
  void about(std::vector<BodyLit>& body, const std::string& x, bool& used_y, bool allow_weak,
             bool describe_y = true) {
    const std::size_t before = body.size();
    add_about(body, x, used_y, allow_weak, describe_y);
    // Saying the same thing twice is not something the writer keeps.
    for (std::size_t i = body.size(); i-- > before;) {
      for (std::size_t j = 0; j < i; ++j) {
        if (same_atom(body[i].atom, body[j].atom)) {
          body.erase(body.begin() + static_cast<std::ptrdiff_t>(i));
          break;
        }
      }
    }
  }

  static bool same_atom(const AspAtom& a, const AspAtom& b) {
    if (a.pred != b.pred || a.args.size() != b.args.size()) return false;
    for (std::size_t k = 0; k < a.args.size(); ++k) {
      if (a.args[k].text != b.args[k].text || a.args[k].variable != b.args[k].variable) return false;
    }
    return true;
  }

  void add_about(std::vector<BodyLit>& body, const std::string& x, bool& used_y, bool allow_weak, bool describe_y) {
    const bool weak = allow_weak && chance(20);
    const bool strong = !weak && chance(15);
    const int kind = pick(0, 2);
    if (kind == 0) {
      body.push_back({atom(one(kUnary), {v(x)}, strong), weak});
    } else if (kind == 1 || used_y) {
      body.push_back({atom(one(kBinary), {v(x), c(one(kNames))}, strong), weak});
    } else {
      used_y = true;
      body.push_back({atom(one(kBinary), {v(x), v("Y")}), false});
      body.push_back({atom(one(kNouns), {v("Y")}), false});
      // Something said about Y makes the sentence a conditional.
      if (describe_y && chance(40)) body.push_back({atom(one(kUnary), {v("Y")}, chance(15)), false});
    }
  }

  // Every N who ... VP [or VP].
  AspClause rule() {
    AspClause cl;
    cl.kind = AspClause::Kind::rule;
    cl.body.push_back({atom(one(kNouns), {v("X")}), false});
    bool used_y = false;
    const int n = pick(0, 2);
    for (int i = 0; i < n; ++i) about(cl.body, "X", used_y, true);
    const int heads = pick(1, 2);
    // A head atom repeated in the body would make the rule a tautology.
    std::set<std::string> preds;
    for (const BodyLit& l : cl.body) preds.insert(l.atom.pred);
    for (int i = 0; i < heads || cl.head.empty(); ++i) {
      std::string h = one(kUnary);
      if (!preds.insert(h).second) continue;
      cl.head.push_back(atom(h, {v("X")}, chance(15)));
    }
    return cl;
  }

  AspClause constraint() {
    AspClause cl;
    cl.kind = AspClause::Kind::constraint;
    cl.body.push_back({atom(one(kNouns), {v("X")}), false});
    bool used_y = false;
    const int n = pick(1, 2);
    for (int i = 0; i < n; ++i) about(cl.body, "X", used_y, i > 0);
    // The first relation is positive so the noun phrase has a verb.
    cl.body[1].weak_neg = false;
    return cl;
  }

  AspClause question() {
    AspClause cl;
    cl.kind = AspClause::Kind::query;
    cl.head.push_back(atom("answer", {v("X")}));
    bool used_y = false;
    if (chance(50)) cl.body.push_back({atom(one(kNouns), {v("X")}), false});
    // Questions can only describe the answer.
    about(cl.body, "X", used_y, false, false);
    if (chance(40)) about(cl.body, "X", used_y, false, false);
    return cl;
  }

  std::mt19937& rng_;
  std::set<std::string> seen_facts_;
  bool card_ = false;
};

}  // namespace

AspProgram random_program(std::mt19937& rng) { return Generator(rng).program(); }

bool parses(const Grammar& g, const Tokens& sentence, const DerivationContext& ctx) {
  DerivationContext c = ctx;
  try {
    g.parse_sentence(sentence, InternalForm{{}, Order::proc}, c);
    return true;
  } catch (const Error&) {
    return false;
  }
}

namespace {

// Punctuation first so that short completions are found before long ones,
// then content words, then function words that open further structure.
int rank(const Continuation& c) {
  if (c.category == "punctuation") return 0;
  if (c.category == "function") return 2;
  return 1;
}

bool search(const Grammar& g, Tokens& cur, const DerivationContext& ctx, std::size_t max_len,
            std::set<Tokens>& dead) {
  if (!cur.empty() && (cur.back() == "." || cur.back() == "?")) return parses(g, cur, ctx);
  if (cur.size() >= max_len || dead.count(cur)) return false;
  std::vector<Continuation> offers = g.lookahead(cur, ctx);
  std::stable_sort(offers.begin(), offers.end(),
                   [](const Continuation& a, const Continuation& b) { return rank(a) < rank(b); });
  for (const Continuation& c : offers) {
    for (const Tokens& form : c.forms) {
      const std::size_t n = cur.size();
      cur.insert(cur.end(), form.begin(), form.end());
      if (search(g, cur, ctx, max_len, dead)) return true;
      cur.resize(n);
    }
  }
  dead.insert(cur);
  return false;
}

}  // namespace

std::optional<Tokens> complete(const Grammar& g, const Tokens& prefix, const DerivationContext& ctx,
                               std::size_t max_extra) {
  Tokens cur = prefix;
  std::set<Tokens> dead;
  if (search(g, cur, ctx, prefix.size() + max_extra, dead)) return cur;
  return std::nullopt;
}

}  // namespace cnlasp::testing

namespace cnlasp::testing {

namespace {

using Assignment = std::map<std::string, std::string>;

void collect(const AspAtom& a, std::set<std::string>& vars, std::set<std::string>& consts) {
  for (const AspTerm& t : a.args) (t.variable ? vars : consts).insert(t.text);
}

std::string ground_text(const AspAtom& a, const Assignment& s) {
  AspAtom g = a;
  for (AspTerm& t : g.args) {
    if (t.variable) t = AspTerm{false, s.at(t.text)};
  }
  return to_string(g);
}

// Calls f for every assignment of `vars` over `consts`.
void each_assignment(const std::vector<std::string>& vars, const std::vector<std::string>& consts, Assignment& s,
                     std::size_t i, const std::function<void(const Assignment&)>& f) {
  if (i == vars.size()) {
    f(s);
    return;
  }
  for (const std::string& c : consts) {
    s[vars[i]] = c;
    each_assignment(vars, consts, s, i + 1, f);
  }
  s.erase(vars[i]);
}

struct RefRule {
  std::vector<std::string> pos, neg, head;
  bool constraint = false;
  bool card = false;
  std::optional<long> lower, upper;
  std::vector<std::pair<std::string, std::vector<std::string>>> elems;
};

bool subset_of(const std::vector<std::string>& xs, const std::set<std::string>& s) {
  return std::all_of(xs.begin(), xs.end(), [&](const std::string& x) { return s.count(x) != 0; });
}

}  // namespace

Reference reference_semantics(const AspProgram& p) {
  std::set<std::string> const_set;
  std::vector<std::vector<std::string>> clause_vars, card_vars;
  for (const AspClause& c : p.clauses) {
    std::set<std::string> vars, local;
    for (const AspAtom& a : c.head) collect(a, vars, const_set);
    for (const BodyLit& b : c.body) collect(b.atom, vars, const_set);
    if (c.card) {
      collect(c.card->lit, local, const_set);
      for (const AspAtom& a : c.card->conds) collect(a, local, const_set);
      for (const std::string& v : vars) local.erase(v);
    }
    clause_vars.emplace_back(vars.begin(), vars.end());
    card_vars.emplace_back(local.begin(), local.end());
  }
  const std::vector<std::string> consts(const_set.begin(), const_set.end());

  // Atoms that can possibly be true, by naive iteration to a fixpoint.
  std::set<std::string> upper;
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < p.clauses.size(); ++i) {
      const AspClause& c = p.clauses[i];
      Assignment s;
      each_assignment(clause_vars[i], consts, s, 0, [&](const Assignment& a) {
        for (const BodyLit& b : c.body) {
          if (!b.weak_neg && !upper.count(ground_text(b.atom, a))) return;
        }
        for (const AspAtom& h : c.head) grew |= upper.insert(ground_text(h, a)).second;
        if (c.card) {
          Assignment t = a;
          each_assignment(card_vars[i], consts, t, 0, [&](const Assignment& b) {
            for (const AspAtom& d : c.card->conds) {
              if (!upper.count(ground_text(d, b))) return;
            }
            grew |= upper.insert(ground_text(c.card->lit, b)).second;
          });
        }
      });
    }
  }

  Reference ref;
  std::vector<RefRule> rules;
  for (std::size_t i = 0; i < p.clauses.size(); ++i) {
    const AspClause& c = p.clauses[i];
    std::size_t n = 0;
    Assignment s;
    each_assignment(clause_vars[i], consts, s, 0, [&](const Assignment& a) {
      RefRule r;
      for (const BodyLit& b : c.body) (b.weak_neg ? r.neg : r.pos).push_back(ground_text(b.atom, a));
      if (!subset_of(r.pos, upper)) return;
      ++n;
      for (const AspAtom& h : c.head) r.head.push_back(ground_text(h, a));
      r.constraint = c.kind == AspClause::Kind::constraint;
      if (c.card) {
        r.card = true;
        r.lower = c.card->lower;
        r.upper = c.card->upper;
        Assignment t = a;
        each_assignment(card_vars[i], consts, t, 0, [&](const Assignment& b) {
          std::vector<std::string> conds;
          for (const AspAtom& d : c.card->conds) conds.push_back(ground_text(d, b));
          if (subset_of(conds, upper)) r.elems.emplace_back(ground_text(c.card->lit, b), conds);
        });
      }
      rules.push_back(std::move(r));
    });
    ref.instances.push_back(n);
  }

  const std::vector<std::string> atoms(upper.begin(), upper.end());
  if (atoms.size() > 22) throw std::runtime_error("reference semantics: too many atoms");
  auto set_of = [&](std::uint32_t m) {
    std::set<std::string> out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (m >> i & 1) out.insert(atoms[i]);
    }
    return out;
  };
  // Is t a model of the reduct of the program with respect to s?
  auto reduct_model = [&](const std::set<std::string>& t, const std::set<std::string>& s) {
    for (const RefRule& r : rules) {
      if (std::any_of(r.neg.begin(), r.neg.end(), [&](const std::string& x) { return s.count(x) != 0; })) continue;
      if (!subset_of(r.pos, t)) continue;
      if (r.constraint) return false;
      if (r.card) {
        for (const auto& [lit, conds] : r.elems) {
          if (s.count(lit) && subset_of(conds, t) && !t.count(lit)) return false;
        }
        continue;
      }
      if (std::none_of(r.head.begin(), r.head.end(), [&](const std::string& h) { return t.count(h) != 0; })) {
        return false;
      }
    }
    return true;
  };
  auto bounds_hold = [&](const std::set<std::string>& s) {
    for (const RefRule& r : rules) {
      if (!r.card || !subset_of(r.pos, s)) continue;
      if (std::any_of(r.neg.begin(), r.neg.end(), [&](const std::string& x) { return s.count(x) != 0; })) continue;
      long n = 0;
      for (const auto& [lit, conds] : r.elems) n += s.count(lit) && subset_of(conds, s);
      if ((r.lower && n < *r.lower) || (r.upper && n > *r.upper)) return false;
    }
    return true;
  };
  const std::uint32_t all = (std::uint32_t{1} << atoms.size()) - 1;
  for (std::uint32_t m = 0; m <= all; ++m) {
    const std::set<std::string> s = set_of(m);
    bool consistent = true;
    for (const std::string& a : s) {
      if (a[0] == '-' && s.count(a.substr(1))) consistent = false;
    }
    if (!consistent || !reduct_model(s, s) || !bounds_hold(s)) continue;
    bool minimal = true;
    for (std::uint32_t sub = (m - 1) & m; minimal && sub != m; sub = (sub - 1) & m) {
      if (reduct_model(set_of(sub), s)) minimal = false;
      if (sub == 0) break;
    }
    if (minimal) ref.sets.push_back(s);
  }
  std::sort(ref.sets.begin(), ref.sets.end());
  return ref;
}

}  // namespace cnlasp::testing
