#include "cnlasp/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <unistd.h>

namespace cnlasp {

namespace {

using Subst = std::map<std::string, std::string>;
using Mask = std::uint64_t;

bool match(const AspAtom& pattern, const AspAtom& ground, Subst& s) {
  if (pattern.pred != ground.pred || pattern.strong_neg != ground.strong_neg ||
      pattern.args.size() != ground.args.size()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    const AspTerm& t = pattern.args[i];
    if (!t.variable) {
      if (t.text != ground.args[i].text) return false;
      continue;
    }
    auto [it, fresh] = s.emplace(t.text, ground.args[i].text);
    if (!fresh && it->second != ground.args[i].text) return false;
  }
  return true;
}

std::optional<AspAtom> instantiate(const AspAtom& a, const Subst& s) {
  AspAtom out = a;
  for (AspTerm& t : out.args) {
    if (!t.variable) continue;
    auto it = s.find(t.text);
    if (it == s.end()) return std::nullopt;
    t = AspTerm{false, it->second};
  }
  return out;
}

struct GroundRule {
  std::vector<int> head;  // disjuncts
  std::vector<int> pos, neg;
  bool constraint = false;
  // Cardinality head: element literal and the conditions it depends on.
  bool card = false;
  std::optional<long> lower, upper;
  std::vector<std::pair<int, std::vector<int>>> elems;
};

class Grounder {
 public:
  Grounder(const AspProgram& p, const OracleOptions& o) : prog_(p), opts_(o) {}

  void run() {
    bool changed = true;
    while (changed) {
      changed = false;
      rules_.clear();
      for (const AspClause& c : prog_.clauses) changed |= clause(c);
    }
  }

  std::vector<std::string> atom_texts() const { return texts_; }
  const std::vector<GroundRule>& rules() const { return rules_; }
  std::vector<int> facts() const {
    std::vector<int> out;
    for (const AspClause& c : prog_.clauses) {
      if (c.kind == AspClause::Kind::fact) out.push_back(index_.at(to_string(c.head[0])));
    }
    return out;
  }

 private:
  int intern(const AspAtom& a, bool& changed) {
    const std::string t = to_string(a);
    auto [it, fresh] = index_.emplace(t, static_cast<int>(texts_.size()));
    if (fresh) {
      texts_.push_back(t);
      by_pred_[{a.pred, a.strong_neg}].push_back(a);
      changed = true;
    }
    return it->second;
  }

  int known(const AspAtom& a) const {
    auto it = index_.find(to_string(a));
    return it == index_.end() ? -1 : it->second;
  }

  // Substitutions making every positive literal in `lits` derivable.
  void join(const std::vector<const AspAtom*>& lits, std::size_t i, Subst& s, std::vector<Subst>& out) const {
    if (out.size() > opts_.instance_limit) {
      throw Error("UniverseTooLarge", "more than " + std::to_string(opts_.instance_limit) + " ground instances");
    }
    if (i == lits.size()) {
      out.push_back(s);
      return;
    }
    auto it = by_pred_.find({lits[i]->pred, lits[i]->strong_neg});
    if (it == by_pred_.end()) return;
    const std::vector<AspAtom> candidates = it->second;
    for (const AspAtom& g : candidates) {
      Subst t = s;
      if (match(*lits[i], g, t)) join(lits, i + 1, t, out);
    }
  }

  AspAtom ground_or_throw(const AspAtom& a, const Subst& s, const AspClause& c) const {
    auto g = instantiate(a, s);
    if (!g) throw Error("UnsafeClause", "clause '" + to_string(c) + "' is not safe");
    return *g;
  }

  bool clause(const AspClause& c) {
    bool changed = false;
    std::vector<const AspAtom*> pos;
    for (const BodyLit& b : c.body) {
      if (!b.weak_neg) pos.push_back(&b.atom);
    }
    std::vector<Subst> substs;
    Subst empty;
    join(pos, 0, empty, substs);
    for (const Subst& s : substs) {
      GroundRule r;
      for (const BodyLit& b : c.body) {
        const AspAtom g = ground_or_throw(b.atom, s, c);
        if (b.weak_neg) {
          const int k = known(g);
          if (k >= 0) r.neg.push_back(k);  // underivable atoms are false anyway
        } else {
          r.pos.push_back(known(g));
        }
      }
      if (c.kind == AspClause::Kind::constraint) {
        r.constraint = true;
      } else if (c.card) {
        r.card = true;
        r.lower = c.card->lower;
        r.upper = c.card->upper;
        std::vector<const AspAtom*> conds;
        for (const AspAtom& a : c.card->conds) conds.push_back(&a);
        std::vector<Subst> locals;
        Subst t = s;
        join(conds, 0, t, locals);
        for (const Subst& l : locals) {
          const int lit = intern(ground_or_throw(c.card->lit, l, c), changed);
          std::vector<int> cs;
          for (const AspAtom& a : c.card->conds) cs.push_back(known(ground_or_throw(a, l, c)));
          r.elems.emplace_back(lit, std::move(cs));
        }
      } else {
        for (const AspAtom& h : c.head) r.head.push_back(intern(ground_or_throw(h, s, c), changed));
      }
      rules_.push_back(std::move(r));
      if (rules_.size() > opts_.instance_limit) {
        throw Error("UniverseTooLarge", "more than " + std::to_string(opts_.instance_limit) + " ground instances");
      }
    }
    return changed;
  }

  const AspProgram& prog_;
  const OracleOptions& opts_;
  std::map<std::string, int> index_;
  std::vector<std::string> texts_;
  std::map<std::pair<std::string, bool>, std::vector<AspAtom>> by_pred_;
  std::vector<GroundRule> rules_;
};

Mask bits(const std::vector<int>& v) {
  Mask m = 0;
  for (int i : v) m |= Mask{1} << i;
  return m;
}

struct Compiled {
  Mask head, pos, neg;
  bool constraint, card;
  std::optional<long> lower, upper;
  std::vector<std::pair<int, Mask>> elems;
};

class Checker {
 public:
  Checker(const std::vector<GroundRule>& rules, const std::vector<std::string>& texts) {
    for (const GroundRule& r : rules) {
      Compiled c{bits(r.head), bits(r.pos), bits(r.neg), r.constraint, r.card, r.lower, r.upper, {}};
      for (const auto& [lit, conds] : r.elems) c.elems.emplace_back(lit, bits(conds));
      rules_.push_back(std::move(c));
    }
    std::map<std::string, int> idx;
    for (std::size_t i = 0; i < texts.size(); ++i) idx[texts[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < texts.size(); ++i) {
      if (texts[i][0] != '-') continue;
      auto it = idx.find(texts[i].substr(1));
      if (it != idx.end()) complements_.emplace_back(static_cast<int>(i), it->second);
    }
  }

  bool answer_set(Mask s, Mask facts) const {
    for (auto [a, b] : complements_) {
      if ((s >> a & 1) && (s >> b & 1)) return false;
    }
    for (const Compiled& r : rules_) {
      const bool body = (r.pos & s) == r.pos && (r.neg & s) == 0;
      if (!body) continue;
      if (r.constraint) return false;
      if (r.card) {
        long n = 0;
        for (const auto& [lit, conds] : r.elems) {
          if ((s >> lit & 1) && (conds & s) == conds) ++n;
        }
        if ((r.lower && n < *r.lower) || (r.upper && n > *r.upper)) return false;
      }
    }
    if (!model_of_reduct(s, s)) return false;
    // Minimality: no proper subset containing the facts is a model.
    const Mask free = s & ~facts;
    if (free == 0) return true;
    for (Mask sub = (free - 1) & free;; sub = (sub - 1) & free) {
      if (model_of_reduct(sub | facts, s)) return false;
      if (sub == 0) break;
    }
    return true;
  }

 private:
  // Is t a model of the reduct of the program with respect to s?
  bool model_of_reduct(Mask t, Mask s) const {
    for (const Compiled& r : rules_) {
      if (r.constraint || (r.neg & s) != 0 || (r.pos & t) != r.pos) continue;
      if (r.card) {
        // Chosen elements must be supported like ordinary rules.
        for (const auto& [lit, conds] : r.elems) {
          if ((s >> lit & 1) && (conds & t) == conds && !(t >> lit & 1)) return false;
        }
        continue;
      }
      if ((r.head & t) == 0) return false;
    }
    return true;
  }

  std::vector<Compiled> rules_;
  std::vector<std::pair<int, int>> complements_;
};

}  // namespace

GroundProgram ground(const AspProgram& p, const OracleOptions& opts) {
  Grounder g(p, opts);
  g.run();
  return {g.atom_texts(), g.rules().size()};
}

std::vector<AnswerSet> answer_sets(const AspProgram& p, const OracleOptions& opts) {
  Grounder g(p, opts);
  g.run();
  const auto texts = g.atom_texts();
  const std::size_t limit = std::min<std::size_t>(opts.atom_limit, 62);
  if (texts.size() > limit) {
    throw Error("AtomLimitExceeded", "grounding has " + std::to_string(texts.size()) + " atoms, limit is " +
                                         std::to_string(limit));
  }
  Checker checker(g.rules(), texts);
  const Mask facts = bits(g.facts());
  const Mask all = texts.size() == 64 ? ~Mask{0} : (Mask{1} << texts.size()) - 1;
  const Mask free = all & ~facts;
  std::vector<AnswerSet> out;
  for (Mask sub = 0;; sub = (sub - free) & free) {
    const Mask s = sub | facts;
    if (checker.answer_set(s, facts)) {
      AnswerSet as;
      for (std::size_t i = 0; i < texts.size(); ++i) {
        if (s >> i & 1) as.insert(texts[i]);
      }
      out.push_back(std::move(as));
    }
    if (sub == free) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::set<std::string>> cautious_answers(const std::vector<AnswerSet>& sets) {
  if (sets.empty()) return std::nullopt;
  auto answers = [](const AnswerSet& s) {
    std::set<std::string> out;
    for (const std::string& a : s) {
      if (a.rfind("answer(", 0) == 0 && a.back() == ')') out.insert(a.substr(7, a.size() - 8));
    }
    return out;
  };
  std::set<std::string> common = answers(sets.front());
  for (const AnswerSet& s : sets) {
    std::set<std::string> here = answers(s), keep;
    std::set_intersection(common.begin(), common.end(), here.begin(), here.end(), std::inserter(keep, keep.end()));
    common = std::move(keep);
  }
  return common;
}

std::vector<AnswerSet> answer_sets_external(const AspProgram& p, const std::string& command) {
  namespace fs = std::filesystem;
  std::string path = (fs::temp_directory_path() / "cnlasp-XXXXXX.lp").string();
  const int fd = mkstemps(path.data(), 3);
  if (fd < 0) throw Error("SolverFailed", "cannot create temporary file");
  close(fd);
  {
    std::ofstream out(path);
    out << to_string(p);
  }
  const std::string cmd = command + " 0 " + path + " 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) {
    fs::remove(path);
    throw Error("SolverFailed", "cannot run '" + command + "'");
  }
  std::string output;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe.get())) output.append(buf, n);
  pipe.reset();
  fs::remove(path);

  std::vector<AnswerSet> sets;
  std::istringstream in(output);
  std::string line;
  bool next_is_set = false;
  bool saw_result = false;
  while (std::getline(in, line)) {
    if (next_is_set) {
      AnswerSet s;
      std::istringstream atoms(line);
      std::string a;
      while (atoms >> a) s.insert(a);
      sets.push_back(std::move(s));
      next_is_set = false;
    } else if (line.rfind("Answer:", 0) == 0) {
      next_is_set = true;
    } else if (line == "SATISFIABLE" || line == "UNSATISFIABLE") {
      saw_result = true;
    }
  }
  if (!saw_result) throw Error("SolverFailed", "no result from '" + command + "'");
  std::sort(sets.begin(), sets.end());
  return sets;
}

}  // namespace cnlasp
