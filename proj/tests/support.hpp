// Helpers shared by the unit tests and the acceptance binary.

#ifndef CNLASP_TESTS_SUPPORT_HPP_
#define CNLASP_TESTS_SUPPORT_HPP_

#include <random>
#include <string>

#include <optional>
#include <set>
#include <vector>

#include "cnlasp/grammar.hpp"
#include "cnlasp/model.hpp"

namespace cnlasp::testing {

// Contents of a file under fixtures/.
std::string fixture(const std::string& name);

// Collapses whitespace runs to one space and trims each line; drops blank
// lines.
std::string squash(const std::string& text);

// Parses one clause of ASP text.
AspClause clause(const std::string& text);

// Same clause list up to variable lettering, clause by clause in order.
bool same_modulo_lettering(const AspProgram& a, const AspProgram& b);

// Random program over the default vocabulary, restricted to constructs the
// reader can verbalise.
AspProgram random_program(std::mt19937& rng);

// A complete sentence starting with `prefix`, found by depth-first search
// over the offered continuations and confirmed by parse_sentence. Empty if
// none exists within `max_extra` further tokens.
std::optional<Tokens> complete(const Grammar& g, const Tokens& prefix, const DerivationContext& ctx,
                               std::size_t max_extra = 16);

// True iff parse_sentence accepts the tokens in the given context.
bool parses(const Grammar& g, const Tokens& sentence, const DerivationContext& ctx);

// Reference answer-set semantics written independently of the oracle:
// grounding over the full Herbrand universe, then the stable-model
// definition checked literally over every subset of the derivable atoms.
// Only usable on very small programs.
struct Reference {
  std::vector<std::set<std::string>> sets;
  // Ground instances per clause whose positive body is derivable.
  std::vector<std::size_t> instances;
};
Reference reference_semantics(const AspProgram& p);

}  // namespace cnlasp::testing

#endif  // CNLASP_TESTS_SUPPORT_HPP_
