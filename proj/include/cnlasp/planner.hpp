// Sentence planner: reorganises a gen-order form read from ASP so that the
// grammar verbalises it with coordination, enumeration and variable names.

#ifndef CNLASP_PLANNER_HPP_
#define CNLASP_PLANNER_HPP_

#include <cstddef>
#include <vector>

#include "cnlasp/model.hpp"

namespace cnlasp {

// Adjacent one-relation facts about the same subject whose relations take
// the same number of arguments are merged, at most three at a time. "is a"
// facts stay on their own.
InternalForm plan_coordination(const InternalForm& form);

// Adjacent facts relating the same subject by the same positive binary
// relation to proper names, or to integers of one noun, are merged into one
// enumeration.
InternalForm plan_enumeration(const InternalForm& form);

// Gives variable names X, Y, Z, U, V, W to same-noun variables of a rule,
// constraint or question. Throws NameExhaustion past six.
InternalForm insert_variable_names(const InternalForm& form);

// One noun phrase occurrence: first mentions become indefinite (or name a
// constant), later ones definite.
struct SeedMark {
  std::size_t clause = 0;
  VarId var = 0;
  bool definite = false;
  bool operator==(const SeedMark&) const = default;
};
std::vector<SeedMark> seed_antecedents(const InternalForm& form);

// insert_variable_names, then plan_enumeration, then plan_coordination.
InternalForm plan(const InternalForm& form);

}  // namespace cnlasp

#endif  // CNLASP_PLANNER_HPP_
