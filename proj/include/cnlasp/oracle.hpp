// Reference answer-set semantics for small programs: relevant grounding
// followed by a brute-force stability check. Meant for tests and the `solve`
// command on toy inputs, not as a solver.

#ifndef CNLASP_ORACLE_HPP_
#define CNLASP_ORACLE_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cnlasp/model.hpp"

namespace cnlasp {

// One answer set as sorted ground literal texts, e.g. "-work(bob)".
using AnswerSet = std::set<std::string>;

struct OracleOptions {
  std::size_t atom_limit = 24;             // AtomLimitExceeded above this
  std::size_t instance_limit = 1'000'000;  // UniverseTooLarge above this
};

struct GroundProgram {
  std::vector<std::string> atoms;  // index -> literal text
  std::size_t rules = 0;
};

// Atoms that may become true, and the number of ground rule instances.
GroundProgram ground(const AspProgram& p, const OracleOptions& opts = {});

// All answer sets, in ascending order of their sorted atom lists.
std::vector<AnswerSet> answer_sets(const AspProgram& p, const OracleOptions& opts = {});

// Constants c with answer(c) in every answer set; nullopt when the program
// has no answer set.
std::optional<std::set<std::string>> cautious_answers(const std::vector<AnswerSet>& sets);

// Runs an external solver command (clingo-compatible output) on the program
// and collects the sets printed after "Answer:" lines. The program is passed
// as a temporary file appended to the command. Throws SolverFailed.
std::vector<AnswerSet> answer_sets_external(const AspProgram& p, const std::string& command);

}  // namespace cnlasp

#endif  // CNLASP_ORACLE_HPP_
