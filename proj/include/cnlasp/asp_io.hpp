// Translation between the internal format and answer set programs, and the
// textual ASP syntax.

#ifndef CNLASP_ASP_IO_HPP_
#define CNLASP_ASP_IO_HPP_

#include <string>
#include <string_view>

#include "cnlasp/lexicon.hpp"
#include "cnlasp/model.hpp"

namespace cnlasp {

class AspSyntaxError : public Error {
 public:
  AspSyntaxError(std::size_t line, const std::string& msg)
      : Error("AspSyntaxError", "line " + std::to_string(line) + ": " + msg), line(line) {}
  std::size_t line;
};

// Writer. Accepts either order. Throws UngroundFact and UnsafeClause.
AspProgram write_program(const InternalForm& form);

// Parses ASP text (facts, normal and disjunctive rules, constraints,
// cardinality heads, strong and weak negation, % comments).
AspProgram parse_asp(std::string_view text);

// Reader: reconstructs a gen-order internal form with one clause segment per
// ASP clause. Throws UnknownSymbol for predicates missing from the lexicon
// and UnverbalisableTerm for constructs no sentence can express.
InternalForm read_program(const AspProgram& program, const Lexicon& lex);

// Same clauses up to variable renaming, ordering of clauses, body literals,
// head disjuncts and cardinality conditions.
bool program_equiv(const AspProgram& a, const AspProgram& b);

// Order-insensitive canonical text of one clause, used by program_equiv.
std::string canonical_unordered(const AspClause& c);

}  // namespace cnlasp

#endif  // CNLASP_ASP_IO_HPP_
