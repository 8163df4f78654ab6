// The bidirectional grammar. One set of rules either consumes tokens and
// builds the internal format (proc mode) or consumes the internal format and
// emits tokens (gen mode); only the preterminals that add or remove items
// differ between the modes.

#ifndef CNLASP_GRAMMAR_HPP_
#define CNLASP_GRAMMAR_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "cnlasp/anaphora.hpp"
#include "cnlasp/lexicon.hpp"
#include "cnlasp/model.hpp"
#include "cnlasp/tokenizer.hpp"

namespace cnlasp {

enum class Mode { proc, gen };

// A group of admissible next word forms. `category` is a lexical category,
// or one of "function", "punctuation", "number", "variable".
struct Continuation {
  std::string category;
  std::vector<Tokens> forms;
  bool operator==(const Continuation&) const = default;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t sentence, std::size_t position, std::vector<Continuation> expected, const std::string& msg)
      : Error("ParseError", msg), sentence(sentence), position(position), expected(std::move(expected)) {}
  std::size_t sentence;
  std::size_t position;
  std::vector<Continuation> expected;
};

class GenerationError : public Error {
 public:
  GenerationError(std::size_t clause, std::string item, const std::string& msg)
      : Error("GenerationError", msg), clause(clause), item(std::move(item)) {}
  std::size_t clause;
  std::string item;
};

// State threaded from one sentence (or clause) to the next.
struct DerivationContext {
  AntecedentStore ante;
  VarId next_var = 0;
};

class Grammar {
 public:
  explicit Grammar(const Lexicon& lex);

  const Lexicon& lexicon() const { return lex_; }

  // Parses one sentence and prepends its items (proc order) to cl_in.
  // Throws ParseError; `sentence` in the error is 0.
  InternalForm parse_sentence(const Tokens& tokens, const InternalForm& cl_in, DerivationContext& ctx) const;

  // Starts from the empty form and threads the context through every
  // sentence. Result is in proc order.
  InternalForm parse_specification(const std::vector<Tokens>& sentences) const;

  // Context after parsing `sentences`, for lookahead inside a document.
  DerivationContext context_after(const std::vector<Tokens>& sentences) const;

  struct Generated {
    Tokens tokens;
    std::vector<Item> rest;
  };
  // Verbalises the clause segment at the front of cl_in (gen order). An
  // empty cl_in yields no tokens and rest == cl_in. Throws GenerationError,
  // or MissingSurfaceForm when the only obstacle was a missing word form.
  Generated generate_sentence(const std::vector<Item>& cl_in, DerivationContext& ctx, std::size_t clause_index = 0) const;

  // Verbalises a whole planned gen-order form, one token sequence per clause.
  std::vector<Tokens> generate(const InternalForm& form) const;

  // Word forms with which some rule extends prefix; empty for a dead prefix.
  std::vector<Continuation> lookahead(const Tokens& prefix, const DerivationContext& ctx) const;

  // Word forms of `c`, longest first.
  const std::vector<const LexEntry*>& entries_by_length(Category c) const;

 private:
  const Lexicon& lex_;
  std::map<Category, std::vector<const LexEntry*>> by_category_;
};

}  // namespace cnlasp

#endif  // CNLASP_GRAMMAR_HPP_
