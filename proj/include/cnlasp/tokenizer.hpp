// Sentence splitting and rendering of token sequences.

#ifndef CNLASP_TOKENIZER_HPP_
#define CNLASP_TOKENIZER_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cnlasp {

using Tokens = std::vector<std::string>;

// Splits text into sentences ending in '.' or '?'. Throws
// Error("UnterminatedSentence") when words trail the last terminator.
std::vector<Tokens> tokenize(std::string_view text);

// One sentence per line, no space before '.', '?' or ','.
std::string detokenize(std::span<const std::string> tokens);
std::string detokenize(const std::vector<Tokens>& sentences);

bool is_number_token(std::string_view tok);
// A single uppercase letter. Whether it really names a variable is up to
// the grammar ("A" also starts sentences).
bool is_variable_token(std::string_view tok);
bool is_punctuation_token(std::string_view tok);

}  // namespace cnlasp

#endif  // CNLASP_TOKENIZER_HPP_
