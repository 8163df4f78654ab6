#include "cnlasp/tokenizer.hpp"

#include <algorithm>
#include <cctype>

#include "cnlasp/model.hpp"

namespace cnlasp {

bool is_number_token(std::string_view tok) {
  return !tok.empty() && std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); });
}

bool is_variable_token(std::string_view tok) {
  return tok.size() == 1 && std::isupper(static_cast<unsigned char>(tok[0]));
}

bool is_punctuation_token(std::string_view tok) { return tok == "." || tok == "?" || tok == ","; }

std::vector<Tokens> tokenize(std::string_view text) {
  std::vector<Tokens> sentences;
  Tokens cur;
  std::string word;
  auto flush_word = [&] {
    if (!word.empty()) cur.push_back(std::move(word));
    word.clear();
  };
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      flush_word();
    } else if (ch == '.' || ch == '?' || ch == ',') {
      flush_word();
      cur.emplace_back(1, ch);
      if (ch != ',') {
        sentences.push_back(std::move(cur));
        cur.clear();
      }
    } else {
      word += ch;
    }
  }
  flush_word();
  if (!cur.empty()) {
    throw Error("UnterminatedSentence", "sentence " + std::to_string(sentences.size() + 1) +
                                            " is not terminated by '.' or '?'");
  }
  return sentences;
}

std::string detokenize(std::span<const std::string> tokens) {
  std::string out;
  bool line_start = true;
  for (const std::string& t : tokens) {
    if (!line_start && !is_punctuation_token(t)) out += ' ';
    out += t;
    line_start = false;
    if (t == "." || t == "?") {
      out += '\n';
      line_start = true;
    }
  }
  if (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

std::string detokenize(const std::vector<Tokens>& sentences) {
  Tokens flat;
  for (const Tokens& s : sentences) flat.insert(flat.end(), s.begin(), s.end());
  return detokenize(std::span<const std::string>(flat));
}

}  // namespace cnlasp
