// Bidirectional dictionary between word forms and ASP-side symbols.

#ifndef CNLASP_LEXICON_HPP_
#define CNLASP_LEXICON_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cnlasp/model.hpp"

namespace cnlasp {

enum class Category { pname, noun, iverb, tverb, adj, radj, det, cqnt, cond_marker, then_marker, neg_marker };
enum class Number { sg, pl, na };

const char* to_string(Category c);
std::optional<Category> category_from_string(std::string_view s);
const char* to_string(Number n);

struct LexEntry {
  Category category = Category::noun;
  std::vector<std::string> wform;
  Number num = Number::na;
  std::string symbol;
  std::optional<LitKind> kind;  // empty for function words

  bool operator==(const LexEntry&) const = default;
};

struct LexMatch {
  const LexEntry* entry = nullptr;
  std::size_t consumed = 0;
};

class Lexicon {
 public:
  Lexicon() = default;
  Lexicon(const Lexicon& o) : entries_(o.entries_) { reindex(); }
  Lexicon& operator=(const Lexicon& o) {
    entries_ = o.entries_;
    reindex();
    return *this;
  }
  Lexicon(Lexicon&&) = default;
  Lexicon& operator=(Lexicon&&) = default;

  // Throws Error("DuplicateEntry") for an exact repeat.
  void add(LexEntry e);

  // Entries whose word form matches tokens[at...], longest match first.
  std::vector<LexMatch> lookup_by_form(std::span<const std::string> tokens, std::size_t at) const;

  // Entries realising (category, symbol) in the requested number, in file
  // order. Number::na in an entry matches any request. The find_ variant
  // returns an empty set where lookup_ throws MissingSurfaceForm.
  std::vector<const LexEntry*> find_by_symbol(Category c, const std::string& symbol, Number num) const;
  std::vector<const LexEntry*> lookup_by_symbol(Category c, const std::string& symbol, Number num) const;

  // Category and literal kind of a content symbol, as needed by the ASP reader.
  std::optional<std::pair<Category, LitKind>> symbol_info(const std::string& symbol) const;

  std::vector<const LexEntry*> entries_of(Category c) const;
  const std::vector<LexEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  void reindex();

  std::vector<LexEntry> entries_;
  std::multimap<std::string, std::size_t> by_first_token_;
  std::multimap<std::pair<Category, std::string>, std::size_t> by_symbol_;
};

// Line format: `category number wform symbol literal-kind`, '#' comments,
// '+' joining multi-token forms. Throws LexiconSyntaxError / DuplicateEntry.
Lexicon load_lexicon(std::string_view source);
Lexicon load_lexicon_file(const std::string& path);

// The vocabulary shipped with the tool.
const Lexicon& default_lexicon();
std::string_view default_lexicon_source();

}  // namespace cnlasp

#endif  // CNLASP_LEXICON_HPP_
