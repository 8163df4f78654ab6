#include "cnlasp/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

namespace cnlasp {

namespace {

constexpr std::pair<Category, const char*> kCategoryNames[] = {
    {Category::pname, "pname"},          {Category::noun, "noun"},
    {Category::iverb, "iverb"},          {Category::tverb, "tverb"},
    {Category::adj, "adj"},              {Category::radj, "radj"},
    {Category::det, "det"},              {Category::cqnt, "cqnt"},
    {Category::cond_marker, "cond-marker"}, {Category::then_marker, "then-marker"},
    {Category::neg_marker, "neg-marker"},
};

bool is_content(Category c) {
  return c == Category::pname || c == Category::noun || c == Category::iverb || c == Category::tverb ||
         c == Category::adj || c == Category::radj;
}

}  // namespace

const char* to_string(Category c) {
  for (auto [cat, name] : kCategoryNames) {
    if (cat == c) return name;
  }
  return "?";
}

std::optional<Category> category_from_string(std::string_view s) {
  for (auto [cat, name] : kCategoryNames) {
    if (s == name) return cat;
  }
  return std::nullopt;
}

const char* to_string(Number n) {
  switch (n) {
    case Number::sg: return "sg";
    case Number::pl: return "pl";
    case Number::na: return "n/a";
  }
  return "?";
}

void Lexicon::add(LexEntry e) {
  if (std::find(entries_.begin(), entries_.end(), e) != entries_.end()) {
    std::string form;
    for (const auto& t : e.wform) form += (form.empty() ? "" : "+") + t;
    throw Error("DuplicateEntry", "duplicate lexicon entry '" + form + "' (" + to_string(e.category) + ")");
  }
  entries_.push_back(std::move(e));
  const std::size_t i = entries_.size() - 1;
  by_first_token_.emplace(entries_[i].wform.front(), i);
  by_symbol_.emplace(std::make_pair(entries_[i].category, entries_[i].symbol), i);
}

void Lexicon::reindex() {
  by_first_token_.clear();
  by_symbol_.clear();
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    by_first_token_.emplace(entries_[i].wform.front(), i);
    by_symbol_.emplace(std::make_pair(entries_[i].category, entries_[i].symbol), i);
  }
}

std::vector<LexMatch> Lexicon::lookup_by_form(std::span<const std::string> tokens, std::size_t at) const {
  std::vector<LexMatch> out;
  if (at >= tokens.size()) return out;
  auto [lo, hi] = by_first_token_.equal_range(tokens[at]);
  for (auto it = lo; it != hi; ++it) {
    const LexEntry& e = entries_[it->second];
    if (at + e.wform.size() > tokens.size()) continue;
    if (std::equal(e.wform.begin(), e.wform.end(), tokens.begin() + static_cast<std::ptrdiff_t>(at))) {
      out.push_back({&e, e.wform.size()});
    }
  }
  std::stable_sort(out.begin(), out.end(), [&](const LexMatch& x, const LexMatch& y) {
    if (x.consumed != y.consumed) return x.consumed > y.consumed;
    return x.entry < y.entry;
  });
  return out;
}

std::vector<const LexEntry*> Lexicon::find_by_symbol(Category c, const std::string& symbol, Number num) const {
  std::vector<std::size_t> idx;
  auto [lo, hi] = by_symbol_.equal_range({c, symbol});
  for (auto it = lo; it != hi; ++it) {
    const LexEntry& e = entries_[it->second];
    if (e.num == num || e.num == Number::na || num == Number::na) idx.push_back(it->second);
  }
  std::sort(idx.begin(), idx.end());
  std::vector<const LexEntry*> out;
  for (std::size_t i : idx) out.push_back(&entries_[i]);
  return out;
}

std::vector<const LexEntry*> Lexicon::lookup_by_symbol(Category c, const std::string& symbol, Number num) const {
  auto out = find_by_symbol(c, symbol, num);
  if (out.empty()) {
    throw Error("MissingSurfaceForm", "no " + std::string(to_string(c)) + " (" + to_string(num) +
                                          ") word form for symbol '" + symbol + "'");
  }
  return out;
}

std::optional<std::pair<Category, LitKind>> Lexicon::symbol_info(const std::string& symbol) const {
  for (const LexEntry& e : entries_) {
    if (e.symbol == symbol && e.kind && is_content(e.category)) return std::make_pair(e.category, *e.kind);
  }
  return std::nullopt;
}

std::vector<const LexEntry*> Lexicon::entries_of(Category c) const {
  std::vector<const LexEntry*> out;
  for (const LexEntry& e : entries_) {
    if (e.category == c) out.push_back(&e);
  }
  return out;
}

Lexicon load_lexicon(std::string_view source) {
  static const std::regex kSymbol("[a-z][a-z0-9_]*");
  Lexicon lex;
  std::istringstream in{std::string(source)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> f;
    for (std::string w; fields >> w;) f.push_back(w);
    if (f.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw Error("LexiconSyntaxError", "lexicon line " + std::to_string(lineno) + ": " + why);
    };
    if (f.size() != 5) fail("expected 5 fields, got " + std::to_string(f.size()));
    LexEntry e;
    auto cat = category_from_string(f[0]);
    if (!cat) fail("unknown category '" + f[0] + "'");
    e.category = *cat;
    if (f[1] == "sg") e.num = Number::sg;
    else if (f[1] == "pl") e.num = Number::pl;
    else if (f[1] == "n/a") e.num = Number::na;
    else fail("unknown number '" + f[1] + "'");
    std::string part;
    std::istringstream wf(f[2]);
    while (std::getline(wf, part, '+')) {
      if (part.empty()) fail("empty token in word form '" + f[2] + "'");
      e.wform.push_back(part);
    }
    if (e.wform.empty()) fail("empty word form");
    e.symbol = f[3];
    if (!std::regex_match(e.symbol, kSymbol)) fail("symbol '" + e.symbol + "' is not an ASP identifier");
    if (f[4] != "none") {
      e.kind = lit_kind_from_string(f[4]);
      if (!e.kind) fail("unknown literal kind '" + f[4] + "'");
    }
    if (is_content(e.category) != e.kind.has_value()) fail("literal kind does not fit category " + f[0]);
    lex.add(std::move(e));
  }
  return lex;
}

Lexicon load_lexicon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IOError", "cannot read lexicon file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_lexicon(ss.str());
}

const Lexicon& default_lexicon() {
  static const Lexicon lex = load_lexicon(default_lexicon_source());
  return lex;
}

}  // namespace cnlasp
