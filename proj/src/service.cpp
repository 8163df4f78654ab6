#include "cnlasp/service.hpp"

#include <cctype>

#include "cnlasp/asp_io.hpp"
#include "cnlasp/planner.hpp"
#include "cnlasp/tokenizer.hpp"

namespace cnlasp {

namespace {

using nlohmann::json;

// Words of an unfinished sentence; punctuation is split off.
Tokens split_words(std::string_view text) {
  Tokens out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == ',' || c == '.' || c == '?') {
      flush();
      out.emplace_back(1, c);
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

json continuations_json(const std::vector<Continuation>& conts) {
  json arr = json::array();
  for (const Continuation& c : conts) arr.push_back({{"category", c.category}, {"forms", c.forms}});
  return arr;
}

std::string text_field(const json& req, const char* name) {
  if (!req.is_object() || !req.contains(name) || !req[name].is_string()) {
    throw Error("BadRequest", std::string("request needs a string field '") + name + "'");
  }
  return req[name].get<std::string>();
}

}  // namespace

Service::Service(Lexicon lex, ServiceOptions opts) : lex_(std::move(lex)), grammar_(lex_), opts_(std::move(opts)) {}

AspProgram Service::parse_program(std::string_view text) const {
  return write_program(grammar_.parse_specification(tokenize(text)));
}

std::string Service::verbalize_program(const AspProgram& p) const {
  const std::string text = detokenize(grammar_.generate(plan(read_program(p, lex_))));
  return text.empty() ? text : text + "\n";
}

std::string Service::verbalize(std::string_view asp) const { return verbalize_program(parse_asp(asp)); }

RoundtripReport Service::roundtrip(std::string_view text, const Verbaliser& verbaliser) const {
  RoundtripReport r;
  r.original = parse_program(text);
  r.cnl = verbaliser ? verbaliser(r.original) : verbalize_program(r.original);
  r.reparsed = parse_program(r.cnl);
  r.equivalent = program_equiv(r.original, r.reparsed);
  try {
    OracleOptions o;
    o.atom_limit = opts_.max_atoms;
    r.same_answer_sets = answer_sets(r.original, o) == answer_sets(r.reparsed, o);
    if (!*r.same_answer_sets) r.equivalent = false;
  } catch (const Error& e) {
    r.oracle_note = "oracle skipped: " + e.kind() + ": " + e.what();
  }
  return r;
}

std::vector<Continuation> Service::lookahead(const Tokens& prefix, std::string_view context) const {
  return grammar_.lookahead(prefix, grammar_.context_after(tokenize(context)));
}

SolveReport Service::solve(std::string_view asp) const {
  const AspProgram p = parse_asp(asp);
  OracleOptions o;
  o.atom_limit = opts_.max_atoms;
  SolveReport r;
  r.sets = answer_sets(p, o);
  r.answers = cautious_answers(r.sets);
  if (!opts_.solver.empty()) r.solver_agrees = answer_sets_external(p, opts_.solver) == r.sets;
  return r;
}

json error_json(const Error& e) {
  json j = {{"kind", e.kind()}, {"message", e.what()}};
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    j["sentence"] = pe->sentence;
    j["position"] = pe->position;
    j["expected"] = continuations_json(pe->expected);
  } else if (const auto* ae = dynamic_cast<const AspSyntaxError*>(&e)) {
    j["line"] = ae->line;
  } else if (const auto* ge = dynamic_cast<const GenerationError*>(&e)) {
    j["clause"] = ge->clause;
    j["item"] = ge->item;
  }
  return j;
}

std::string describe_error(const Error& e) {
  std::string s = e.kind() + ": " + e.what();
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    for (const Continuation& c : pe->expected) {
      s += "\n  " + c.category + ":";
      for (std::size_t i = 0; i < c.forms.size(); ++i) {
        s += (i ? ", " : " ") + detokenize(std::span<const std::string>(c.forms[i]));
      }
    }
  }
  return s;
}

Response handle(const Service& s, const std::string& op, const json& req) {
  try {
    if (op == "parse") return {200, {{"asp", s.parse(text_field(req, "text"))}}};
    if (op == "verbalize") return {200, {{"cnl", s.verbalize(text_field(req, "asp"))}}};
    if (op == "roundtrip") {
      const RoundtripReport r = s.roundtrip(text_field(req, "text"));
      json j = {{"equivalent", r.equivalent},
                {"original", to_string(r.original)},
                {"cnl", r.cnl},
                {"reparsed", to_string(r.reparsed)},
                {"same_answer_sets", nullptr},
                {"oracle_note", r.oracle_note}};
      if (r.same_answer_sets) j["same_answer_sets"] = *r.same_answer_sets;
      return {200, j};
    }
    if (op == "lookahead") {
      if (!req.is_object() || !req.contains("prefix")) throw Error("BadRequest", "request needs a field 'prefix'");
      Tokens prefix;
      if (req["prefix"].is_string()) prefix = split_words(req["prefix"].get<std::string>());
      else if (req["prefix"].is_array()) prefix = req["prefix"].get<Tokens>();
      else throw Error("BadRequest", "'prefix' must be a string or an array of words");
      const std::string context = req.contains("context") ? text_field(req, "context") : "";
      return {200, {{"continuations", continuations_json(s.lookahead(prefix, context))}}};
    }
    if (op == "solve") {
      const SolveReport r = s.solve(text_field(req, "asp"));
      json sets = json::array();
      for (const AnswerSet& a : r.sets) sets.push_back(a);
      json j = {{"answer_sets", sets}, {"answers", nullptr}};
      if (r.answers) j["answers"] = *r.answers;
      if (r.solver_agrees) j["solver_agrees"] = *r.solver_agrees;
      return {200, j};
    }
    if (op == "lexicon") {
      json entries = json::array();
      for (const LexEntry& e : s.lexicon().entries()) {
        entries.push_back({{"category", to_string(e.category)},
                           {"number", to_string(e.num)},
                           {"wform", e.wform},
                           {"symbol", e.symbol},
                           {"kind", e.kind ? to_string(*e.kind) : "none"}});
      }
      return {200, {{"entries", entries}}};
    }
    return {404, {{"kind", "UnknownOperation"}, {"message", "no operation '" + op + "'"}}};
  } catch (const Error& e) {
    return {400, error_json(e)};
  } catch (const json::exception& e) {
    return {400, {{"kind", "BadRequest"}, {"message", e.what()}}};
  }
}

}  // namespace cnlasp
