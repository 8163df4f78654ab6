// Operations behind the command-line tool and the HTTP API. Both front ends
// call `handle`, so their JSON output is the same byte for byte.

#ifndef CNLASP_SERVICE_HPP_
#define CNLASP_SERVICE_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cnlasp/grammar.hpp"
#include "cnlasp/lexicon.hpp"
#include "cnlasp/model.hpp"
#include "cnlasp/oracle.hpp"

namespace cnlasp {

struct ServiceOptions {
  std::size_t max_atoms = 24;
  std::string solver;  // external solver command, empty for none
};

struct RoundtripReport {
  AspProgram original;
  std::string cnl;
  AspProgram reparsed;
  bool equivalent = false;
  std::optional<bool> same_answer_sets;  // empty when the oracle was skipped
  std::string oracle_note;
};

struct SolveReport {
  std::vector<AnswerSet> sets;
  std::optional<std::set<std::string>> answers;
  std::optional<bool> solver_agrees;  // only with an external solver
};

class Service {
 public:
  explicit Service(Lexicon lex, ServiceOptions opts = {});
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  const Lexicon& lexicon() const { return lex_; }
  const Grammar& grammar() const { return grammar_; }
  const ServiceOptions& options() const { return opts_; }

  AspProgram parse_program(std::string_view text) const;
  std::string parse(std::string_view text) const { return to_string(parse_program(text)); }

  std::string verbalize_program(const AspProgram& p) const;
  std::string verbalize(std::string_view asp) const;

  // The verbaliser can be replaced, which the tests use as a negative control.
  using Verbaliser = std::function<std::string(const AspProgram&)>;
  RoundtripReport roundtrip(std::string_view text, const Verbaliser& verbaliser = {}) const;

  // Continuations of `prefix`, the words typed so far of the sentence after
  // the complete sentences in `context`.
  std::vector<Continuation> lookahead(const Tokens& prefix, std::string_view context = "") const;

  SolveReport solve(std::string_view asp) const;

 private:
  Lexicon lex_;
  Grammar grammar_;
  ServiceOptions opts_;
};

struct Response {
  int status = 200;
  nlohmann::json body;
};

// Dispatches one request. `op` is parse, verbalize, roundtrip, lookahead,
// solve or lexicon. Errors become status 400 with {kind, message, ...}.
Response handle(const Service& s, const std::string& op, const nlohmann::json& request);

nlohmann::json error_json(const Error& e);

// Human-readable diagnostic for the command line.
std::string describe_error(const Error& e);

// HTTP front end: POST /parse, /verbalize, /roundtrip, /lookahead, /solve
// and GET /lexicon.
class HttpServer {
 public:
  explicit HttpServer(const Service& s);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Returns the bound port (port 0 picks a free one). Throws PortInUse.
  int bind(const std::string& host, int port);
  // Blocks until stop() is called from another thread.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cnlasp

#endif  // CNLASP_SERVICE_HPP_
