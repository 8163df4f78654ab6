// Command-line front end: parse, verbalize, roundtrip, lookahead, solve,
// serve.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "cnlasp/service.hpp"
#include "cnlasp/tokenizer.hpp"

using namespace cnlasp;

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw Error("InputError", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Translate between controlled English and answer set programs."};
  app.require_subcommand(1);
  std::string lexicon_path;
  std::string format = "text";
  std::string solver;
  std::size_t max_atoms = 24;
  app.add_option("--lexicon", lexicon_path, "Lexicon file (default: built-in vocabulary)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--solver", solver, "External solver command for cross-checking answer sets");
  app.add_option("--max-atoms", max_atoms, "Atom limit of the built-in oracle");

  std::string input = "-";
  auto* parse = app.add_subcommand("parse", "CNL text to ASP");
  parse->add_option("file", input, "Input file, - for stdin");
  auto* verbalize = app.add_subcommand("verbalize", "ASP to CNL text");
  verbalize->add_option("file", input, "Input file, - for stdin");
  auto* roundtrip = app.add_subcommand("roundtrip", "Check parse(verbalize(parse(text))) against parse(text)");
  roundtrip->add_option("file", input, "Input file, - for stdin");
  auto* solve = app.add_subcommand("solve", "Answer sets and query answers of an ASP program");
  solve->add_option("file", input, "Input file, - for stdin");
  std::vector<std::string> prefix;
  std::string context_path;
  auto* lookahead = app.add_subcommand("lookahead", "Admissible next words after a sentence prefix");
  lookahead->add_option("words", prefix, "Words typed so far");
  lookahead->add_option("--context", context_path, "File with the preceding sentences");
  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--host", host);
  serve->add_option("--port", port);

  CLI11_PARSE(app, argc, argv);
  const bool json_out = format == "json";

  try {
    Lexicon lex = lexicon_path.empty() ? default_lexicon() : load_lexicon_file(lexicon_path);
    Service service(std::move(lex), ServiceOptions{max_atoms, solver});

    if (serve->parsed()) {
      HttpServer server(service);
      const int bound = server.bind(host, port);
      std::cerr << "listening on " << host << ":" << bound << "\n";
      server.listen();
      return 0;
    }

    std::string op;
    nlohmann::json req;
    if (parse->parsed()) {
      op = "parse";
      req = {{"text", read_input(input)}};
    } else if (verbalize->parsed()) {
      op = "verbalize";
      req = {{"asp", read_input(input)}};
    } else if (roundtrip->parsed()) {
      op = "roundtrip";
      req = {{"text", read_input(input)}};
    } else if (solve->parsed()) {
      op = "solve";
      req = {{"asp", read_input(input)}};
    } else {
      op = "lookahead";
      req = {{"prefix", prefix}};
      if (!context_path.empty()) req["context"] = read_input(context_path);
    }

    const Response r = handle(service, op, req);
    if (json_out) {
      std::cout << r.body.dump() << "\n";
      if (r.status != 200) return 1;
      return op == "roundtrip" && !r.body["equivalent"].get<bool>() ? 1 : 0;
    }
    if (r.status != 200) {
      std::cerr << r.body["kind"].get<std::string>() << ": " << r.body["message"].get<std::string>() << "\n";
      if (r.body.contains("expected")) {
        for (const auto& c : r.body["expected"]) {
          std::cerr << "  " << c["category"].get<std::string>() << ":";
          bool first = true;
          for (const auto& f : c["forms"]) {
            std::cerr << (first ? " " : ", ") << detokenize(f.get<Tokens>());
            first = false;
          }
          std::cerr << "\n";
        }
      }
      return 1;
    }
    const auto& b = r.body;
    if (op == "parse") {
      std::cout << b["asp"].get<std::string>();
    } else if (op == "verbalize") {
      std::cout << b["cnl"].get<std::string>();
    } else if (op == "roundtrip") {
      std::cout << "equivalent: " << (b["equivalent"].get<bool>() ? "true" : "false") << "\n";
      if (b["same_answer_sets"].is_null()) std::cout << b["oracle_note"].get<std::string>() << "\n";
      else std::cout << "same answer sets: " << (b["same_answer_sets"].get<bool>() ? "true" : "false") << "\n";
      std::cout << "--- verbalisation\n" << b["cnl"].get<std::string>();
      return b["equivalent"].get<bool>() ? 0 : 1;
    } else if (op == "solve") {
      std::size_t i = 0;
      for (const auto& s : b["answer_sets"]) {
        std::cout << "Answer " << ++i << ":";
        for (const auto& a : s) std::cout << " " << a.get<std::string>();
        std::cout << "\n";
      }
      if (i == 0) std::cout << "no answer set\n";
      if (!b["answers"].is_null()) {
        std::cout << "answers:";
        for (const auto& a : b["answers"]) std::cout << " " << a.get<std::string>();
        std::cout << "\n";
      }
      if (b.contains("solver_agrees")) {
        std::cout << "external solver agrees: " << (b["solver_agrees"].get<bool>() ? "true" : "false") << "\n";
      }
    } else {
      for (const auto& c : b["continuations"]) {
        std::cout << c["category"].get<std::string>() << ":";
        bool first = true;
        for (const auto& f : c["forms"]) {
          std::cout << (first ? " " : ", ") << detokenize(f.get<Tokens>());
          first = false;
        }
        std::cout << "\n";
      }
    }
    return 0;
  } catch (const Error& e) {
    if (json_out) std::cout << error_json(e).dump() << "\n";
    else std::cerr << describe_error(e) << "\n";
    return 1;
  }
}
