#include <gtest/gtest.h>

#include <random>

#include "cnlasp/asp_io.hpp"
#include "cnlasp/oracle.hpp"
#include "support.hpp"

using namespace cnlasp;
using cnlasp::testing::fixture;
using cnlasp::testing::reference_semantics;

namespace {

std::vector<AnswerSet> sets(const std::string& asp) { return answer_sets(parse_asp(asp)); }

std::string error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return "";
}

}  // namespace

TEST(AnswerSets, SingleFact) { EXPECT_EQ(sets("a."), (std::vector<AnswerSet>{{"a"}})); }

TEST(AnswerSets, TextbookCases) {
  EXPECT_EQ(sets("a :- not b. b :- not a."), (std::vector<AnswerSet>{{"a"}, {"b"}}));
  EXPECT_TRUE(sets("a :- not a.").empty());
  EXPECT_EQ(sets("a ; b. a :- b. b :- a."), (std::vector<AnswerSet>{{"a", "b"}}));
  EXPECT_EQ(sets("a ; b."), (std::vector<AnswerSet>{{"a"}, {"b"}}));
  EXPECT_EQ(sets("a ; b. :- a."), (std::vector<AnswerSet>{{"b"}}));
  EXPECT_TRUE(sets("p. -p.").empty());
  EXPECT_EQ(sets(""), (std::vector<AnswerSet>{{}}));
}

TEST(Ground, RuleInstancesOverTwoStudents) {
  const std::string asp =
      "successful(A) :- student(A), work(A).\nstudent(tom). student(bob). work(tom). work(bob).";
  const AspProgram p = parse_asp(asp);
  const auto ref = reference_semantics(p);
  ASSERT_EQ(ref.instances[0], 2u);
  // Ground rules are the rule instances plus the four facts.
  EXPECT_EQ(ground(p).rules, ref.instances[0] + 4);
}

TEST(Ground, CardinalityExpandsOverColours) {
  const AspProgram p =
      parse_asp("node(1). colour(red). colour(blue). colour(green).\n"
                "1 { assigned_to(A,B) : colour(B) } 1 :- node(A).");
  const GroundProgram g = ground(p);
  const std::set<std::string> atoms(g.atoms.begin(), g.atoms.end());
  for (const char* c : {"red", "blue", "green"}) {
    EXPECT_TRUE(atoms.count(std::string("assigned_to(1,") + c + ")")) << c;
  }
  EXPECT_EQ(sets(to_string(p)).size(), 3u);
  for (const AnswerSet& s : sets(to_string(p))) {
    int chosen = 0;
    for (const std::string& a : s) chosen += a.rfind("assigned_to", 0) == 0;
    EXPECT_EQ(chosen, 1);
  }
}

TEST(Ground, GroundProgramIsItsOwnGrounding) {
  const AspProgram p = parse_asp("a. b :- a. c :- b, not d.");
  EXPECT_EQ(ground(p).rules, 3u);
  EXPECT_EQ(ground(p).atoms.size(), 3u);
}

TEST(Ground, Errors) {
  EXPECT_EQ(error_kind([] { ground(parse_asp("p(A) :- not q(A).")); }), "UnsafeClause");
  OracleOptions small;
  small.instance_limit = 10;
  EXPECT_EQ(error_kind([&] {
              ground(parse_asp("n(1). n(2). n(3). n(4). p(A,B,C) :- n(A), n(B), n(C)."), small);
            }),
            "UniverseTooLarge");
  EXPECT_EQ(error_kind([] { answer_sets(parse_asp(fixture("fig6.lp"))); }), "AtomLimitExceeded");
}

TEST(AnswerSets, SuccessfulStudent) {
  const AspProgram p = parse_asp(fixture("fig2.lp"));
  const auto expected = reference_semantics(p).sets;
  ASSERT_EQ(expected.size(), 1u);
  for (const char* a : {"successful(tom)", "party(bob)", "-work(bob)", "answer(tom)"}) {
    EXPECT_TRUE(expected[0].count(a)) << a;
  }
  EXPECT_EQ(answer_sets(p), expected);
}

TEST(AnswerSets, ModifiedSuccessfulStudent) {
  const AspProgram p = parse_asp(fixture("fig3.lp"));
  const auto expected = reference_semantics(p).sets;
  ASSERT_EQ(expected.size(), 1u);
  EXPECT_TRUE(expected[0].count("stressed(tom)"));
  EXPECT_TRUE(expected[0].count("answer(tom)"));
  EXPECT_FALSE(expected[0].count("stressed(bob)"));
  EXPECT_EQ(answer_sets(p), expected);
}

TEST(AnswerSets, SmallColouring) {
  const AspProgram p = parse_asp(
      "node(1). node(2). connected_to(1,2). colour(red). colour(blue).\n"
      "1 { assigned_to(A,B) : colour(B) } 1 :- node(A).\n"
      ":- node(C), assigned_to(C,D), colour(D), node(E), assigned_to(E,D), connected_to(C,E).");
  const auto expected = reference_semantics(p).sets;
  EXPECT_EQ(expected.size(), 2u);
  EXPECT_EQ(answer_sets(p), expected);
}

TEST(AnswerSets, AgreeWithReferenceOnRandomPrograms) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> atom(0, 4), coin(0, 2), len(0, 2);
  const char* names[] = {"a", "b", "c", "d", "e"};
  for (int trial = 0; trial < 150; ++trial) {
    std::string asp;
    const int n = 1 + trial % 6;
    for (int i = 0; i < n; ++i) {
      std::string head;
      const int kind = coin(rng);
      if (kind == 0) head = names[atom(rng)];
      if (kind == 1) head = std::string(names[atom(rng)]) + " ; " + names[atom(rng)];
      std::string body;
      const int m = len(rng) + (kind == 2);
      for (int j = 0; j < m; ++j) {
        body += std::string(j ? ", " : "") + (coin(rng) == 0 ? "not " : "") + (coin(rng) == 0 ? "-" : "") +
                names[atom(rng)];
      }
      asp += head + (body.empty() ? "" : " :- " + body) + ".\n";
    }
    // A rule whose body has only weak negation is unsafe only with variables,
    // so every generated clause is admissible.
    const AspProgram p = parse_asp(asp);
    EXPECT_EQ(answer_sets(p), reference_semantics(p).sets) << asp;
  }
}

TEST(CautiousAnswers, SuccessfulStudentPrograms) {
  const auto fig2 = cautious_answers(answer_sets(parse_asp(fixture("fig2.lp"))));
  const auto fig3 = cautious_answers(answer_sets(parse_asp(fixture("fig3.lp"))));
  ASSERT_TRUE(fig2 && fig3);
  EXPECT_EQ(*fig2, (std::set<std::string>{"tom"}));
  EXPECT_EQ(*fig3, (std::set<std::string>{"tom"}));
}

TEST(CautiousAnswers, IntersectionAndEdgeCases) {
  EXPECT_EQ(*cautious_answers(sets("p.")), std::set<std::string>{});
  EXPECT_EQ(*cautious_answers(sets("answer(tom). answer(bob) :- not x. x :- not answer(bob).")),
            std::set<std::string>{"tom"});
  EXPECT_FALSE(cautious_answers(sets("a :- not a.")));
}

TEST(Properties, ReturnedSetsAreConsistent) {
  for (const char* name : {"fig2.lp", "fig3.lp"}) {
    for (const AnswerSet& s : answer_sets(parse_asp(fixture(name)))) {
      for (const std::string& a : s) {
        if (a[0] == '-') {
          EXPECT_FALSE(s.count(a.substr(1))) << a;
        }
      }
    }
  }
}

TEST(Properties, AddingAnEntailedFactChangesNothing) {
  const std::string fig2 = fixture("fig2.lp");
  EXPECT_EQ(answer_sets(parse_asp(fig2 + "successful(tom).\n")), answer_sets(parse_asp(fig2)));
  EXPECT_EQ(answer_sets(parse_asp(fig2 + "party(bob).\n")), answer_sets(parse_asp(fig2)));
}

TEST(Properties, EquivalentProgramsHaveEqualAnswerSets) {
  const AspProgram a = parse_asp(fixture("fig2.lp"));
  AspProgram b = a;
  std::reverse(b.clauses.begin(), b.clauses.end());
  for (AspClause& c : b.clauses) std::reverse(c.body.begin(), c.body.end());
  ASSERT_TRUE(program_equiv(a, b));
  EXPECT_EQ(answer_sets(a), answer_sets(b));
}

TEST(External, MissingSolverFails) {
  EXPECT_EQ(error_kind([] { answer_sets_external(parse_asp("a."), "/nonexistent/solver"); }), "SolverFailed");
}

TEST(External, ParsesClingoStyleOutput) {
  // A stand-in solver that prints fixed clingo-style output.
  const std::string cmd = "printf 'clingo version 5\\nAnswer: 1\\nb a\\nAnswer: 2\\nc\\nSATISFIABLE\\n'; true";
  const auto s = answer_sets_external(parse_asp("a."), "sh -c \"" + cmd + "\" sh");
  EXPECT_EQ(s, (std::vector<AnswerSet>{{"a", "b"}, {"c"}}));
}
