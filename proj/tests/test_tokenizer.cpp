#include <gtest/gtest.h>

#include <random>

#include "cnlasp/model.hpp"
#include "cnlasp/tokenizer.hpp"
#include "support.hpp"

using namespace cnlasp;

TEST(Tokenize, SimpleSentence) {
  const auto s = tokenize("Bob is a student.");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0], (Tokens{"Bob", "is", "a", "student", "."}));
}

TEST(Tokenize, Empty) {
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize("  \n\t ").empty());
}

TEST(Tokenize, EnumerationWithCommas) {
  const auto s = tokenize("The node 1 is connected to the nodes 2, 3 and 4.");
  ASSERT_EQ(s.size(), 1u);
  // Independent count: whitespace-separated words, plus one token for each
  // punctuation mark glued to a word.
  const std::string text = "The node 1 is connected to the nodes 2, 3 and 4.";
  std::size_t words = 0, marks = 0;
  bool in_word = false;
  for (char c : text) {
    if (c == ',' || c == '.') ++marks;
    const bool w = c != ' ' && c != ',' && c != '.';
    if (w && !in_word) ++words;
    in_word = w;
  }
  EXPECT_EQ(s[0].size(), words + marks);
  EXPECT_EQ(s[0].size(), 14u);
  EXPECT_EQ(s[0][9], ",");
  EXPECT_EQ(s[0].back(), ".");
  EXPECT_TRUE(is_number_token(s[0][2]));
}

TEST(Tokenize, QuestionsAndSentenceBoundaries) {
  const auto s = tokenize("Tom works. Who is stressed?\nBob parties.");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[1], (Tokens{"Who", "is", "stressed", "?"}));
  EXPECT_EQ(s[2].front(), "Bob");
}

TEST(Tokenize, UnterminatedSentence) {
  try {
    tokenize("Tom works. Bob parties");
    FAIL() << "expected UnterminatedSentence";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "UnterminatedSentence");
  }
}

TEST(Tokenize, TokenClasses) {
  EXPECT_TRUE(is_number_token("42"));
  EXPECT_FALSE(is_number_token("4a"));
  EXPECT_TRUE(is_variable_token("X"));
  EXPECT_FALSE(is_variable_token("Tom"));
  EXPECT_FALSE(is_variable_token("x"));
  EXPECT_TRUE(is_punctuation_token(","));
}

TEST(Detokenize, Question) {
  const Tokens t{"Who", "is", "stressed", "?"};
  EXPECT_EQ(detokenize(std::span<const std::string>(t)), "Who is stressed?");
}

TEST(Detokenize, Empty) {
  EXPECT_EQ(detokenize(std::span<const std::string>()), "");
  EXPECT_EQ(detokenize(std::vector<Tokens>{}), "");
}

TEST(Detokenize, OneSentencePerLine) {
  const std::vector<Tokens> s{{"Tom", "works", "."}, {"The", "nodes", "2", ",", "3", "and", "4", "."}};
  EXPECT_EQ(detokenize(s), "Tom works.\nThe nodes 2, 3 and 4.");
}

TEST(RoundTrip, FigureTextsNormaliseWhitespaceOnly) {
  for (const char* name : {"fig1.cnl", "fig4.cnl", "fig5.cnl"}) {
    const std::string text = cnlasp::testing::fixture(name);
    EXPECT_EQ(detokenize(tokenize(text)) + "\n", cnlasp::testing::squash(text)) << name;
  }
}

TEST(RoundTrip, TokenizeInvertsDetokenize) {
  const std::vector<std::string> vocab{"Tom", "works", "a", "student", "X", "12", "and", "the", "node", "is"};
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Tokens> doc;
    const int sentences = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int i = 0; i < sentences; ++i) {
      Tokens s;
      const int n = std::uniform_int_distribution<int>(1, 8)(rng);
      for (int j = 0; j < n; ++j) {
        s.push_back(vocab[std::uniform_int_distribution<std::size_t>(0, vocab.size() - 1)(rng)]);
        if (j + 1 < n && std::uniform_int_distribution<int>(0, 5)(rng) == 0) s.push_back(",");
      }
      s.push_back(std::uniform_int_distribution<int>(0, 3)(rng) == 0 ? "?" : ".");
      doc.push_back(s);
    }
    EXPECT_EQ(tokenize(detokenize(doc)), doc);
  }
}
