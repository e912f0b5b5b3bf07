// Copyright 2026 The biasprobe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>

#include "biasprobe/error.hpp"
#include "biasprobe/lexicon.hpp"
#include "test_support.hpp"

namespace biasprobe {
namespace {

using testing::error_of;
using testing::TempDir;
using Tokens = std::vector<std::string>;

EmbeddingSpace space_of(const Tokens& tokens) {
  EmbeddingSpace space(2);
  double k = 1;
  for (const auto& t : tokens) space.add(t, std::vector<double>{k++, 1});
  return space;
}

TEST(WordSet, CommentsAndBlankLines) {
  const auto spec = parse_wordset("he\nhim\n# comment\n\nhis", "male", "en");
  EXPECT_EQ(spec.tokens, (Tokens{"he", "him", "his"}));
}

TEST(WordSet, NormalizedDedup) {
  EXPECT_EQ(parse_wordset("He\nhe", "m", "en").tokens, Tokens{"he"});
  EXPECT_EQ(make_wordset("m", "en", {"A", "b", "a"}).tokens, (Tokens{"a", "b"}));
}

TEST(WordSet, WhitespaceTokenNamesLine) {
  EXPECT_NE(error_of([] { parse_wordset("two words", "s", "en"); }).find("line 1"), std::string::npos);
  EXPECT_NE(error_of([] { parse_wordset("ok\n# c\nsplit here", "s", "en"); }).find("line 3"), std::string::npos);
  EXPECT_THROW(parse_wordset("# only comments\n", "s", "en"), Error);
  EXPECT_THROW(make_wordset("s", "en", {"fine", ""}), Error);
}

TEST(WordSet, LoadFromFile) {
  TempDir dir;
  const auto path = dir.write("set.txt", "\xEF\xBB\xBFhe\r\nshe\r\n");
  EXPECT_EQ(load_wordset(path, "s", "en").tokens, (Tokens{"he", "she"}));
  EXPECT_THROW(load_wordset(dir.file("nope.txt"), "s", "en"), Error);
}

TEST(Resolve, SplitsFoundAndDropped) {
  const auto r = resolve(space_of({"a", "c"}), make_wordset("s", "en", {"a", "b", "c"}));
  EXPECT_EQ(r.found, (Tokens{"a", "c"}));
  EXPECT_EQ(r.dropped, Tokens{"b"});
}

TEST(Resolve, TooFewFound) {
  const auto msg = error_of([] { resolve(space_of({"a"}), make_wordset("s", "en", {"a", "b", "c"})); });
  EXPECT_NE(msg.find("resolved to 1 < 2"), std::string::npos) << msg;
}

TEST(Resolve, PreconditionBeforeLookup) {
  EXPECT_THROW(resolve(space_of({"a"}), make_wordset("s", "en", {"a"})), Error);
  EXPECT_THROW(resolve(space_of({"a", "b"}), make_wordset("s", "en", {"a", "b"}), 1), Error);
}

TEST(Resolve, PartitionInvariant) {
  const auto spec = make_wordset("s", "en", {"q", "a", "z", "b", "c", "y"});
  const auto r = resolve(space_of({"a", "b", "c"}), spec);
  Tokens all = r.found;
  all.insert(all.end(), r.dropped.begin(), r.dropped.end());
  std::sort(all.begin(), all.end());
  Tokens expected = spec.tokens;
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(all, expected);
}

ResolvedWordSet found_set(const std::string& name, Tokens tokens) { return testing::resolved(name, std::move(tokens)); }

TEST(Balance, TruncatesLarger) {
  const auto x = found_set("x", {"x1", "x2", "x3", "x4", "x5"});
  const auto y = found_set("y", {"y1", "y2", "y3"});
  const auto [bx, by] = balance(x, y, 3);
  EXPECT_EQ(bx.found.size(), 3U);
  EXPECT_EQ(bx.dropped.size(), 2U);
  EXPECT_EQ(by, y);
  // Survivors keep their original relative order.
  EXPECT_TRUE(std::is_sorted(bx.found.begin(), bx.found.end()));
  const auto [again, _] = balance(x, y, 3);
  EXPECT_EQ(again, bx);
}

TEST(Balance, EqualSizesUntouched) {
  const auto x = found_set("x", {"x1", "x2"});
  const auto y = found_set("y", {"y1", "y2"});
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    const auto [bx, by] = balance(x, y, seed);
    EXPECT_EQ(bx, x);
    EXPECT_EQ(by, y);
  }
}

TEST(Pairs, ParseAndReject) {
  const auto list = parse_pairs("# masc,fem\nhe,she\nMan,Woman\n", "en");
  ASSERT_EQ(list.pairs.size(), 2U);
  EXPECT_EQ(list.pairs[1], (std::pair<std::string, std::string>{"man", "woman"}));
  EXPECT_THROW(parse_pairs("he\n", "en"), Error);
  EXPECT_THROW(parse_pairs("he,she\nshe,her\n", "en"), Error);
  EXPECT_THROW(parse_pairs("", "en"), Error);
}

TEST(BundledData, EnglishAndHindiSetsLoad) {
  for (const char* lang : {"en", "hi"}) {
    for (const char* name : {"male_terms", "female_terms", "career", "family", "science", "arts", "he_words",
                             "she_words"}) {
      const auto path = locate_data_file(name, lang);
      EXPECT_GE(load_wordset(path, name, lang).tokens.size(), 2U) << lang << "/" << name;
    }
    EXPECT_FALSE(load_pairs(locate_data_file("gender_pairs", lang, ".csv"), lang).pairs.empty());
  }
  EXPECT_THROW(locate_data_file("no_such_set", "en"), Error);
}

TEST(BundledData, EnvironmentOverride) {
  TempDir dir;
  std::filesystem::create_directories(dir.path() / "en");
  dir.write("en/custom.txt", "alpha\nbeta\n");
  ::setenv("BIASPROBE_DATA_DIR", dir.path().c_str(), 1);
  const auto path = locate_data_file("custom", "en");
  ::unsetenv("BIASPROBE_DATA_DIR");
  EXPECT_EQ(load_wordset(path, "custom", "en").tokens, (Tokens{"alpha", "beta"}));
}

}  // namespace
}  // namespace biasprobe
