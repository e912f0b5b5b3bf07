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

#include <algorithm>
#include <random>

#include "biasprobe/corpus.hpp"
#include "biasprobe/csv.hpp"
#include "biasprobe/error.hpp"
#include "test_support.hpp"

namespace biasprobe {
namespace {

using testing::error_of;
using testing::TempDir;


TEST(Csv, QuotedFieldsCrlfAndBom) {
  const auto table = parse_csv("\xEF\xBB\xBFid,desc\r\n1,\"a, \"\"quoted\"\"\nline\"\r\n\r\n2,plain\r\n");
  ASSERT_EQ(table.header, (std::vector<std::string>{"id", "desc"}));
  ASSERT_EQ(table.rows.size(), 2U);
  EXPECT_EQ(table.rows[0].fields[1], "a, \"quoted\"\nline");
  EXPECT_EQ(table.rows[1].fields[1], "plain");
  EXPECT_EQ(table.rows[1].line, 5U);
  EXPECT_EQ(table.column_index("desc"), 1U);
  EXPECT_FALSE(table.column_index("body"));
}

TEST(Csv, FieldCountMismatchNamesRow) {
  const auto msg = error_of([] { parse_csv("id,desc\n1,a\n2,b,c\n"); });
  EXPECT_NE(msg.find("malformed row 2"), std::string::npos) << msg;
}

TEST(Csv, UnterminatedQuote) {
  EXPECT_THROW(parse_csv("id,desc\n1,\"open\n"), Error);
}

TEST(LoadTable, ExtractsColumnInOrder) {
  TempDir dir;
  const auto path = dir.write("news.csv", "id,desc\n1,hello\n2,world\n");
  const auto corpus = load_table(path, "desc", Domain::news);
  EXPECT_EQ(corpus.documents, (std::vector<std::string>{"hello", "world"}));
  EXPECT_EQ(corpus.record_count(), 2U);
  EXPECT_EQ(corpus.source_column, "desc");
  EXPECT_EQ(corpus.domain, Domain::news);
}

TEST(LoadTable, MissingColumnListsAvailable) {
  TempDir dir;
  const auto path = dir.write("news.csv", "id,desc\n1,hello\n");
  EXPECT_EQ(error_of([&] { load_table(path, "body", Domain::news); }), "column not found: body; available: id, desc");
}

TEST(LoadTable, DropsBlankCellsAndCleans) {
  TempDir dir;
  const auto path = dir.write("s.csv", "id,text\n1,\"  \"\n2,see https://x.y now\n3,\n");
  const auto corpus = load_table(path, "text", Domain::entertainment);
  EXPECT_EQ(corpus.documents, std::vector<std::string>{"see now"});
}

TEST(LoadTable, Errors) {
  TempDir dir;
  EXPECT_THROW(load_table(dir.file("absent.csv"), "desc", Domain::news), Error);
  const auto bad = dir.write("bad.csv", "id,desc\n1,ok\n2,\xff\xfe\n");
  EXPECT_NE(error_of([&] { load_table(bad, "desc", Domain::news); }).find("line 3"), std::string::npos);
  const auto ragged = dir.write("ragged.csv", "id,desc\n1,ok\n2\n");
  EXPECT_NE(error_of([&] { load_table(ragged, "desc", Domain::news); }).find("row 2"), std::string::npos);
}

TEST(Domains, DefaultColumnsAndNames) {
  EXPECT_EQ(default_column(Domain::news), "desc");
  EXPECT_EQ(default_column(Domain::sports), "user_description");
  EXPECT_EQ(default_column(Domain::social_media), "body");
  EXPECT_EQ(default_column(Domain::entertainment), "text");
  for (auto d : {Domain::news, Domain::sports, Domain::social_media, Domain::entertainment}) {
    EXPECT_EQ(parse_domain(to_string(d)), d);
  }
  EXPECT_THROW(parse_domain("finance"), Error);
}

TEST(Clean, Examples) {
  EXPECT_EQ(clean("hello   world "), "hello world");
  EXPECT_EQ(clean("see https://x.y now"), "see now");
  EXPECT_EQ(clean("क्या  हाल"), "क्या हाल");
  EXPECT_EQ(clean("go to WWW.example.com or HTTP://a.b"), "go to or");
  EXPECT_EQ(clean(""), "");
}

TEST(Clean, IdempotentOnRandomText) {
  const std::vector<std::string> pieces = {"a", "B", " ", "  ", "\t", "\n", "http://x", "www.y", "क", "ि",
                                           "कि", ",", "https://q?z", "é", "é", "."};
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    const auto len = rng() % 12;
    for (std::size_t i = 0; i < len; ++i) text += pieces[rng() % pieces.size()];
    const auto once = clean(text);
    EXPECT_EQ(clean(once), once) << text;
    EXPECT_EQ(once.find("  "), std::string::npos);
  }
}

DomainCorpus numbered_corpus(std::size_t n) {
  DomainCorpus c;
  for (std::size_t i = 0; i < n; ++i) c.documents.push_back("doc " + std::to_string(i));
  return c;
}

TEST(Split, TenDocuments) {
  const auto parts = split(numbered_corpus(10), 0.8, 3);
  EXPECT_EQ(parts.train.record_count(), 8U);
  EXPECT_EQ(parts.test.record_count(), 2U);
}

TEST(Split, TwentyThousandRowsIsEightyTwenty) {
  const auto parts = split(numbered_corpus(20000), 0.8, 1);
  EXPECT_EQ(parts.train.record_count(), 16000U);
  EXPECT_EQ(parts.test.record_count(), 4000U);
}

TEST(Split, DeterministicAndSeedSensitive) {
  const auto corpus = numbered_corpus(100);
  const auto a = split(corpus, 0.8, 42);
  const auto b = split(corpus, 0.8, 42);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.test, b.test);
  EXPECT_EQ(a.train_indices, b.train_indices);
  EXPECT_NE(split(corpus, 0.8, 43).train_indices, a.train_indices);
}

TEST(Split, PartitionsInput) {
  const auto corpus = numbered_corpus(37);
  const auto parts = split(corpus, 0.8, 9);
  std::vector<std::size_t> all = parts.train_indices;
  all.insert(all.end(), parts.test_indices.begin(), parts.test_indices.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i], i);
  for (std::size_t i = 0; i < parts.train_indices.size(); ++i) {
    EXPECT_EQ(parts.train.documents[i], corpus.documents[parts.train_indices[i]]);
  }
}

TEST(Split, RejectsBadRatioAndEmptyCorpus) {
  EXPECT_THROW(split(numbered_corpus(5), 0.0, 1), Error);
  EXPECT_THROW(split(numbered_corpus(5), 1.0, 1), Error);
  EXPECT_THROW(split(numbered_corpus(0), 0.8, 1), Error);
}

TEST(Interchange, RoundTripWithSidecar) {
  TempDir dir;
  DomainCorpus corpus = numbered_corpus(5);
  corpus.domain = Domain::social_media;
  corpus.source_column = "body";
  corpus.source_path = "reddit.csv";
  const auto path = dir.file("c.txt");
  write_corpus(corpus, path);
  EXPECT_TRUE(std::filesystem::exists(metadata_path(path)));
  EXPECT_EQ(read_corpus(path), corpus);
  EXPECT_EQ(read_documents(path), corpus.documents);
}

TEST(Interchange, FallbackDomainWithoutSidecar) {
  TempDir dir;
  const auto path = dir.write("plain.txt", "one\ntwo\n");
  EXPECT_THROW(read_corpus(path), Error);
  EXPECT_EQ(read_corpus(path, Domain::sports).record_count(), 2U);
}

}  // namespace
}  // namespace biasprobe
