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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "biasprobe/lexicon.hpp"

namespace biasprobe {

enum class GenderClass { he, she, neutral };

std::string_view to_string(GenderClass cls) noexcept;

struct GenderClassCounts {
  std::string set_id;
  std::uint64_t n_he = 0;
  std::uint64_t n_she = 0;
  std::uint64_t n_neutral = 0;
  // Diagnostic: sentences that contained words from both lexicons.
  std::uint64_t n_both_present = 0;

  std::uint64_t total() const noexcept { return n_he + n_she + n_neutral; }
  bool operator==(const GenderClassCounts&) const = default;
};

struct Classification {
  GenderClass gender = GenderClass::neutral;
  bool both_present = false;
};

/// Sentence classifier over two disjoint lexicons. The first token found in
/// either lexicon decides the class; no hit means neutral.
class SentenceClassifier {
 public:
  SentenceClassifier(const WordSetSpec& he_lexicon, const WordSetSpec& she_lexicon);

  Classification classify(std::span<const std::string> tokens) const;

 private:
  std::set<std::string, std::less<>> he_;
  std::set<std::string, std::less<>> she_;
};

GenderClass classify_sentence(std::span<const std::string> tokens, const WordSetSpec& he_lexicon,
                              const WordSetSpec& she_lexicon);

/// P = sqrt(p_he * p_she + p_neutral), in [0, 1]; 1 is unbiased.
double set_score(const GenderClassCounts& counts);

struct TgbiSetScore {
  GenderClassCounts counts;
  double p_he = 0.0;
  double p_she = 0.0;
  double p_neutral = 0.0;
  double score = 0.0;

  bool operator==(const TgbiSetScore&) const = default;
};

struct TgbiResult {
  std::vector<TgbiSetScore> per_set;
  double index = 0.0;  // arithmetic mean of the per-set scores

  bool operator==(const TgbiResult&) const = default;
};

TgbiResult tgbi(std::span<const GenderClassCounts> sets);

/// Header "set_id,n_he,n_she,n_neutral" (an extra n_both_present column is
/// accepted).
std::vector<GenderClassCounts> parse_counts_csv(std::string_view text, std::string_view source = "<memory>");
std::vector<GenderClassCounts> load_counts(const std::filesystem::path& path);

/// Sentences one per line; the manifest maps set_id to a list of 1-based
/// inclusive line ranges, e.g. {"occupations": [[1, 40], [81, 90]]}.
std::vector<GenderClassCounts> count_sentences(std::span<const std::string> lines, const nlohmann::json& manifest,
                                               const SentenceClassifier& classifier);

nlohmann::json to_json(const TgbiResult& result);
TgbiResult tgbi_result_from_json(const nlohmann::json& json);

}  // namespace biasprobe
