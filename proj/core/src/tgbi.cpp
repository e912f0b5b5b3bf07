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

#include "biasprobe/tgbi.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>

#include "biasprobe/csv.hpp"
#include "biasprobe/error.hpp"
#include "biasprobe/numeric.hpp"
#include "biasprobe/tokenize.hpp"
#include "io.hpp"

namespace biasprobe {

std::string_view to_string(GenderClass cls) noexcept {
  switch (cls) {
    case GenderClass::he: return "he";
    case GenderClass::she: return "she";
    case GenderClass::neutral: return "neutral";
  }
  return "neutral";
}

SentenceClassifier::SentenceClassifier(const WordSetSpec& he_lexicon, const WordSetSpec& she_lexicon)
    : he_(he_lexicon.tokens.begin(), he_lexicon.tokens.end()),
      she_(she_lexicon.tokens.begin(), she_lexicon.tokens.end()) {
  for (const auto& token : he_) {
    if (she_.contains(token)) {
      throw Error("gender lexicons overlap on '" + token + "' ('" + he_lexicon.name + "' and '" + she_lexicon.name + "')");
    }
  }
}

Classification SentenceClassifier::classify(std::span<const std::string> tokens) const {
  Classification result;
  bool decided = false;
  bool saw_he = false;
  bool saw_she = false;
  for (const auto& token : tokens) {
    const bool he = he_.contains(token);
    const bool she = she_.contains(token);
    saw_he = saw_he || he;
    saw_she = saw_she || she;
    if (!decided && (he || she)) {
      result.gender = he ? GenderClass::he : GenderClass::she;
      decided = true;
    }
  }
  result.both_present = saw_he && saw_she;
  return result;
}

GenderClass classify_sentence(std::span<const std::string> tokens, const WordSetSpec& he_lexicon,
                              const WordSetSpec& she_lexicon) {
  return SentenceClassifier(he_lexicon, she_lexicon).classify(tokens).gender;
}

double set_score(const GenderClassCounts& counts) {
  const std::uint64_t total = counts.total();
  if (total == 0) throw Error("TGBI set '" + counts.set_id + "' has no sentences");
  const auto t = static_cast<double>(total);
  const double p_he = static_cast<double>(counts.n_he) / t;
  const double p_she = static_cast<double>(counts.n_she) / t;
  const double p_neutral = static_cast<double>(counts.n_neutral) / t;
  return std::clamp(std::sqrt(p_he * p_she + p_neutral), 0.0, 1.0);
}

TgbiResult tgbi(std::span<const GenderClassCounts> sets) {
  if (sets.empty()) throw Error("TGBI needs at least one sentence set");
  TgbiResult result;
  ExactSum sum;
  for (const auto& counts : sets) {
    TgbiSetScore s;
    s.counts = counts;
    s.score = set_score(counts);
    const auto t = static_cast<double>(counts.total());
    s.p_he = static_cast<double>(counts.n_he) / t;
    s.p_she = static_cast<double>(counts.n_she) / t;
    s.p_neutral = static_cast<double>(counts.n_neutral) / t;
    sum.add(s.score);
    result.per_set.push_back(std::move(s));
  }
  result.index = std::clamp(sum.value() / static_cast<double>(sets.size()), 0.0, 1.0);
  return result;
}

std::vector<GenderClassCounts> parse_counts_csv(std::string_view text, std::string_view source) {
  const CsvTable table = parse_csv(text, source);
  auto column = [&](std::string_view name) {
    auto i = table.column_index(name);
    if (!i) throw Error(std::string(source) + ": missing column '" + std::string(name) + "'");
    return *i;
  };
  const std::size_t id = column("set_id");
  const std::size_t he = column("n_he");
  const std::size_t she = column("n_she");
  const std::size_t neutral = column("n_neutral");
  const auto both = table.column_index("n_both_present");

  auto number = [&](const CsvRecord& row, std::size_t col) {
    const std::string& field = row.fields[col];
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      throw Error(std::string(source) + ": line " + std::to_string(row.line) + ": '" + field +
                  "' is not a non-negative integer");
    }
    return value;
  };

  std::vector<GenderClassCounts> sets;
  for (const auto& row : table.rows) {
    GenderClassCounts c{row.fields[id], number(row, he), number(row, she), number(row, neutral), 0};
    if (both) c.n_both_present = number(row, *both);
    if (c.total() == 0) throw Error(std::string(source) + ": line " + std::to_string(row.line) + ": set has zero sentences");
    sets.push_back(std::move(c));
  }
  if (sets.empty()) throw Error(std::string(source) + ": no sentence sets");
  return sets;
}

std::vector<GenderClassCounts> load_counts(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw Error("counts file not found: " + path.string());
  return parse_counts_csv(io::read_file(path), path.string());
}

std::vector<GenderClassCounts> count_sentences(std::span<const std::string> lines, const nlohmann::json& manifest,
                                               const SentenceClassifier& classifier) {
  if (!manifest.is_object() || manifest.empty()) throw Error("sentence manifest must be a non-empty JSON object");
  std::vector<GenderClassCounts> sets;
  for (const auto& [set_id, ranges] : manifest.items()) {
    GenderClassCounts counts;
    counts.set_id = set_id;
    if (!ranges.is_array()) throw Error("manifest entry '" + set_id + "' must be a list of [first, last] ranges");
    for (const auto& range : ranges) {
      if (!range.is_array() || range.size() != 2 || !range[0].is_number_unsigned() || !range[1].is_number_unsigned()) {
        throw Error("manifest entry '" + set_id + "': each range must be [first, last] with 1-based line numbers");
      }
      const auto first = range[0].get<std::size_t>();
      const auto last = range[1].get<std::size_t>();
      if (first < 1 || last < first || last > lines.size()) {
        throw Error("manifest entry '" + set_id + "': range [" + std::to_string(first) + ", " + std::to_string(last) +
                    "] outside 1.." + std::to_string(lines.size()));
      }
      for (std::size_t line = first; line <= last; ++line) {
        const TokenStream stream = tokenize(lines[line - 1]);
        const Classification c = classifier.classify(stream.tokens);
        switch (c.gender) {
          case GenderClass::he: ++counts.n_he; break;
          case GenderClass::she: ++counts.n_she; break;
          case GenderClass::neutral: ++counts.n_neutral; break;
        }
        if (c.both_present) ++counts.n_both_present;
      }
    }
    if (counts.total() == 0) throw Error("manifest entry '" + set_id + "' selects no sentences");
    sets.push_back(std::move(counts));
  }
  return sets;
}

nlohmann::json to_json(const TgbiResult& r) {
  nlohmann::json per_set = nlohmann::json::array();
  for (const auto& s : r.per_set) {
    per_set.push_back({
        {"set_id", s.counts.set_id},
        {"n_he", s.counts.n_he},
        {"n_she", s.counts.n_she},
        {"n_neutral", s.counts.n_neutral},
        {"n_both_present", s.counts.n_both_present},
        {"p_he", s.p_he},
        {"p_she", s.p_she},
        {"p_neutral", s.p_neutral},
        {"score", s.score},
    });
  }
  return {{"index", r.index}, {"per_set", per_set}};
}

TgbiResult tgbi_result_from_json(const nlohmann::json& json) {
  TgbiResult r;
  try {
    r.index = json.at("index").get<double>();
    for (const auto& s : json.at("per_set")) {
      TgbiSetScore score;
      score.counts.set_id = s.at("set_id").get<std::string>();
      score.counts.n_he = s.at("n_he").get<std::uint64_t>();
      score.counts.n_she = s.at("n_she").get<std::uint64_t>();
      score.counts.n_neutral = s.at("n_neutral").get<std::uint64_t>();
      score.counts.n_both_present = s.value("n_both_present", std::uint64_t{0});
      score.p_he = s.at("p_he").get<double>();
      score.p_she = s.at("p_she").get<double>();
      score.p_neutral = s.at("p_neutral").get<double>();
      score.score = s.at("score").get<double>();
      r.per_set.push_back(std::move(score));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid TGBI result JSON: ") + e.what());
  }
  return r;
}

}  // namespace biasprobe
