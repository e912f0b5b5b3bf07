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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "biasprobe/embed.hpp"

namespace biasprobe {

/// Named list of unique normalized tokens.
struct WordSetSpec {
  std::string name;
  std::string language;
  std::vector<std::string> tokens;

  bool operator==(const WordSetSpec&) const = default;
};

/// A word set split by presence in one embedding space.
struct ResolvedWordSet {
  WordSetSpec spec;
  std::vector<std::string> found;
  std::vector<std::string> dropped;

  bool operator==(const ResolvedWordSet&) const = default;
};

struct GenderPairList {
  std::string language;
  std::vector<std::pair<std::string, std::string>> pairs;  // (masculine, feminine)
};

/// Normalizes each token, keeps the first of any duplicates and rejects
/// tokens containing whitespace or an empty result.
WordSetSpec make_wordset(std::string name, std::string language, const std::vector<std::string>& tokens);

/// One token per line; blank lines and lines starting with '#' are skipped.
WordSetSpec parse_wordset(std::string_view text, std::string name, std::string language);
WordSetSpec load_wordset(const std::filesystem::path& path, std::string name, std::string language);

/// Splits spec.tokens into found/dropped by EmbeddingSpace::lookup. Throws
/// when fewer than min_size tokens are found (naming the dropped ones) or when
/// the set cannot reach min_size at all. min_size must be at least 2.
ResolvedWordSet resolve(const EmbeddingSpace& space, const WordSetSpec& spec, std::size_t min_size = 2);

/// Equalizes the found sizes of two sets by sampling the larger one down
/// without replacement (seeded Fisher-Yates; survivors keep their order).
/// Removed tokens move to `dropped`.
std::pair<ResolvedWordSet, ResolvedWordSet> balance(ResolvedWordSet x, ResolvedWordSet y, std::uint64_t seed);

/// "masculine,feminine" per line; '#' comments and blank lines skipped.
GenderPairList parse_pairs(std::string_view text, std::string language, std::string_view source = "<memory>");
GenderPairList load_pairs(const std::filesystem::path& path, std::string language);

/// $BIASPROBE_DATA_DIR if set, otherwise the first existing of the source
/// tree's core/data and the installed share/biasprobe/data.
std::filesystem::path data_directory();

/// `name_or_path` itself when it names an existing file, otherwise
/// <data_directory>/<language>/<name><extension>.
std::filesystem::path locate_data_file(std::string_view name_or_path, std::string_view language,
                                       std::string_view extension = ".txt");

}  // namespace biasprobe
