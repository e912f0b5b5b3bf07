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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace biasprobe {

enum class Domain { news, sports, social_media, entertainment };

std::string_view to_string(Domain domain) noexcept;
Domain parse_domain(std::string_view name);

/// Text column each domain's dataset is read from: news "desc", sports
/// "user_description", social_media "body", entertainment "text".
///
/// The sports column is documented by the dataset authors as holding the tweet
/// body, although in the public Tokyo Olympics tweet dump `user_description`
/// is the author's profile bio. The literal column name is kept; pass
/// `--column text` to read tweet bodies instead.
std::string_view default_column(Domain domain) noexcept;

/// Cleaned documents of one domain. Every document is non-empty.
struct DomainCorpus {
  Domain domain = Domain::news;
  std::vector<std::string> documents;
  std::string source_column;
  std::string source_path;

  std::size_t record_count() const noexcept { return documents.size(); }
  bool operator==(const DomainCorpus&) const = default;
};

struct CorpusSplit {
  DomainCorpus train;
  DomainCorpus test;
  double ratio = 0.8;
  std::uint64_t seed = 0;
  // Position of each train/test document in the input corpus, for audit.
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
};

/// Reads `column` of a UTF-8 CSV file, cleans every cell and drops the ones
/// that end up empty. Documents keep file order.
DomainCorpus load_table(const std::filesystem::path& path, std::string_view column, Domain domain);

/// NFC; removes whitespace-delimited tokens starting with http://, https://
/// or www. (ASCII case-insensitive); collapses whitespace runs to one space
/// and trims. Idempotent.
std::string clean(std::string_view text);

/// Shuffles document positions with Fisher-Yates driven by SplitMix64(seed)
/// (see rng.hpp), then puts the first floor(ratio * n) shuffled documents in
/// train and the rest in test.
CorpusSplit split(const DomainCorpus& corpus, double ratio, std::uint64_t seed);

/// Number of training documents: floor(ratio * n).
std::size_t train_size(std::size_t n, double ratio);

// Corpus interchange files: one cleaned document per line, LF, no header,
// plus a JSON sidecar at "<path>.meta.json".

struct SplitProvenance {
  std::string part;  // "train" or "test"
  double ratio = 0.8;
  std::uint64_t seed = 0;
  std::vector<std::size_t> indices;
};

std::filesystem::path metadata_path(const std::filesystem::path& corpus_path);

void write_corpus(const DomainCorpus& corpus, const std::filesystem::path& path,
                  const std::optional<SplitProvenance>& split = std::nullopt);

/// Reads an interchange file. Domain and source come from the sidecar when
/// it exists, otherwise from `fallback_domain` (an error if absent).
DomainCorpus read_corpus(const std::filesystem::path& path, std::optional<Domain> fallback_domain = std::nullopt);

/// Just the documents of an interchange file, sidecar ignored.
std::vector<std::string> read_documents(const std::filesystem::path& path);

std::string format_corpus(const DomainCorpus& corpus);

}  // namespace biasprobe
