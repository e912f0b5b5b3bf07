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

#include "biasprobe/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "biasprobe/csv.hpp"
#include "biasprobe/error.hpp"
#include "biasprobe/rng.hpp"
#include "io.hpp"
#include "unicode.hpp"

namespace biasprobe {

namespace {

bool is_url_token(std::u32string_view token) {
  auto starts_with_ci = [&](std::u32string_view prefix) {
    if (token.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      char32_t c = token[i];
      if (c >= U'A' && c <= U'Z') c = c - U'A' + U'a';
      if (c != prefix[i]) return false;
    }
    return true;
  };
  return starts_with_ci(U"http://") || starts_with_ci(U"https://") || starts_with_ci(U"www.");
}

}  // namespace

std::string_view to_string(Domain domain) noexcept {
  switch (domain) {
    case Domain::news: return "news";
    case Domain::sports: return "sports";
    case Domain::social_media: return "social_media";
    case Domain::entertainment: return "entertainment";
  }
  return "news";
}

Domain parse_domain(std::string_view name) {
  for (Domain d : {Domain::news, Domain::sports, Domain::social_media, Domain::entertainment}) {
    if (to_string(d) == name) return d;
  }
  throw Error("unknown domain: " + std::string(name) + "; expected one of news, sports, social_media, entertainment");
}

std::string_view default_column(Domain domain) noexcept {
  switch (domain) {
    case Domain::news: return "desc";
    case Domain::sports: return "user_description";
    case Domain::social_media: return "body";
    case Domain::entertainment: return "text";
  }
  return "text";
}

std::string clean(std::string_view text) {
  const std::u32string cps = unicode::decode(unicode::nfc(text));
  const std::u32string_view all(cps);
  std::u32string out;
  out.reserve(cps.size());
  std::size_t i = 0;
  while (i < all.size()) {
    while (i < all.size() && unicode::is_space(all[i])) ++i;
    std::size_t end = i;
    while (end < all.size() && !unicode::is_space(all[end])) ++end;
    if (end == i) break;
    const auto token = all.substr(i, end - i);
    if (!is_url_token(token)) {
      if (!out.empty()) out.push_back(U' ');
      out.append(token);
    }
    i = end;
  }
  return unicode::encode(out);
}

DomainCorpus load_table(const std::filesystem::path& path, std::string_view column, Domain domain) {
  const CsvTable table = read_csv(path);
  const auto index = table.column_index(column);
  if (!index) {
    std::string available;
    for (const auto& name : table.header) {
      if (!available.empty()) available += ", ";
      available += name;
    }
    throw Error("column not found: " + std::string(column) + "; available: " + available);
  }

  DomainCorpus corpus;
  corpus.domain = domain;
  corpus.source_column = std::string(column);
  corpus.source_path = path.string();
  corpus.documents.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    std::string document = clean(row.fields[*index]);
    if (!document.empty()) corpus.documents.push_back(std::move(document));
  }
  return corpus;
}

std::size_t train_size(std::size_t n, double ratio) {
  return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n)));
}

CorpusSplit split(const DomainCorpus& corpus, double ratio, std::uint64_t seed) {
  if (corpus.documents.empty()) throw Error("cannot split an empty corpus");
  if (!(ratio > 0.0 && ratio < 1.0)) throw Error("split ratio must lie in (0, 1), got " + std::to_string(ratio));

  const std::size_t n = corpus.documents.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  SplitMix64 rng(seed);
  shuffle(std::span<std::size_t>(order), rng);

  const std::size_t cut = train_size(n, ratio);
  CorpusSplit result;
  result.ratio = ratio;
  result.seed = seed;
  result.train_indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cut));
  result.test_indices.assign(order.begin() + static_cast<std::ptrdiff_t>(cut), order.end());

  auto take = [&](const std::vector<std::size_t>& indices) {
    DomainCorpus part;
    part.domain = corpus.domain;
    part.source_column = corpus.source_column;
    part.source_path = corpus.source_path;
    part.documents.reserve(indices.size());
    for (std::size_t i : indices) part.documents.push_back(corpus.documents[i]);
    return part;
  };
  result.train = take(result.train_indices);
  result.test = take(result.test_indices);
  return result;
}

std::filesystem::path metadata_path(const std::filesystem::path& corpus_path) {
  return std::filesystem::path(corpus_path.string() + ".meta.json");
}

std::string format_corpus(const DomainCorpus& corpus) {
  std::string out;
  for (const auto& doc : corpus.documents) {
    if (doc.empty() || doc.find('\n') != std::string::npos || doc.find('\r') != std::string::npos) {
      throw Error("document cannot be written to a line-oriented corpus file (empty or multi-line)");
    }
    out += doc;
    out += '\n';
  }
  return out;
}

void write_corpus(const DomainCorpus& corpus, const std::filesystem::path& path,
                  const std::optional<SplitProvenance>& split) {
  io::write_file(path, format_corpus(corpus));

  nlohmann::json meta = {
      {"domain_id", to_string(corpus.domain)},
      {"source_path", corpus.source_path},
      {"source_column", corpus.source_column},
      {"record_count", corpus.record_count()},
      {"seed", nullptr},
      {"ratio", nullptr},
  };
  if (split) {
    meta["seed"] = split->seed;
    meta["ratio"] = split->ratio;
    meta["part"] = split->part;
    meta["original_indices"] = split->indices;
  }
  io::write_file(metadata_path(path), meta.dump(2) + "\n");
}

std::vector<std::string> read_documents(const std::filesystem::path& path) {
  const std::string text = io::read_file(path);
  io::require_utf8(text, path.string());
  std::vector<std::string> documents;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + start, end - start);
    if (line.ends_with('\r')) line.remove_suffix(1);
    if (!line.empty()) documents.emplace_back(line);
    start = end + 1;
  }
  return documents;
}

DomainCorpus read_corpus(const std::filesystem::path& path, std::optional<Domain> fallback_domain) {
  DomainCorpus corpus;
  corpus.documents = read_documents(path);
  const auto meta_file = metadata_path(path);
  if (std::filesystem::exists(meta_file)) {
    nlohmann::json meta;
    try {
      meta = nlohmann::json::parse(io::read_file(meta_file));
      corpus.domain = parse_domain(meta.at("domain_id").get<std::string>());
      corpus.source_path = meta.value("source_path", path.string());
      corpus.source_column = meta.value("source_column", "");
    } catch (const nlohmann::json::exception& e) {
      throw Error(meta_file.string() + ": invalid corpus metadata: " + e.what());
    }
    if (meta.contains("record_count") && meta["record_count"].get<std::size_t>() != corpus.record_count()) {
      throw Error(path.string() + ": metadata record_count " + meta["record_count"].dump() + " does not match " +
                  std::to_string(corpus.record_count()) + " documents");
    }
  } else if (fallback_domain) {
    corpus.domain = *fallback_domain;
    corpus.source_path = path.string();
  } else {
    throw Error(path.string() + ": no metadata sidecar " + meta_file.string() + " and no domain given");
  }
  return corpus;
}

}  // namespace biasprobe
