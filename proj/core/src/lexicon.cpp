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

#include "biasprobe/lexicon.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

#include "biasprobe/error.hpp"
#include "biasprobe/rng.hpp"
#include "biasprobe/tokenize.hpp"
#include "io.hpp"
#include "unicode.hpp"
#include "logger.hpp"

namespace biasprobe {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename F>
void for_each_content_line(std::string_view text, F&& f) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::size_t start = 0;
  std::size_t number = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    const std::string_view line = trim(text.substr(start, end - start));
    if (!line.empty() && line.front() != '#') f(line, number);
    if (end == text.size()) break;
    start = end + 1;
  }
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

}  // namespace

WordSetSpec make_wordset(std::string name, std::string language, const std::vector<std::string>& tokens) {
  WordSetSpec spec{std::move(name), std::move(language), {}};
  std::set<std::string> seen;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string token = normalize(trim(tokens[i]));
    if (token.empty()) throw Error("word set '" + spec.name + "': empty token at position " + std::to_string(i + 1));
    if (unicode::contains_space(token)) {
      throw Error("word set '" + spec.name + "': token contains whitespace: '" + token + "'");
    }
    if (seen.insert(token).second) spec.tokens.push_back(std::move(token));
  }
  if (spec.tokens.empty()) throw Error("word set '" + spec.name + "' is empty");
  return spec;
}

WordSetSpec parse_wordset(std::string_view text, std::string name, std::string language) {
  io::require_utf8(text, name);
  WordSetSpec spec{std::move(name), std::move(language), {}};
  std::set<std::string> seen;
  for_each_content_line(text, [&](std::string_view line, std::size_t number) {
    std::string token = normalize(line);
    if (unicode::contains_space(token)) {
      throw Error("word set '" + spec.name + "': line " + std::to_string(number) + ": token contains whitespace: '" +
                  std::string(line) + "'");
    }
    if (!token.empty() && seen.insert(token).second) spec.tokens.push_back(std::move(token));
  });
  if (spec.tokens.empty()) throw Error("word set '" + spec.name + "' is empty after removing comments and blanks");
  return spec;
}

WordSetSpec load_wordset(const std::filesystem::path& path, std::string name, std::string language) {
  if (!std::filesystem::exists(path)) throw Error("word set file not found: " + path.string());
  try {
    return parse_wordset(io::read_file(path), std::move(name), std::move(language));
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

ResolvedWordSet resolve(const EmbeddingSpace& space, const WordSetSpec& spec, std::size_t min_size) {
  if (min_size < 2) throw Error("minimum word set size must be at least 2");
  if (spec.tokens.size() < min_size) {
    throw Error("word set '" + spec.name + "' has " + std::to_string(spec.tokens.size()) +
                " tokens, fewer than the minimum " + std::to_string(min_size));
  }
  ResolvedWordSet resolved{spec, {}, {}};
  for (const auto& token : spec.tokens) {
    (space.lookup(token) ? resolved.found : resolved.dropped).push_back(token);
  }
  if (!resolved.dropped.empty()) {
    logger().warn("word set '{}': {} of {} tokens not in vocabulary: {}", spec.name, resolved.dropped.size(),
                  spec.tokens.size(), join(resolved.dropped));
  }
  if (resolved.found.size() < min_size) {
    throw Error("word set '" + spec.name + "' resolved to " + std::to_string(resolved.found.size()) + " < " +
                std::to_string(min_size) + " tokens; dropped: " + join(resolved.dropped));
  }
  return resolved;
}

std::pair<ResolvedWordSet, ResolvedWordSet> balance(ResolvedWordSet x, ResolvedWordSet y, std::uint64_t seed) {
  if (x.found.size() < 2 || y.found.size() < 2) throw Error("balance requires at least 2 found tokens per set");
  if (x.found.size() == y.found.size()) return {std::move(x), std::move(y)};

  ResolvedWordSet& larger = x.found.size() > y.found.size() ? x : y;
  const std::size_t target = std::min(x.found.size(), y.found.size());

  std::vector<std::size_t> order(larger.found.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  SplitMix64 rng(seed);
  shuffle(std::span<std::size_t>(order), rng);
  std::vector<bool> keep(order.size(), false);
  for (std::size_t i = 0; i < target; ++i) keep[order[i]] = true;

  std::vector<std::string> kept;
  for (std::size_t i = 0; i < larger.found.size(); ++i) {
    (keep[i] ? kept : larger.dropped).push_back(larger.found[i]);
  }
  larger.found = std::move(kept);
  logger().info("balanced word set '{}' down to {} tokens", larger.spec.name, target);
  return {std::move(x), std::move(y)};
}

GenderPairList parse_pairs(std::string_view text, std::string language, std::string_view source) {
  io::require_utf8(text, source);
  GenderPairList list{std::move(language), {}};
  std::set<std::string> masculine, feminine;
  for_each_content_line(text, [&](std::string_view line, std::size_t number) {
    const auto comma = line.find(',');
    const auto where = std::string(source) + ": line " + std::to_string(number);
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw Error(where + ": expected 'masculine,feminine'");
    }
    std::string m = normalize(trim(line.substr(0, comma)));
    std::string f = normalize(trim(line.substr(comma + 1)));
    if (m.empty() || f.empty() || unicode::contains_space(m) || unicode::contains_space(f)) {
      throw Error(where + ": each side must be a single non-empty token");
    }
    masculine.insert(m);
    feminine.insert(f);
    list.pairs.emplace_back(std::move(m), std::move(f));
  });
  if (list.pairs.empty()) throw Error(std::string(source) + ": no gender pairs");
  for (const auto& m : masculine) {
    if (feminine.contains(m)) throw Error(std::string(source) + ": token '" + m + "' appears as both masculine and feminine");
  }
  return list;
}

GenderPairList load_pairs(const std::filesystem::path& path, std::string language) {
  if (!std::filesystem::exists(path)) throw Error("pair list file not found: " + path.string());
  return parse_pairs(io::read_file(path), std::move(language), path.string());
}

std::filesystem::path data_directory() {
  if (const char* env = std::getenv("BIASPROBE_DATA_DIR"); env != nullptr && *env != '\0') return env;
  for (const char* candidate : {BIASPROBE_SOURCE_DATA_DIR, BIASPROBE_INSTALL_DATA_DIR}) {
    if (std::filesystem::is_directory(candidate)) return candidate;
  }
  return BIASPROBE_INSTALL_DATA_DIR;
}

std::filesystem::path locate_data_file(std::string_view name_or_path, std::string_view language,
                                       std::string_view extension) {
  const std::filesystem::path direct(name_or_path);
  if (std::filesystem::is_regular_file(direct)) return direct;
  const auto bundled = data_directory() / std::string(language) / (std::string(name_or_path) + std::string(extension));
  if (std::filesystem::is_regular_file(bundled)) return bundled;
  throw Error("no such file or bundled " + std::string(language) + " data set: " + std::string(name_or_path) +
              " (looked in " + (data_directory() / std::string(language)).string() + ")");
}

}  // namespace biasprobe
