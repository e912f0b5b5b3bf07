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
#include <string>
#include <string_view>
#include <vector>

namespace biasprobe {

enum class ScriptClass { latin, devanagari, digit, other };

struct ScriptHistogram {
  std::size_t latin = 0;
  std::size_t devanagari = 0;
  std::size_t digit = 0;
  std::size_t other = 0;

  void add(ScriptClass cls) noexcept;
  std::size_t total() const noexcept { return latin + devanagari + digit + other; }
  bool operator==(const ScriptHistogram&) const = default;
};

struct TokenStream {
  std::vector<std::string> tokens;
  ScriptHistogram script_histogram;
};

/// NFC, Latin letters lowercased, and zero-width (non-)joiners removed unless
/// the run of joiners sits between two Devanagari code points. Idempotent.
std::string normalize(std::string_view text);

/// Word-level tokenization of normalized text. Splits on Unicode whitespace,
/// splits tokens containing Latin letters on hyphens, strips leading and
/// trailing punctuation (general category P*, danda included) and drops
/// tokens that were pure punctuation. Input is normalized first.
TokenStream tokenize(std::string_view text);

/// Majority code point class of a token. Ties resolve in the order latin,
/// devanagari, digit, other.
ScriptClass classify_token(std::string_view token);

/// True for tokens made only of decimal digits and punctuation, with at least
/// one digit ("2019", "3.14", "१२").
bool is_numeric_token(std::string_view token);

}  // namespace biasprobe
