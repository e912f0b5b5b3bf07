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

#include "biasprobe/tokenize.hpp"

#include <array>

#include "unicode.hpp"

namespace biasprobe {

namespace {

constexpr char32_t kZeroWidthNonJoiner = U'\u200C';
constexpr char32_t kZeroWidthJoiner = U'\u200D';

bool is_joiner(char32_t c) { return c == kZeroWidthJoiner || c == kZeroWidthNonJoiner; }

bool is_hyphen(char32_t c) { return c == U'-' || c == U'\u2010' || c == U'\u2011'; }

ScriptClass classify(char32_t c) {
  if (unicode::is_digit(c)) return ScriptClass::digit;
  if (unicode::is_latin(c)) return ScriptClass::latin;
  if (unicode::is_devanagari(c)) return ScriptClass::devanagari;
  return ScriptClass::other;
}

ScriptClass classify(std::u32string_view token) {
  std::array<std::size_t, 4> counts{};
  for (char32_t c : token) ++counts[static_cast<std::size_t>(classify(c))];
  constexpr std::array order{ScriptClass::latin, ScriptClass::devanagari, ScriptClass::digit, ScriptClass::other};
  ScriptClass best = ScriptClass::other;
  std::size_t best_count = 0;
  for (ScriptClass cls : order) {
    if (counts[static_cast<std::size_t>(cls)] > best_count) {
      best = cls;
      best_count = counts[static_cast<std::size_t>(cls)];
    }
  }
  return best;
}

std::u32string_view strip_punct(std::u32string_view piece) {
  while (!piece.empty() && unicode::is_punct(piece.front())) piece.remove_prefix(1);
  while (!piece.empty() && unicode::is_punct(piece.back())) piece.remove_suffix(1);
  return piece;
}

}  // namespace

void ScriptHistogram::add(ScriptClass cls) noexcept {
  switch (cls) {
    case ScriptClass::latin: ++latin; break;
    case ScriptClass::devanagari: ++devanagari; break;
    case ScriptClass::digit: ++digit; break;
    case ScriptClass::other: ++other; break;
  }
}

std::string normalize(std::string_view text) {
  std::u32string cps = unicode::decode(unicode::nfc(text));
  for (char32_t& c : cps) {
    if (unicode::is_latin(c)) c = unicode::to_lower(c);
  }

  std::u32string out;
  out.reserve(cps.size());
  for (std::size_t i = 0; i < cps.size();) {
    if (!is_joiner(cps[i])) {
      out.push_back(cps[i++]);
      continue;
    }
    std::size_t end = i;
    while (end < cps.size() && is_joiner(cps[end])) ++end;
    const bool devanagari_before = i > 0 && unicode::is_devanagari(cps[i - 1]);
    const bool devanagari_after = end < cps.size() && unicode::is_devanagari(cps[end]);
    if (devanagari_before && devanagari_after) out.append(cps, i, end - i);
    i = end;
  }
  return unicode::nfc(unicode::encode(out));
}

TokenStream tokenize(std::string_view text) {
  TokenStream stream;
  const std::u32string cps = unicode::decode(normalize(text));
  const std::u32string_view all(cps);

  auto emit = [&stream](std::u32string_view piece) {
    piece = strip_punct(piece);
    if (piece.empty()) return;
    stream.script_histogram.add(classify(piece));
    stream.tokens.push_back(unicode::encode(piece));
  };

  std::size_t i = 0;
  while (i < all.size()) {
    while (i < all.size() && unicode::is_space(all[i])) ++i;
    std::size_t end = i;
    while (end < all.size() && !unicode::is_space(all[end])) ++end;
    if (end == i) break;
    const std::u32string_view word = all.substr(i, end - i);
    i = end;

    bool has_latin_letter = false;
    for (char32_t c : word) has_latin_letter = has_latin_letter || unicode::is_latin_letter(c);
    if (!has_latin_letter) {
      emit(word);
      continue;
    }
    std::size_t start = 0;
    for (std::size_t k = 0; k <= word.size(); ++k) {
      if (k == word.size() || is_hyphen(word[k])) {
        emit(word.substr(start, k - start));
        start = k + 1;
      }
    }
  }
  return stream;
}

ScriptClass classify_token(std::string_view token) { return classify(unicode::decode(token)); }

bool is_numeric_token(std::string_view token) {
  bool any_digit = false;
  for (char32_t c : unicode::decode(token)) {
    if (unicode::is_digit(c)) {
      any_digit = true;
    } else if (!unicode::is_punct(c)) {
      return false;
    }
  }
  return any_digit;
}

}  // namespace biasprobe
