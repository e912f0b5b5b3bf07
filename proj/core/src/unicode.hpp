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
#include <optional>
#include <string>
#include <string_view>

namespace biasprobe::unicode {

// Byte offset of the first ill-formed UTF-8 sequence, if any.
std::optional<std::size_t> first_invalid_utf8(std::string_view text);

// Decodes UTF-8; ill-formed sequences become U+FFFD.
std::u32string decode(std::string_view text);
std::string encode(std::u32string_view text);

std::string nfc(std::string_view text);

bool is_space(char32_t c);
bool is_punct(char32_t c);
bool is_digit(char32_t c);
bool is_latin(char32_t c);
bool is_latin_letter(char32_t c);
bool is_devanagari(char32_t c);
char32_t to_lower(char32_t c);

bool contains_space(std::string_view text);

}  // namespace biasprobe::unicode
