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

#include <filesystem>
#include <string>
#include <string_view>

namespace biasprobe::io {

// Whole-file read; throws Error naming the path when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

// Throws Error naming the path when it cannot be written.
void write_file(const std::filesystem::path& path, std::string_view bytes);

// Rejects ill-formed UTF-8 with the 1-based line of the first bad byte.
void require_utf8(std::string_view text, std::string_view source);

}  // namespace biasprobe::io
