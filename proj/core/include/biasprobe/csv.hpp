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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace biasprobe {

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based physical line where the record starts
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<CsvRecord> rows;

  std::optional<std::size_t> column_index(std::string_view name) const;
};

/// RFC 4180 comma-separated values: header row required, fields may be
/// double-quoted (with "" escaping a quote and embedded newlines allowed),
/// CRLF or LF line endings, optional UTF-8 byte order mark. Entirely empty
/// lines are skipped. Every row must have as many fields as the header.
CsvTable parse_csv(std::string_view text, std::string_view source = "<memory>");
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace biasprobe
