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

#include "biasprobe/csv.hpp"

#include "biasprobe/error.hpp"
#include "io.hpp"

namespace biasprobe {

namespace {

class CsvParser {
 public:
  CsvParser(std::string_view text, std::string_view source) : text_(text), source_(source) {}

  // Next record, or nullopt at end of input.
  std::optional<CsvRecord> next() {
    while (pos_ < text_.size() && at_line_end()) consume_line_end();
    if (pos_ >= text_.size()) return std::nullopt;

    CsvRecord record;
    record.line = line_;
    for (;;) {
      record.fields.push_back(parse_field());
      if (pos_ >= text_.size()) break;
      if (text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      consume_line_end();
      break;
    }
    return record;
  }

 private:
  bool at_line_end() const {
    return text_[pos_] == '\n' || (text_[pos_] == '\r' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n');
  }

  void consume_line_end() {
    if (text_[pos_] == '\r') ++pos_;
    ++pos_;
    ++line_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(std::string(source_) + ": malformed CSV at line " + std::to_string(line_) + ": " + what);
  }

  std::string parse_field() {
    std::string field;
    if (pos_ < text_.size() && text_[pos_] == '"') {
      const std::size_t opened_at = line_;
      ++pos_;
      for (;;) {
        if (pos_ >= text_.size()) {
          throw Error(std::string(source_) + ": malformed CSV: unterminated quoted field starting at line " +
                      std::to_string(opened_at));
        }
        const char c = text_[pos_++];
        if (c == '"') {
          if (pos_ < text_.size() && text_[pos_] == '"') {
            field.push_back('"');
            ++pos_;
            continue;
          }
          break;
        }
        if (c == '\n') ++line_;
        field.push_back(c);
      }
      if (pos_ < text_.size() && text_[pos_] != ',' && !at_line_end()) fail("unexpected character after closing quote");
      return field;
    }
    while (pos_ < text_.size() && text_[pos_] != ',' && !at_line_end()) {
      if (text_[pos_] == '"') fail("quote inside unquoted field");
      field.push_back(text_[pos_++]);
    }
    if (!field.empty() && field.back() == '\r' && pos_ >= text_.size()) field.pop_back();
    return field;
  }

  std::string_view text_;
  std::string_view source_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

std::optional<std::size_t> CsvTable::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

CsvTable parse_csv(std::string_view text, std::string_view source) {
  io::require_utf8(text, source);
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  CsvParser parser(text, source);
  auto header = parser.next();
  if (!header) throw Error(std::string(source) + ": empty file (no header row)");

  CsvTable table;
  table.header = std::move(header->fields);
  std::size_t row_number = 0;
  while (auto record = parser.next()) {
    ++row_number;
    if (record->fields.size() != table.header.size()) {
      throw Error(std::string(source) + ": malformed row " + std::to_string(row_number) + " (line " +
                  std::to_string(record->line) + "): expected " + std::to_string(table.header.size()) +
                  " fields, found " + std::to_string(record->fields.size()));
    }
    table.rows.push_back(std::move(*record));
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw Error("file not found: " + path.string());
  return parse_csv(io::read_file(path), path.string());
}

}  // namespace biasprobe
