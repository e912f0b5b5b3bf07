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

#include "biasprobe/embed.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "biasprobe/error.hpp"
#include "biasprobe/tokenize.hpp"
#include "io.hpp"
#include "unicode.hpp"
#include "logger.hpp"

namespace biasprobe {

EmbeddingSpace::EmbeddingSpace(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw Error("embedding dimension must be positive");
}

void EmbeddingSpace::add(std::string token, std::span<const double> values) {
  if (token.empty()) throw Error("empty token");
  if (unicode::contains_space(token)) throw Error("token contains whitespace: '" + token + "'");
  if (values.size() != dimension_) {
    throw Error("vector for '" + token + "' has " + std::to_string(values.size()) + " components, expected " +
                std::to_string(dimension_));
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw Error("non-finite component in vector for '" + token + "'");
  }
  if (index_.contains(token)) throw Error("duplicate token: '" + token + "'");
  index_.emplace(token, tokens_.size());
  tokens_.push_back(std::move(token));
  data_.insert(data_.end(), values.begin(), values.end());
}

std::span<const double> EmbeddingSpace::vector(std::size_t index) const {
  if (index >= tokens_.size()) throw Error("vector index out of range");
  return {data_.data() + index * dimension_, dimension_};
}

std::optional<std::size_t> EmbeddingSpace::index_of(const std::string& token) const {
  const auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::span<const double>> EmbeddingSpace::find(const std::string& token) const {
  if (auto i = index_of(token)) return vector(*i);
  return std::nullopt;
}

std::optional<std::span<const double>> EmbeddingSpace::lookup(std::string_view token) const {
  return find(normalize(token));
}

bool EmbeddingSpace::has_nonzero_vector() const noexcept {
  return std::any_of(data_.begin(), data_.end(), [](double v) { return v != 0.0; });
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error("dimension mismatch: " + std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  return sum;
}

double norm(std::span<const double> x) { return std::sqrt(dot(x, x)); }

double cosine(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error("dimension mismatch: " + std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  }
  const double xx = dot(x, x);
  const double yy = dot(y, y);
  if (xx == 0.0 || yy == 0.0) throw Error("cosine undefined for a zero-norm vector");
  // sqrt(fl(a * a)) == a, so cosine(x, x) is exactly 1 whenever the product
  // of squared norms stays in range.
  const double product = xx * yy;
  const double denominator =
      std::isnormal(product) ? std::sqrt(product) : std::sqrt(xx) * std::sqrt(yy);
  return std::clamp(dot(x, y) / denominator, -1.0, 1.0);
}

VectorFormat parse_vector_format(std::string_view name) {
  if (name == "word2vec" || name == "word2vec_text") return VectorFormat::word2vec_text;
  if (name == "glove" || name == "glove_text") return VectorFormat::glove_text;
  throw Error("unknown vector format: " + std::string(name) + "; expected word2vec_text or glove_text");
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t end = i;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    if (end > i) fields.push_back(line.substr(i, end - i));
    i = end;
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

struct Line {
  std::string_view text;
  std::size_t number;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t start = 0;
  std::size_t number = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = text.substr(start, end - start);
    if (line.ends_with('\r')) line.remove_suffix(1);
    if (line.find_first_not_of(" \t") != std::string_view::npos) lines.push_back({line, number});
    start = end + 1;
  }
  return lines;
}

}  // namespace

EmbeddingSpace parse_vectors(std::string_view text, const LoadOptions& options, std::string_view source) {
  io::require_utf8(text, source);
  const std::string where(source);
  const auto lines = content_lines(text);
  if (lines.empty()) throw Error(where + ": empty vector file");

  std::size_t first_vector = 0;
  std::size_t expected_count = 0;
  std::size_t dimension = 0;
  if (options.format == VectorFormat::word2vec_text) {
    const auto header = split_fields(lines[0].text);
    if (header.size() != 2 || !parse_number(header[0], expected_count) || !parse_number(header[1], dimension)) {
      throw Error(where + ": line 1: expected header \"<vocabulary size> <dimension>\"");
    }
    if (expected_count == 0 || dimension == 0) throw Error(where + ": header declares an empty space");
    first_vector = 1;
  } else {
    const auto fields = split_fields(lines[0].text);
    if (fields.size() < 2) throw Error(where + ": line " + std::to_string(lines[0].number) + ": no vector components");
    dimension = fields.size() - 1;
  }

  EmbeddingSpace space(dimension);
  space.set_source(where);
  std::unordered_map<std::string, std::size_t> first_seen;
  std::vector<double> values(dimension);
  std::size_t rows = 0;
  for (std::size_t l = first_vector; l < lines.size(); ++l) {
    const auto& [line, number] = lines[l];
    const auto fields = split_fields(line);
    ++rows;
    if (fields.size() - 1 != dimension) {
      throw Error(where + ": inconsistent dimension at line " + std::to_string(number) + ": expected " +
                  std::to_string(dimension) + " components, found " + std::to_string(fields.size() - 1));
    }
    std::string token(fields[0]);
    if (auto [it, inserted] = first_seen.emplace(token, number); !inserted) {
      throw Error(where + ": duplicate token '" + token + "' at line " + std::to_string(number) +
                  " (first seen at line " + std::to_string(it->second) + ")");
    }
    double squared = 0.0;
    for (std::size_t c = 0; c < dimension; ++c) {
      if (!parse_number(fields[c + 1], values[c]) || !std::isfinite(values[c])) {
        throw Error(where + ": non-numeric component '" + std::string(fields[c + 1]) + "' at line " +
                    std::to_string(number));
      }
      squared += values[c] * values[c];
    }
    if (squared == 0.0) {
      if (!options.drop_zero_norm) {
        throw Error(where + ": zero-norm vector for token '" + token + "' at line " + std::to_string(number));
      }
      logger().warn("{}: dropping zero-norm vector for token '{}' at line {}", where, token, number);
      continue;
    }
    space.add(std::move(token), values);
  }

  if (options.format == VectorFormat::word2vec_text && rows != expected_count) {
    throw Error(where + ": expected " + std::to_string(expected_count) + " vectors, found " + std::to_string(rows));
  }
  if (space.empty()) throw Error(where + ": no usable vectors");
  return space;
}

EmbeddingSpace load_vectors(const std::filesystem::path& path, const LoadOptions& options) {
  if (!std::filesystem::exists(path)) throw Error("embeddings file not found: " + path.string());
  return parse_vectors(io::read_file(path), options, path.string());
}

std::string format_vectors(const EmbeddingSpace& space) {
  if (space.empty()) throw Error("refusing to write an empty embedding space (V=0)");
  if (!space.has_nonzero_vector()) throw Error("refusing to write a space whose vectors are all zero");

  std::vector<std::size_t> order(space.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return space.token(a) < space.token(b); });

  std::string out = std::to_string(space.size()) + " " + std::to_string(space.dimension()) + "\n";
  char buf[64];
  for (std::size_t i : order) {
    const std::string& token = space.token(i);
    if (token.empty() || unicode::contains_space(token)) {
      throw Error("token cannot be represented in word2vec text format: '" + token + "'");
    }
    out += token;
    for (double v : space.vector(i)) {
      const auto result = std::to_chars(buf, buf + sizeof buf, v);
      out += ' ';
      out.append(buf, result.ptr);
    }
    out += '\n';
  }
  return out;
}

void save_vectors(const EmbeddingSpace& space, const std::filesystem::path& path) {
  io::write_file(path, format_vectors(space));
}

}  // namespace biasprobe
