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
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "biasprobe/corpus.hpp"

namespace biasprobe {

/// Token-to-vector map with a fixed dimension. Vectors are stored contiguously
/// in double precision. Spaces are built once (by a loader or a trainer) and
/// then only read, so a const reference can be shared across threads.
class EmbeddingSpace {
 public:
  explicit EmbeddingSpace(std::size_t dimension);

  /// Appends a vector. The token must be non-empty, contain no whitespace and
  /// be new; the vector must have dimension() finite components.
  void add(std::string token, std::span<const double> values);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }

  const std::string& token(std::size_t index) const { return tokens_.at(index); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  std::span<const double> vector(std::size_t index) const;

  /// Exact match on the stored token.
  std::optional<std::size_t> index_of(const std::string& token) const;
  std::optional<std::span<const double>> find(const std::string& token) const;
  /// Normalizes the query (see tokenize.hpp) and then matches exactly.
  std::optional<std::span<const double>> lookup(std::string_view token) const;

  const std::string& language() const noexcept { return language_; }
  void set_language(std::string language) { language_ = std::move(language); }
  const std::optional<Domain>& domain() const noexcept { return domain_; }
  void set_domain(std::optional<Domain> domain) { domain_ = domain; }
  const std::string& source() const noexcept { return source_; }
  void set_source(std::string source) { source_ = std::move(source); }

  bool has_nonzero_vector() const noexcept;

 private:
  std::size_t dimension_;
  std::vector<std::string> tokens_;
  std::vector<double> data_;
  std::unordered_map<std::string, std::size_t> index_;
  std::string language_;
  std::optional<Domain> domain_;
  std::string source_;
};

/// Dot product and Euclidean norm, accumulated in double.
double dot(std::span<const double> x, std::span<const double> y);
double norm(std::span<const double> x);

/// (x . y) / (|x| |y|), clamped to [-1, 1]. Throws on a dimension mismatch
/// or a zero-norm operand.
double cosine(std::span<const double> x, std::span<const double> y);

enum class VectorFormat { word2vec_text, glove_text };

VectorFormat parse_vector_format(std::string_view name);

struct LoadOptions {
  VectorFormat format = VectorFormat::word2vec_text;
  // Zero-norm vectors are a hard error unless this is set, in which case they
  // are dropped with a warning.
  bool drop_zero_norm = false;
};

/// word2vec_text: first line "<V> <m>", then V lines "<token> <c1> ... <cm>".
/// glove_text: the same without the header; m is taken from the first line.
EmbeddingSpace parse_vectors(std::string_view text, const LoadOptions& options = {},
                             std::string_view source = "<memory>");
EmbeddingSpace load_vectors(const std::filesystem::path& path, const LoadOptions& options = {});

/// word2vec_text with tokens in code point order and each component written as
/// the shortest decimal that reads back to the same double.
std::string format_vectors(const EmbeddingSpace& space);
void save_vectors(const EmbeddingSpace& space, const std::filesystem::path& path);

}  // namespace biasprobe
