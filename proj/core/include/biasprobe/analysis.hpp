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
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "biasprobe/embed.hpp"
#include "biasprobe/lexicon.hpp"

namespace biasprobe {

enum class DirectionMethod { mean_difference, first_principal_component };

std::string_view to_string(DirectionMethod method) noexcept;
DirectionMethod parse_direction_method(std::string_view name);

/// Unit vector along the masculine-feminine axis of a space.
struct GenderDirection {
  std::vector<double> vector;
  std::vector<std::pair<std::string, std::string>> pairs_used;
  std::vector<std::pair<std::string, std::string>> pairs_dropped;
  DirectionMethod method = DirectionMethod::mean_difference;
  std::size_t iterations = 0;  // power iterations (principal component only)
};

/// mean_difference: normalized mean of (v_masc - v_fem) over the pairs found
/// in the space.
/// first_principal_component: top eigenvector of sum_i d_i d_i^T over those
/// differences (uncentered, so identical differences give their own
/// direction), by power iteration from the mean difference until the
/// Rayleigh quotient changes by at most 1e-9 relative, capped at 1000
/// iterations; signed so the mean difference projects non-negatively.
GenderDirection gender_direction(const EmbeddingSpace& space, const GenderPairList& pairs, DirectionMethod method);

struct ScoredToken {
  std::string token;
  double score = 0.0;

  bool operator==(const ScoredToken&) const = default;
};

struct GenderedNeighbors {
  std::vector<ScoredToken> masculine;  // highest positive cosines first
  std::vector<ScoredToken> feminine;   // most negative cosines first
  bool truncated = false;              // k exceeded the eligible vocabulary
};

using TokenFilter = std::function<bool(std::string_view)>;

/// Scores every token by cosine with the direction, leaving out the pair
/// words the direction was built from, zero vectors, and tokens rejected by
/// `filter`. Ties break lexicographically.
GenderedNeighbors gendered_neighbors(const EmbeddingSpace& space, const GenderDirection& direction, std::size_t k,
                                     const TokenFilter& filter = {});

nlohmann::json to_json(const GenderDirection& direction);
nlohmann::json to_json(const ScoredToken& token);
nlohmann::json to_json(const GenderedNeighbors& neighbors);
std::vector<ScoredToken> scored_tokens_from_json(const nlohmann::json& json);

}  // namespace biasprobe
