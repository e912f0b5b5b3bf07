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
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "biasprobe/embed.hpp"
#include "biasprobe/lexicon.hpp"

namespace biasprobe {

enum class PermutationMethod { automatic, exact, monte_carlo };

std::string_view to_string(PermutationMethod method) noexcept;
PermutationMethod parse_permutation_method(std::string_view name);

/// s(w, A, B) = mean_{a in A} cos(w, a) - mean_{b in B} cos(w, b).
double association(std::span<const double> word, std::span<const std::span<const double>> attrs_a,
                   std::span<const std::span<const double>> attrs_b);
double association(const EmbeddingSpace& space, std::string_view word, const ResolvedWordSet& attrs_a,
                   const ResolvedWordSet& attrs_b);

/// Validated WEAT inputs with every target word's association computed once.
/// Requires |X| = |Y| >= 2, |A| >= 2, |B| >= 2 and disjoint X, Y.
class WeatInput {
 public:
  WeatInput(const EmbeddingSpace& space, ResolvedWordSet targets_x, ResolvedWordSet targets_y,
            ResolvedWordSet attrs_a, ResolvedWordSet attrs_b);

  const ResolvedWordSet& targets_x() const noexcept { return x_; }
  const ResolvedWordSet& targets_y() const noexcept { return y_; }
  const ResolvedWordSet& attrs_a() const noexcept { return a_; }
  const ResolvedWordSet& attrs_b() const noexcept { return b_; }
  std::span<const double> x_associations() const noexcept { return x_assoc_; }
  std::span<const double> y_associations() const noexcept { return y_assoc_; }

 private:
  ResolvedWordSet x_, y_, a_, b_;
  std::vector<double> x_assoc_, y_assoc_;
};

/// S = sum_x s(x) - sum_y s(y), correctly rounded.
double test_statistic(std::span<const double> x_assoc, std::span<const double> y_assoc);
double test_statistic(const WeatInput& input);

/// d = (mean_x s - mean_y s) / stdev_{X u Y} s with the n-1 sample deviation.
/// Throws when every association is equal.
double effect_size(std::span<const double> x_assoc, std::span<const double> y_assoc);
double effect_size(const WeatInput& input);

struct PermutationOptions {
  PermutationMethod method = PermutationMethod::automatic;
  std::uint64_t max_exact = 200'000;
  std::uint64_t iterations = 100'000;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

struct PValue {
  double p = 1.0;
  PermutationMethod method = PermutationMethod::exact;
  std::uint64_t n_evaluated = 0;
  std::optional<std::uint64_t> seed;
};

/// One-sided permutation p-value of S over equal-size re-partitions of X u Y.
/// exact: p = #{S_i >= S} / C(2n, n) over every partition.
/// monte_carlo: p = (1 + #{S_i >= S}) / (1 + iterations); partition i comes
/// from a Fisher-Yates shuffle of the pooled associations seeded with
/// derive_seed(seed, i), so any thread count gives the same p.
/// automatic picks exact iff C(2n, n) <= max_exact.
PValue p_value(std::span<const double> x_assoc, std::span<const double> y_assoc, const PermutationOptions& options);
PValue p_value(const WeatInput& input, const PermutationOptions& options);

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

struct WeatConfig {
  std::size_t min_set_size = 2;
  bool balance = false;
  PermutationOptions permutation;
};

struct WeatResult {
  double statistic = 0.0;
  double effect_size = 0.0;
  double p_value = 1.0;
  PermutationMethod method = PermutationMethod::exact;
  std::uint64_t n_partitions_evaluated = 0;
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::vector<std::string>> dropped_tokens;  // set name -> tokens
  std::map<std::string, double> per_word_associations;

  bool operator==(const WeatResult&) const = default;
};

WeatResult run_weat(const WeatInput& input, const PermutationOptions& options);
/// Resolves the four sets (balancing the targets if configured), then runs.
WeatResult run_weat(const EmbeddingSpace& space, const WordSetSpec& targets_x, const WordSetSpec& targets_y,
                    const WordSetSpec& attrs_a, const WordSetSpec& attrs_b, const WeatConfig& config);

nlohmann::json to_json(const WeatResult& result);
WeatResult weat_result_from_json(const nlohmann::json& json);

}  // namespace biasprobe
