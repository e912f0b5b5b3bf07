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
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "biasprobe/embed.hpp"
#include "biasprobe/rng.hpp"

namespace biasprobe {

/// Tokenized documents. Context windows never cross a document boundary.
using TokenizedCorpus = std::vector<std::vector<std::string>>;

struct SgnsConfig {
  std::size_t dimension = 100;
  std::size_t window = 5;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  double initial_learning_rate = 0.025;
  double min_learning_rate = 1e-4;
  double subsample_threshold = 1e-4;
  std::size_t min_count = 5;
  std::uint64_t seed = 1;
  // 1 = deterministic. More threads train shards of the corpus concurrently
  // with unsynchronized (Hogwild-style) updates; results then vary run to run.
  std::size_t threads = 1;
  // Numeric tokens ("2019", "3.14") are left out of the vocabulary unless set.
  bool keep_numeric = false;

  void validate() const;
  /// Human-readable summary recorded as the trained space's source.
  std::string provenance() const;
};

/// Keys are the CLI flag names: "dimension", "window", "negatives", "epochs",
/// "initial-learning-rate", "min-learning-rate", "subsample-threshold",
/// "min-count", "seed", "threads", "keep-numeric".
nlohmann::json to_json(const SgnsConfig& config);
SgnsConfig sgns_config_from_json(const nlohmann::json& json);

class Vocab {
 public:
  std::size_t size() const noexcept { return tokens_.size(); }
  const std::string& token(std::size_t index) const { return tokens_.at(index); }
  std::uint64_t count(std::size_t index) const { return counts_.at(index); }
  std::optional<std::size_t> index_of(const std::string& token) const;

  /// Sum of the counts of retained tokens.
  std::uint64_t total_tokens() const noexcept { return total_tokens_; }
  std::size_t min_count() const noexcept { return min_count_; }

  /// P(i) proportional to count(i)^0.75.
  std::span<const double> noise_distribution() const noexcept { return noise_; }
  /// Draws from noise_distribution() by inverse CDF on one uniform double.
  std::size_t sample_noise(SplitMix64& rng) const;

  /// Probability of keeping one occurrence of token `index` under frequent-word
  /// subsampling with threshold t: min(1, sqrt(t/f) + t/f), f = count/total.
  double keep_probability(std::size_t index, double threshold) const;

 private:
  friend Vocab build_vocab(const TokenizedCorpus&, std::size_t, bool);

  std::vector<std::string> tokens_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> noise_;
  std::vector<double> noise_cdf_;
  std::uint64_t total_tokens_ = 0;
  std::size_t min_count_ = 1;
};

/// Counts tokens, keeps those with count >= min_count, and indexes them by
/// descending count with ties in lexicographic order.
Vocab build_vocab(const TokenizedCorpus& corpus, std::size_t min_count, bool keep_numeric = false);

/// Loss and gradients of
///   L = -log sigma(u_ctx . v) - sum_neg log sigma(-u_neg . v)
/// with respect to the center vector v and each output vector
/// (context first, then negatives in order).
struct SgnsGradient {
  double loss = 0.0;
  std::vector<double> center;
  std::vector<std::vector<double>> outputs;
};

SgnsGradient sgns_gradient(std::span<const double> center, std::span<const double> context,
                           std::span<const std::span<const double>> negatives);

/// Reusable buffers for sgns_step.
struct SgnsWorkspace {
  std::vector<double> center_gradient;
  std::vector<double> coefficients;
};

/// One SGD step on L with learning rate lr. All gradients are taken at the
/// incoming vectors, so repeated negatives accumulate exactly. Returns the
/// loss before the update.
double sgns_step(std::span<double> center, std::span<double> context, std::span<const std::span<double>> negatives,
                 double lr, SgnsWorkspace& workspace);
double sgns_step(std::span<double> center, std::span<double> context, std::span<const std::span<double>> negatives,
                 double lr);

struct TrainResult {
  EmbeddingSpace space;
  Vocab vocab;
  std::vector<double> epoch_losses;  // mean per-step loss of each epoch
};

/// Skip-gram with negative sampling. Input vectors start uniform in
/// [-0.5/m, 0.5/m), output vectors at zero; learning rate decays linearly
/// from initial to min over all epochs; window radius is drawn uniformly from
/// 1..window per position; each pair draws `negatives` noise words (draws equal
/// to the context word are skipped). The input matrix is returned.
TrainResult train_sgns(const TokenizedCorpus& corpus, const SgnsConfig& config);

}  // namespace biasprobe
