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

#include "biasprobe/sgns.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "biasprobe/error.hpp"
#include "biasprobe/tokenize.hpp"
#include "logger.hpp"

namespace biasprobe {

namespace {

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// -log sigma(x), stable for large |x|.
double neg_log_sigmoid(double x) {
  if (x >= 0) return std::log1p(std::exp(-x));
  return -x + std::log1p(std::exp(x));
}

void check_dimensions(std::size_t m, std::size_t context, std::span<const std::size_t> negatives) {
  if (context != m) throw Error("sgns: context dimension " + std::to_string(context) + " != center dimension " + std::to_string(m));
  for (std::size_t n : negatives) {
    if (n != m) throw Error("sgns: negative dimension " + std::to_string(n) + " != center dimension " + std::to_string(m));
  }
}

}  // namespace

void SgnsConfig::validate() const {
  auto positive = [](std::size_t v, const char* name) {
    if (v == 0) throw Error(std::string("sgns: ") + name + " must be positive");
  };
  positive(dimension, "dimension");
  positive(window, "window");
  positive(negatives, "negatives");
  positive(epochs, "epochs");
  positive(min_count, "min-count");
  positive(threads, "threads");
  if (!(initial_learning_rate > 0.0)) throw Error("sgns: initial-learning-rate must be positive");
  if (!(min_learning_rate > 0.0) || min_learning_rate > initial_learning_rate) {
    throw Error("sgns: min-learning-rate must be positive and at most initial-learning-rate");
  }
  if (!(subsample_threshold > 0.0)) throw Error("sgns: subsample-threshold must be positive");
}

std::string SgnsConfig::provenance() const {
  std::ostringstream out;
  out << "sgns dimension=" << dimension << " window=" << window << " negatives=" << negatives << " epochs=" << epochs
      << " initial-learning-rate=" << initial_learning_rate << " min-learning-rate=" << min_learning_rate
      << " subsample-threshold=" << subsample_threshold << " min-count=" << min_count << " seed=" << seed
      << " threads=" << threads << " keep-numeric=" << (keep_numeric ? "true" : "false");
  return out.str();
}

nlohmann::json to_json(const SgnsConfig& c) {
  return {
      {"dimension", c.dimension},
      {"window", c.window},
      {"negatives", c.negatives},
      {"epochs", c.epochs},
      {"initial-learning-rate", c.initial_learning_rate},
      {"min-learning-rate", c.min_learning_rate},
      {"subsample-threshold", c.subsample_threshold},
      {"min-count", c.min_count},
      {"seed", c.seed},
      {"threads", c.threads},
      {"keep-numeric", c.keep_numeric},
  };
}

SgnsConfig sgns_config_from_json(const nlohmann::json& json) {
  if (!json.is_object()) throw Error("sgns config must be a JSON object");
  SgnsConfig c;
  try {
    for (const auto& [raw_key, value] : json.items()) {
      std::string key = raw_key;
      std::replace(key.begin(), key.end(), '_', '-');
      if (key == "dimension") c.dimension = value.get<std::size_t>();
      else if (key == "window") c.window = value.get<std::size_t>();
      else if (key == "negatives") c.negatives = value.get<std::size_t>();
      else if (key == "epochs") c.epochs = value.get<std::size_t>();
      else if (key == "initial-learning-rate") c.initial_learning_rate = value.get<double>();
      else if (key == "min-learning-rate") c.min_learning_rate = value.get<double>();
      else if (key == "subsample-threshold") c.subsample_threshold = value.get<double>();
      else if (key == "min-count") c.min_count = value.get<std::size_t>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "threads") c.threads = value.get<std::size_t>();
      else if (key == "keep-numeric") c.keep_numeric = value.get<bool>();
      else throw Error("sgns config: unknown key '" + raw_key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("sgns config: ") + e.what());
  }
  c.validate();
  return c;
}

std::optional<std::size_t> Vocab::index_of(const std::string& token) const {
  const auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Vocab::sample_noise(SplitMix64& rng) const {
  const double u = rng.uniform_double();
  const auto it = std::upper_bound(noise_cdf_.begin(), noise_cdf_.end(), u);
  const auto index = static_cast<std::size_t>(it - noise_cdf_.begin());
  return std::min(index, noise_cdf_.size() - 1);
}

double Vocab::keep_probability(std::size_t index, double threshold) const {
  const double frequency = static_cast<double>(count(index)) / static_cast<double>(total_tokens_);
  const double ratio = threshold / frequency;
  return std::min(1.0, std::sqrt(ratio) + ratio);
}

Vocab build_vocab(const TokenizedCorpus& corpus, std::size_t min_count, bool keep_numeric) {
  if (min_count == 0) throw Error("min-count must be positive");
  std::unordered_map<std::string, std::uint64_t> counts;
  std::uint64_t seen = 0;
  for (const auto& document : corpus) {
    for (const auto& token : document) {
      ++counts[token];
      ++seen;
    }
  }
  if (seen == 0) throw Error("cannot build a vocabulary from an empty corpus");

  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (auto& [token, count] : counts) {
    if (count < min_count) continue;
    if (!keep_numeric && is_numeric_token(token)) continue;
    kept.emplace_back(token, count);
  }
  if (kept.empty()) {
    throw Error("empty vocabulary: no token occurs at least " + std::to_string(min_count) + " times");
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });

  Vocab vocab;
  vocab.min_count_ = min_count;
  std::vector<double> weights;
  for (auto& [token, count] : kept) {
    vocab.index_.emplace(token, vocab.tokens_.size());
    vocab.tokens_.push_back(std::move(token));
    vocab.counts_.push_back(count);
    vocab.total_tokens_ += count;
    weights.push_back(std::pow(static_cast<double>(count), 0.75));
  }
  double total_weight = 0.0;
  for (double w : weights) total_weight += w;
  double running = 0.0;
  for (double w : weights) {
    vocab.noise_.push_back(w / total_weight);
    running += w;
    vocab.noise_cdf_.push_back(running / total_weight);
  }
  vocab.noise_cdf_.back() = 1.0;
  return vocab;
}

SgnsGradient sgns_gradient(std::span<const double> center, std::span<const double> context,
                           std::span<const std::span<const double>> negatives) {
  const std::size_t m = center.size();
  std::vector<std::size_t> dims;
  for (auto n : negatives) dims.push_back(n.size());
  check_dimensions(m, context.size(), dims);

  SgnsGradient g;
  g.center.assign(m, 0.0);
  auto accumulate = [&](std::span<const double> output, bool positive) {
    const double score = dot(center, output);
    g.loss += neg_log_sigmoid(positive ? score : -score);
    // d/ds of -log sigma(s) is sigma(s) - 1; of -log sigma(-s) it is sigma(s).
    const double coeff = positive ? sigmoid(score) - 1.0 : sigmoid(score);
    for (std::size_t i = 0; i < m; ++i) g.center[i] += coeff * output[i];
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = coeff * center[i];
    g.outputs.push_back(std::move(out));
  };
  accumulate(context, true);
  for (auto n : negatives) accumulate(n, false);
  return g;
}

double sgns_step(std::span<double> center, std::span<double> context, std::span<const std::span<double>> negatives,
                 double lr, SgnsWorkspace& ws) {
  const std::size_t m = center.size();
  if (context.size() != m) throw Error("sgns: context dimension " + std::to_string(context.size()) + " != center dimension " + std::to_string(m));
  for (auto n : negatives) {
    if (n.size() != m) throw Error("sgns: negative dimension " + std::to_string(n.size()) + " != center dimension " + std::to_string(m));
  }
  if (!(lr > 0.0)) throw Error("sgns: learning rate must be positive");

  ws.center_gradient.assign(m, 0.0);
  ws.coefficients.resize(negatives.size() + 1);
  double loss = 0.0;

  // Pass 1: loss and coefficients from the incoming vectors.
  auto score = [&](std::span<const double> output, bool positive, double& coeff) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += center[i] * output[i];
    loss += neg_log_sigmoid(positive ? s : -s);
    coeff = positive ? sigmoid(s) - 1.0 : sigmoid(s);
    for (std::size_t i = 0; i < m; ++i) ws.center_gradient[i] += coeff * output[i];
  };
  score(context, true, ws.coefficients[0]);
  for (std::size_t k = 0; k < negatives.size(); ++k) score(negatives[k], false, ws.coefficients[k + 1]);

  // Pass 2: descend. Output updates use the pre-step center.
  auto descend = [&](std::span<double> output, double coeff) {
    const double scale = lr * coeff;
    for (std::size_t i = 0; i < m; ++i) output[i] -= scale * center[i];
  };
  descend(context, ws.coefficients[0]);
  for (std::size_t k = 0; k < negatives.size(); ++k) descend(negatives[k], ws.coefficients[k + 1]);
  for (std::size_t i = 0; i < m; ++i) center[i] -= lr * ws.center_gradient[i];
  return loss;
}

double sgns_step(std::span<double> center, std::span<double> context, std::span<const std::span<double>> negatives,
                 double lr) {
  SgnsWorkspace ws;
  return sgns_step(center, context, negatives, lr, ws);
}

namespace {

struct Matrices {
  std::size_t dimension;
  std::vector<double> input;
  std::vector<double> output;

  std::span<double> in(std::size_t i) { return {input.data() + i * dimension, dimension}; }
  std::span<double> out(std::size_t i) { return {output.data() + i * dimension, dimension}; }
};

struct EpochTally {
  double loss = 0.0;
  std::uint64_t steps = 0;
};

class Trainer {
 public:
  Trainer(const Vocab& vocab, const SgnsConfig& config, std::vector<std::vector<std::uint32_t>> documents)
      : vocab_(vocab), config_(config), documents_(std::move(documents)) {
    matrices_.dimension = config.dimension;
    const std::size_t cells = vocab.size() * config.dimension;
    matrices_.input.resize(cells);
    matrices_.output.assign(cells, 0.0);
    SplitMix64 init(derive_seed(config.seed, 0));
    const double scale = 1.0 / static_cast<double>(config.dimension);
    for (double& v : matrices_.input) v = (init.uniform_double() - 0.5) * scale;
    for (const auto& d : documents_) words_per_epoch_ += d.size();
  }

  std::vector<double> run() {
    std::vector<double> losses;
    for (std::size_t epoch = 0; epoch < config_.epochs; ++epoch) {
      EpochTally tally = config_.threads == 1 ? run_serial(epoch) : run_parallel(epoch);
      losses.push_back(tally.steps == 0 ? 0.0 : tally.loss / static_cast<double>(tally.steps));
      logger().debug("sgns epoch {} mean loss {}", epoch + 1, losses.back());
    }
    return losses;
  }

  std::vector<double> take_input() { return std::move(matrices_.input); }

 private:
  double learning_rate(std::uint64_t processed) const {
    const double total = static_cast<double>(words_per_epoch_ * config_.epochs) + 1.0;
    const double lr = config_.initial_learning_rate * (1.0 - static_cast<double>(processed) / total);
    return std::max(lr, config_.min_learning_rate);
  }

  void subsample(const std::vector<std::uint32_t>& document, SplitMix64& rng, std::vector<std::uint32_t>& kept) const {
    kept.clear();
    for (std::uint32_t w : document) {
      const double p = vocab_.keep_probability(w, config_.subsample_threshold);
      if (p >= 1.0 || rng.uniform_double() < p) kept.push_back(w);
    }
  }

  template <typename Step>
  void visit_pairs(const std::vector<std::uint32_t>& sentence, SplitMix64& rng, Step&& step) const {
    const auto n = sentence.size();
    for (std::size_t pos = 0; pos < n; ++pos) {
      const auto radius = static_cast<std::size_t>(1 + rng.uniform_index(config_.window));
      const std::size_t lo = pos >= radius ? pos - radius : 0;
      const std::size_t hi = std::min(n - 1, pos + radius);
      for (std::size_t j = lo; j <= hi; ++j) {
        if (j != pos) step(pos, sentence[pos], sentence[j]);
      }
    }
  }

  void draw_negatives(std::uint32_t context, SplitMix64& rng, std::vector<std::uint32_t>& out) const {
    out.clear();
    for (std::size_t k = 0; k < config_.negatives; ++k) {
      const auto w = static_cast<std::uint32_t>(vocab_.sample_noise(rng));
      if (w != context) out.push_back(w);
    }
  }

  EpochTally run_serial(std::size_t epoch) {
    SplitMix64 rng(derive_seed(config_.seed, epoch + 1));
    EpochTally tally;
    std::vector<std::uint32_t> sentence, negative_ids;
    std::vector<std::span<double>> negative_spans;
    SgnsWorkspace ws;
    std::uint64_t processed = epoch * words_per_epoch_;
    for (const auto& document : documents_) {
      subsample(document, rng, sentence);
      const std::uint64_t base = processed;
      visit_pairs(sentence, rng, [&](std::size_t pos, std::uint32_t center, std::uint32_t context) {
        const double lr = learning_rate(base + pos);
        draw_negatives(context, rng, negative_ids);
        negative_spans.clear();
        for (auto id : negative_ids) negative_spans.push_back(matrices_.out(id));
        tally.loss += sgns_step(matrices_.in(center), matrices_.out(context), negative_spans, lr, ws);
        ++tally.steps;
      });
      processed += document.size();
    }
    return tally;
  }

  // Hogwild: each worker copies the rows it touches with relaxed atomic loads,
  // steps on the copies, and adds the deltas back with relaxed stores. Lost
  // updates are possible and accepted.
  EpochTally run_parallel(std::size_t epoch) {
    const std::size_t workers = config_.threads;
    const std::size_t m = config_.dimension;
    std::vector<EpochTally> tallies(workers);
    std::atomic<std::uint64_t> processed{epoch * words_per_epoch_};

    auto work = [&](std::size_t worker) {
      SplitMix64 rng(derive_seed(derive_seed(config_.seed, epoch + 1), worker + 1));
      std::vector<std::uint32_t> sentence, negative_ids;
      SgnsWorkspace ws;
      std::vector<double> local, before;
      std::vector<std::span<double>> negative_spans;
      auto load = [&](std::span<double> row, double* dst) {
        for (std::size_t i = 0; i < m; ++i) dst[i] = std::atomic_ref<double>(row[i]).load(std::memory_order_relaxed);
      };
      auto store_delta = [&](std::span<double> row, const double* now, const double* was) {
        for (std::size_t i = 0; i < m; ++i) {
          std::atomic_ref<double> cell(row[i]);
          cell.store(cell.load(std::memory_order_relaxed) + (now[i] - was[i]), std::memory_order_relaxed);
        }
      };
      for (std::size_t d = worker; d < documents_.size(); d += workers) {
        const auto& document = documents_[d];
        subsample(document, rng, sentence);
        const std::uint64_t base = processed.load(std::memory_order_relaxed);
        visit_pairs(sentence, rng, [&](std::size_t pos, std::uint32_t center, std::uint32_t context) {
          const double lr = learning_rate(base + pos);
          draw_negatives(context, rng, negative_ids);
          const std::size_t rows = 2 + negative_ids.size();
          local.resize(rows * m);
          before.resize(rows * m);
          std::vector<std::span<double>> targets;
          targets.push_back(matrices_.in(center));
          targets.push_back(matrices_.out(context));
          for (auto id : negative_ids) targets.push_back(matrices_.out(id));
          for (std::size_t r = 0; r < rows; ++r) load(targets[r], local.data() + r * m);
          std::copy(local.begin(), local.end(), before.begin());
          negative_spans.clear();
          for (std::size_t r = 2; r < rows; ++r) negative_spans.emplace_back(local.data() + r * m, m);
          tallies[worker].loss += sgns_step(std::span<double>(local.data(), m), std::span<double>(local.data() + m, m),
                                            negative_spans, lr, ws);
          ++tallies[worker].steps;
          for (std::size_t r = 0; r < rows; ++r) store_delta(targets[r], local.data() + r * m, before.data() + r * m);
        });
        processed.fetch_add(document.size(), std::memory_order_relaxed);
      }
    };

    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    EpochTally total;
    for (const auto& t : tallies) {
      total.loss += t.loss;
      total.steps += t.steps;
    }
    return total;
  }

  const Vocab& vocab_;
  const SgnsConfig& config_;
  std::vector<std::vector<std::uint32_t>> documents_;
  Matrices matrices_;
  std::uint64_t words_per_epoch_ = 0;
};

}  // namespace

TrainResult train_sgns(const TokenizedCorpus& corpus, const SgnsConfig& config) {
  config.validate();
  Vocab vocab = build_vocab(corpus, config.min_count, config.keep_numeric);

  std::vector<std::vector<std::uint32_t>> documents;
  documents.reserve(corpus.size());
  for (const auto& doc : corpus) {
    std::vector<std::uint32_t> ids;
    for (const auto& token : doc) {
      if (auto i = vocab.index_of(token)) ids.push_back(static_cast<std::uint32_t>(*i));
    }
    if (ids.size() > 1) documents.push_back(std::move(ids));
  }

  Trainer trainer(vocab, config, std::move(documents));
  std::vector<double> losses = trainer.run();
  const std::vector<double> input = trainer.take_input();

  EmbeddingSpace space(config.dimension);
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    space.add(vocab.token(i), std::span<const double>(input.data() + i * config.dimension, config.dimension));
  }
  space.set_source(config.provenance());
  return TrainResult{std::move(space), std::move(vocab), std::move(losses)};
}

}  // namespace biasprobe
