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

#include "biasprobe/weat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <thread>

#include "biasprobe/error.hpp"
#include "biasprobe/numeric.hpp"
#include "biasprobe/rng.hpp"

namespace biasprobe {

namespace {

double mean_cosine(std::span<const double> word, std::span<const std::span<const double>> attrs) {
  ExactSum sum;
  for (auto a : attrs) sum.add(cosine(word, a));
  return sum.value() / static_cast<double>(attrs.size());
}

std::vector<std::span<const double>> vectors_of(const EmbeddingSpace& space, const ResolvedWordSet& set) {
  std::vector<std::span<const double>> out;
  out.reserve(set.found.size());
  for (const auto& token : set.found) {
    auto v = space.lookup(token);
    if (!v) throw Error("token '" + token + "' of set '" + set.spec.name + "' is not in the embedding space");
    out.push_back(*v);
  }
  return out;
}

void require_equal_sizes(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error("WEAT needs target sets of equal size >= 2 (got " + std::to_string(x.size()) + " and " +
                std::to_string(y.size()) + ")");
  }
}

// Sum of x (positive) and y (negated) values written into `signed_values`.
double signed_sum(std::span<const double> pooled, std::span<const std::size_t> x_indices,
                  std::span<const std::size_t> y_indices, ExactSum& sum) {
  sum.clear();
  for (std::size_t i : x_indices) sum.add(pooled[i]);
  for (std::size_t i : y_indices) sum.add(-pooled[i]);
  return sum.value();
}

std::uint64_t count_exact(std::span<const double> pooled, std::size_t n, double observed) {
  const std::size_t total = pooled.size();
  std::vector<std::size_t> comb(n);
  std::iota(comb.begin(), comb.end(), std::size_t{0});
  std::vector<std::size_t> rest;
  rest.reserve(total - n);
  std::vector<bool> in_x(total);
  ExactSum sum;
  std::uint64_t hits = 0;
  for (;;) {
    std::fill(in_x.begin(), in_x.end(), false);
    for (std::size_t i : comb) in_x[i] = true;
    rest.clear();
    for (std::size_t i = 0; i < total; ++i) {
      if (!in_x[i]) rest.push_back(i);
    }
    if (signed_sum(pooled, comb, rest, sum) >= observed) ++hits;

    // Next combination in lexicographic order.
    std::size_t k = n;
    while (k > 0 && comb[k - 1] == total - n + (k - 1)) --k;
    if (k == 0) break;
    ++comb[k - 1];
    for (std::size_t j = k; j < n; ++j) comb[j] = comb[j - 1] + 1;
  }
  return hits;
}

std::uint64_t count_monte_carlo(std::span<const double> pooled, std::size_t n, double observed, std::uint64_t begin,
                                std::uint64_t end, std::uint64_t seed) {
  std::vector<std::size_t> order(pooled.size());
  ExactSum sum;
  std::uint64_t hits = 0;
  for (std::uint64_t i = begin; i < end; ++i) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    SplitMix64 rng(derive_seed(seed, i));
    shuffle(std::span<std::size_t>(order), rng);
    const std::span<const std::size_t> all(order);
    if (signed_sum(pooled, all.first(n), all.subspan(n), sum) >= observed) ++hits;
  }
  return hits;
}

}  // namespace

std::string_view to_string(PermutationMethod method) noexcept {
  switch (method) {
    case PermutationMethod::automatic: return "auto";
    case PermutationMethod::exact: return "exact";
    case PermutationMethod::monte_carlo: return "monte_carlo";
  }
  return "auto";
}

PermutationMethod parse_permutation_method(std::string_view name) {
  if (name == "auto" || name == "automatic") return PermutationMethod::automatic;
  if (name == "exact") return PermutationMethod::exact;
  if (name == "monte_carlo" || name == "monte-carlo") return PermutationMethod::monte_carlo;
  throw Error("unknown permutation method: " + std::string(name) + "; expected auto, exact or monte_carlo");
}

double association(std::span<const double> word, std::span<const std::span<const double>> attrs_a,
                   std::span<const std::span<const double>> attrs_b) {
  if (attrs_a.empty() || attrs_b.empty()) throw Error("association needs non-empty attribute sets");
  return mean_cosine(word, attrs_a) - mean_cosine(word, attrs_b);
}

double association(const EmbeddingSpace& space, std::string_view word, const ResolvedWordSet& attrs_a,
                   const ResolvedWordSet& attrs_b) {
  const auto w = space.lookup(word);
  if (!w) throw Error("token '" + std::string(word) + "' is not in the embedding space");
  const auto a = vectors_of(space, attrs_a);
  const auto b = vectors_of(space, attrs_b);
  return association(*w, a, b);
}

WeatInput::WeatInput(const EmbeddingSpace& space, ResolvedWordSet targets_x, ResolvedWordSet targets_y,
                     ResolvedWordSet attrs_a, ResolvedWordSet attrs_b)
    : x_(std::move(targets_x)), y_(std::move(targets_y)), a_(std::move(attrs_a)), b_(std::move(attrs_b)) {
  if (x_.found.size() != y_.found.size()) {
    throw Error("target sets '" + x_.spec.name + "' and '" + y_.spec.name + "' differ in size after resolution (" +
                std::to_string(x_.found.size()) + " vs " + std::to_string(y_.found.size()) +
                "); enable balancing or edit the sets");
  }
  if (x_.found.size() < 2) throw Error("target sets need at least 2 words each");
  if (a_.found.size() < 2 || b_.found.size() < 2) throw Error("attribute sets need at least 2 words each");
  const std::set<std::string> xs(x_.found.begin(), x_.found.end());
  for (const auto& token : y_.found) {
    if (xs.contains(token)) throw Error("token '" + token + "' appears in both target sets");
  }

  const auto a = vectors_of(space, a_);
  const auto b = vectors_of(space, b_);
  for (const auto& v : vectors_of(space, x_)) x_assoc_.push_back(association(v, a, b));
  for (const auto& v : vectors_of(space, y_)) y_assoc_.push_back(association(v, a, b));
}

double test_statistic(std::span<const double> x_assoc, std::span<const double> y_assoc) {
  ExactSum sum;
  for (double v : x_assoc) sum.add(v);
  for (double v : y_assoc) sum.add(-v);
  return sum.value();
}

double test_statistic(const WeatInput& input) {
  return test_statistic(input.x_associations(), input.y_associations());
}

double effect_size(std::span<const double> x_assoc, std::span<const double> y_assoc) {
  require_equal_sizes(x_assoc, y_assoc);
  std::vector<double> pooled(x_assoc.begin(), x_assoc.end());
  pooled.insert(pooled.end(), y_assoc.begin(), y_assoc.end());
  if (std::all_of(pooled.begin(), pooled.end(), [&](double v) { return v == pooled.front(); })) {
    throw Error("WEAT effect size undefined: all associations are equal (zero variance)");
  }

  const auto count = static_cast<double>(pooled.size());
  const double mean = exact_sum(pooled) / count;
  ExactSum squares;
  for (double v : pooled) squares.add((v - mean) * (v - mean));
  const double stdev = std::sqrt(squares.value() / (count - 1.0));
  if (!(stdev > 0.0)) throw Error("WEAT effect size undefined: zero variance");

  const double mean_difference = test_statistic(x_assoc, y_assoc) / static_cast<double>(x_assoc.size());
  return mean_difference / stdev;
}

double effect_size(const WeatInput& input) { return effect_size(input.x_associations(), input.y_associations()); }

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) is divisible by i; divide out the common factor
    // first so the product only overflows when the answer would.
    const std::uint64_t factor = n - k + i;
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t r = result / g;
    const std::uint64_t f = factor / (i / g);
    if (r > kMax / f) return kMax;
    result = r * f;
  }
  return result;
}

PValue p_value(std::span<const double> x_assoc, std::span<const double> y_assoc, const PermutationOptions& options) {
  require_equal_sizes(x_assoc, y_assoc);
  const std::size_t n = x_assoc.size();
  std::vector<double> pooled(x_assoc.begin(), x_assoc.end());
  pooled.insert(pooled.end(), y_assoc.begin(), y_assoc.end());
  const double observed = test_statistic(x_assoc, y_assoc);
  const std::uint64_t partitions = binomial(2 * n, n);

  PermutationMethod method = options.method;
  if (method == PermutationMethod::automatic) {
    method = partitions <= options.max_exact ? PermutationMethod::exact : PermutationMethod::monte_carlo;
  }

  PValue result;
  result.method = method;
  if (method == PermutationMethod::exact) {
    if (partitions == std::numeric_limits<std::uint64_t>::max()) throw Error("too many partitions for exact enumeration");
    result.n_evaluated = partitions;
    result.p = static_cast<double>(count_exact(pooled, n, observed)) / static_cast<double>(partitions);
    return result;
  }

  if (options.iterations < 100) {
    throw Error("monte_carlo permutation test needs at least 100 iterations, got " + std::to_string(options.iterations));
  }
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::uint64_t>(options.threads, options.iterations));
  std::vector<std::uint64_t> hits(workers, 0);
  auto chunk = [&](std::size_t w) {
    const std::uint64_t begin = options.iterations * w / workers;
    const std::uint64_t end = options.iterations * (w + 1) / workers;
    hits[w] = count_monte_carlo(pooled, n, observed, begin, end, options.seed);
  };
  if (workers == 1) {
    chunk(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(chunk, w);
  }
  const std::uint64_t total_hits = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  result.n_evaluated = options.iterations;
  result.seed = options.seed;
  result.p = static_cast<double>(1 + total_hits) / static_cast<double>(1 + options.iterations);
  return result;
}

PValue p_value(const WeatInput& input, const PermutationOptions& options) {
  return p_value(input.x_associations(), input.y_associations(), options);
}

WeatResult run_weat(const WeatInput& input, const PermutationOptions& options) {
  WeatResult result;
  result.statistic = test_statistic(input);
  result.effect_size = effect_size(input);
  const PValue p = p_value(input, options);
  result.p_value = p.p;
  result.method = p.method;
  result.n_partitions_evaluated = p.n_evaluated;
  result.seed = p.seed;
  for (const ResolvedWordSet* set : {&input.targets_x(), &input.targets_y(), &input.attrs_a(), &input.attrs_b()}) {
    result.dropped_tokens[set->spec.name].insert(result.dropped_tokens[set->spec.name].end(), set->dropped.begin(),
                                                 set->dropped.end());
  }
  for (std::size_t i = 0; i < input.targets_x().found.size(); ++i) {
    result.per_word_associations[input.targets_x().found[i]] = input.x_associations()[i];
  }
  for (std::size_t i = 0; i < input.targets_y().found.size(); ++i) {
    result.per_word_associations[input.targets_y().found[i]] = input.y_associations()[i];
  }
  return result;
}

WeatResult run_weat(const EmbeddingSpace& space, const WordSetSpec& targets_x, const WordSetSpec& targets_y,
                    const WordSetSpec& attrs_a, const WordSetSpec& attrs_b, const WeatConfig& config) {
  ResolvedWordSet x = resolve(space, targets_x, config.min_set_size);
  ResolvedWordSet y = resolve(space, targets_y, config.min_set_size);
  if (config.balance) std::tie(x, y) = balance(std::move(x), std::move(y), config.permutation.seed);
  WeatInput input(space, std::move(x), std::move(y), resolve(space, attrs_a, config.min_set_size),
                  resolve(space, attrs_b, config.min_set_size));
  return run_weat(input, config.permutation);
}

nlohmann::json to_json(const WeatResult& r) {
  nlohmann::json associations = nlohmann::json::object();
  for (const auto& [token, value] : r.per_word_associations) associations[token] = value;
  nlohmann::json dropped = nlohmann::json::object();
  for (const auto& [set, tokens] : r.dropped_tokens) dropped[set] = tokens;
  return {
      {"statistic", r.statistic},
      {"effect_size", r.effect_size},
      {"p_value", r.p_value},
      {"method", to_string(r.method)},
      {"n_partitions_evaluated", r.n_partitions_evaluated},
      {"seed", r.seed ? nlohmann::json(*r.seed) : nlohmann::json(nullptr)},
      {"dropped_tokens", dropped},
      {"per_word_associations", associations},
  };
}

WeatResult weat_result_from_json(const nlohmann::json& json) {
  WeatResult r;
  try {
    r.statistic = json.at("statistic").get<double>();
    r.effect_size = json.at("effect_size").get<double>();
    r.p_value = json.at("p_value").get<double>();
    r.method = parse_permutation_method(json.at("method").get<std::string>());
    r.n_partitions_evaluated = json.at("n_partitions_evaluated").get<std::uint64_t>();
    if (json.contains("seed") && !json.at("seed").is_null()) r.seed = json.at("seed").get<std::uint64_t>();
    if (json.contains("dropped_tokens")) {
      for (const auto& [set, tokens] : json.at("dropped_tokens").items()) {
        r.dropped_tokens[set] = tokens.get<std::vector<std::string>>();
      }
    }
    if (json.contains("per_word_associations")) {
      for (const auto& [token, value] : json.at("per_word_associations").items()) {
        r.per_word_associations[token] = value.get<double>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid WEAT result JSON: ") + e.what());
  }
  return r;
}

}  // namespace biasprobe
