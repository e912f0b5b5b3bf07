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

#include "biasprobe/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "biasprobe/error.hpp"
#include "logger.hpp"

namespace biasprobe {

namespace {

constexpr double kPowerTolerance = 1e-9;
constexpr std::size_t kPowerMaxIterations = 1000;

void normalize_in_place(std::vector<double>& v) {
  const double n = norm(v);
  for (double& x : v) x /= n;
}

// w = (sum_i d_i d_i^T) v without forming the matrix.
std::vector<double> second_moment_times(const std::vector<std::vector<double>>& diffs, const std::vector<double>& v) {
  std::vector<double> w(v.size(), 0.0);
  for (const auto& d : diffs) {
    const double projection = dot(d, v);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += projection * d[i];
  }
  return w;
}

}  // namespace

std::string_view to_string(DirectionMethod method) noexcept {
  return method == DirectionMethod::mean_difference ? "mean_difference" : "first_principal_component";
}

DirectionMethod parse_direction_method(std::string_view name) {
  if (name == "mean_difference" || name == "mean-difference" || name == "mean") return DirectionMethod::mean_difference;
  if (name == "first_principal_component" || name == "pca") return DirectionMethod::first_principal_component;
  throw Error("unknown direction method: " + std::string(name) + "; expected mean_difference or pca");
}

GenderDirection gender_direction(const EmbeddingSpace& space, const GenderPairList& pairs, DirectionMethod method) {
  GenderDirection result;
  result.method = method;
  std::vector<std::vector<double>> diffs;
  for (const auto& pair : pairs.pairs) {
    const auto masc = space.lookup(pair.first);
    const auto fem = space.lookup(pair.second);
    if (!masc || !fem) {
      result.pairs_dropped.push_back(pair);
      continue;
    }
    std::vector<double> d(space.dimension());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (*masc)[i] - (*fem)[i];
    diffs.push_back(std::move(d));
    result.pairs_used.push_back(pair);
  }
  if (diffs.empty()) throw Error("no gender pair has both members in the embedding space");
  if (!result.pairs_dropped.empty()) {
    logger().warn("{} of {} gender pairs not in vocabulary", result.pairs_dropped.size(), pairs.pairs.size());
  }

  std::vector<double> mean(space.dimension(), 0.0);
  for (const auto& d : diffs) {
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += d[i];
  }
  for (double& x : mean) x /= static_cast<double>(diffs.size());
  if (norm(mean) == 0.0) throw Error("mean pair difference has zero norm; gender direction undefined");
  normalize_in_place(mean);

  if (method == DirectionMethod::mean_difference) {
    result.vector = std::move(mean);
    return result;
  }

  std::vector<double> v = mean;
  double eigenvalue = 0.0;
  for (std::size_t it = 1; it <= kPowerMaxIterations; ++it) {
    std::vector<double> w = second_moment_times(diffs, v);
    const double next = dot(v, w);
    const double wn = norm(w);
    if (wn == 0.0) throw Error("pair differences are orthogonal to their mean; principal component undefined");
    for (std::size_t i = 0; i < w.size(); ++i) w[i] /= wn;
    v = std::move(w);
    result.iterations = it;
    const bool converged = it > 1 && std::fabs(next - eigenvalue) <= kPowerTolerance * std::fabs(next);
    eigenvalue = next;
    if (converged) break;
  }
  if (result.iterations == kPowerMaxIterations) logger().warn("power iteration hit {} iterations", kPowerMaxIterations);
  if (dot(v, mean) < 0.0) {
    for (double& x : v) x = -x;
  }
  result.vector = std::move(v);
  return result;
}

GenderedNeighbors gendered_neighbors(const EmbeddingSpace& space, const GenderDirection& direction, std::size_t k,
                                     const TokenFilter& filter) {
  if (k == 0) throw Error("neighbor count k must be at least 1");
  std::set<std::string> excluded;
  for (const auto* list : {&direction.pairs_used, &direction.pairs_dropped}) {
    for (const auto& [m, f] : *list) {
      excluded.insert(m);
      excluded.insert(f);
    }
  }

  std::vector<ScoredToken> positive, negative;
  std::size_t eligible = 0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const std::string& token = space.token(i);
    if (excluded.contains(token) || (filter && !filter(token))) continue;
    const auto v = space.vector(i);
    if (norm(v) == 0.0) continue;
    ++eligible;
    const double score = cosine(v, direction.vector);
    if (score > 0.0) positive.push_back({token, score});
    if (score < 0.0) negative.push_back({token, score});
  }

  auto rank = [k](std::vector<ScoredToken>& list) {
    std::sort(list.begin(), list.end(), [](const ScoredToken& a, const ScoredToken& b) {
      const double ma = std::fabs(a.score);
      const double mb = std::fabs(b.score);
      return ma != mb ? ma > mb : a.token < b.token;
    });
    if (list.size() > k) list.resize(k);
  };
  rank(positive);
  rank(negative);

  GenderedNeighbors result{std::move(positive), std::move(negative), k > eligible};
  if (result.truncated) {
    logger().warn("requested {} neighbors but only {} eligible tokens exist; returning all", k, eligible);
  }
  return result;
}

nlohmann::json to_json(const GenderDirection& d) {
  nlohmann::json used = nlohmann::json::array();
  for (const auto& [m, f] : d.pairs_used) used.push_back({m, f});
  nlohmann::json dropped = nlohmann::json::array();
  for (const auto& [m, f] : d.pairs_dropped) dropped.push_back({m, f});
  return {{"method", to_string(d.method)},
          {"pairs_used", used},
          {"pairs_dropped", dropped},
          {"iterations", d.iterations},
          {"vector", d.vector}};
}

nlohmann::json to_json(const ScoredToken& t) { return {{"token", t.token}, {"score", t.score}}; }

nlohmann::json to_json(const GenderedNeighbors& n) {
  nlohmann::json masculine = nlohmann::json::array();
  for (const auto& t : n.masculine) masculine.push_back(to_json(t));
  nlohmann::json feminine = nlohmann::json::array();
  for (const auto& t : n.feminine) feminine.push_back(to_json(t));
  return {{"masculine_top", masculine}, {"feminine_top", feminine}, {"truncated", n.truncated}};
}

std::vector<ScoredToken> scored_tokens_from_json(const nlohmann::json& json) {
  std::vector<ScoredToken> out;
  try {
    for (const auto& item : json) out.push_back({item.at("token").get<std::string>(), item.at("score").get<double>()});
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid scored token list: ") + e.what());
  }
  return out;
}

}  // namespace biasprobe
