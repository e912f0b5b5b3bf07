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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "biasprobe/embed.hpp"
#include "biasprobe/error.hpp"
#include "biasprobe/lexicon.hpp"

namespace biasprobe::testing {

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("biasprobe-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream out(path_ / name, std::ios::binary);
    out << content;
    return file(name);
  }

 private:
  std::filesystem::path path_;
};

// Message of the Error thrown by f, or "<no error>".
template <typename F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "<no error>";
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Oracles below deliberately avoid the library's arithmetic: plain loops in
// long double, written straight from the definitions.

inline long double naive_cosine(const std::vector<double>& x, const std::vector<double>& y) {
  long double xy = 0, xx = 0, yy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xy += static_cast<long double>(x[i]) * y[i];
    xx += static_cast<long double>(x[i]) * x[i];
    yy += static_cast<long double>(y[i]) * y[i];
  }
  return xy / (std::sqrt(xx) * std::sqrt(yy));
}

inline long double naive_association(const std::vector<double>& w, const std::vector<std::vector<double>>& a,
                                     const std::vector<std::vector<double>>& b) {
  long double sa = 0, sb = 0;
  for (const auto& v : a) sa += naive_cosine(w, v);
  for (const auto& v : b) sb += naive_cosine(w, v);
  return sa / a.size() - sb / b.size();
}

struct BruteForceWeat {
  long double statistic = 0;
  long double effect_size = 0;
  double p = 0;
  std::uint64_t partitions = 0;
};

// Every way of choosing |X| of the pooled associations as the new X, by
// bitmask. S_i >= S counts toward the tail.
inline BruteForceWeat brute_force_weat(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> pooled(x);
  pooled.insert(pooled.end(), y.begin(), y.end());
  const std::size_t n = x.size();
  const std::size_t total = pooled.size();
  auto stat = [&](std::uint64_t mask) {
    long double s = 0;
    for (std::size_t i = 0; i < total; ++i) s += ((mask >> i) & 1U) ? pooled[i] : -static_cast<long double>(pooled[i]);
    return s;
  };
  const std::uint64_t identity = (std::uint64_t{1} << n) - 1;
  BruteForceWeat r;
  r.statistic = stat(identity);
  std::uint64_t hits = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << total); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != n) continue;
    ++r.partitions;
    if (stat(mask) >= r.statistic) ++hits;
  }
  r.p = static_cast<double>(hits) / static_cast<double>(r.partitions);

  long double mean = 0;
  for (double v : pooled) mean += v;
  mean /= total;
  long double ss = 0;
  for (double v : pooled) ss += (v - mean) * (v - mean);
  const long double sd = std::sqrt(ss / (total - 1));
  long double mx = 0, my = 0;
  for (double v : x) mx += v;
  for (double v : y) my += v;
  r.effect_size = (mx / n - my / n) / sd;
  return r;
}

inline std::vector<double> gaussian_vector(std::mt19937_64& rng, std::size_t m) {
  std::normal_distribution<double> normal;
  std::vector<double> v(m);
  for (double& c : v) c = normal(rng);
  return v;
}

// A random space holding x0.., y0.., a0.., b0.. with standard normal
// components, plus the matching resolved word sets.
struct RandomWeatSpace {
  EmbeddingSpace space{1};
  ResolvedWordSet x, y, a, b;
};

inline ResolvedWordSet resolved(const std::string& name, std::vector<std::string> tokens) {
  ResolvedWordSet set;
  set.spec.name = name;
  set.spec.language = "en";
  set.spec.tokens = tokens;
  set.found = std::move(tokens);
  return set;
}

inline RandomWeatSpace random_weat_space(std::mt19937_64& rng, std::size_t n, std::size_t attrs, std::size_t m) {
  RandomWeatSpace r;
  r.space = EmbeddingSpace(m);
  auto fill = [&](const std::string& prefix, std::size_t count) {
    std::vector<std::string> tokens;
    for (std::size_t i = 0; i < count; ++i) {
      tokens.push_back(prefix + std::to_string(i));
      r.space.add(tokens.back(), gaussian_vector(rng, m));
    }
    return resolved(prefix, tokens);
  };
  r.x = fill("x", n);
  r.y = fill("y", n);
  r.a = fill("a", attrs);
  r.b = fill("b", attrs);
  return r;
}

inline std::vector<double> copy_vector(const EmbeddingSpace& space, const std::string& token) {
  const auto v = *space.find(token);
  return {v.begin(), v.end()};
}

inline std::vector<std::vector<double>> copy_vectors(const EmbeddingSpace& space, const ResolvedWordSet& set) {
  std::vector<std::vector<double>> out;
  for (const auto& t : set.found) out.push_back(copy_vector(space, t));
  return out;
}

}  // namespace biasprobe::testing
