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

// Acceptance suite: one PASS/FAIL line per criterion, each under its stated
// tolerance and time budget. Exit status is non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "biasprobe/corpus.hpp"
#include "biasprobe/log.hpp"
#include "biasprobe/report.hpp"
#include "biasprobe/sgns.hpp"
#include "biasprobe/tgbi.hpp"
#include "biasprobe/weat.hpp"
#include "cli.hpp"
#include "test_support.hpp"

namespace biasprobe {
namespace {

using testing::TempDir;
using Vec = std::vector<double>;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(const std::string& name, double budget_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = seconds < budget_seconds;
  const bool pass = outcome.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s  %-28s %7.2fs / %.0fs  %s%s\n", pass ? "PASS" : "FAIL", name.c_str(), seconds, budget_seconds,
              outcome.detail.c_str(), in_time ? "" : " [over time budget]");
  std::fflush(stdout);
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(3);
  out << v;
  return out.str();
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "biasprobe");
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  if (code != 0) throw std::runtime_error("biasprobe " + args[1] + " failed: " + err.str());
  return code;
}

Outcome cosine_correctness() {
  std::mt19937_64 rng(101);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = testing::gaussian_vector(rng, 1 + rng() % 300);
    const auto y = testing::gaussian_vector(rng, x.size());
    worst = std::max(worst, std::abs(cosine(x, y) - static_cast<double>(testing::naive_cosine(x, y))));
    if (cosine(x, x) != 1.0) return {false, "cosine(x, x) != 1"};
    Vec scaled = x;
    for (double& v : scaled) v *= 3.0;
    const double c = cosine(x, scaled);
    if (c > 1.0 || c < 1.0 - 1e-12) return {false, "clamping failed for parallel vectors"};
    Vec neg = x;
    for (double& v : neg) v *= -7.0;
    if (cosine(x, neg) < -1.0) return {false, "clamping failed for antiparallel vectors"};
  }
  return {worst < 1e-12, "max |cos - naive| = " + fmt(worst) + " over 1000 pairs (tol 1e-12)"};
}

Outcome weat_exact_oracle() {
  std::mt19937_64 rng(202);
  PermutationOptions exact;
  exact.method = PermutationMethod::exact;
  double worst_d = 0;
  int p_mismatches = 0, cases = 0;
  for (std::size_t n = 2; n <= 6; ++n) {
    for (int s = 0; s < 50; ++s, ++cases) {
      auto r = testing::random_weat_space(rng, n, 2 + rng() % 6, 5 + rng() % 40);
      const auto av = testing::copy_vectors(r.space, r.a);
      const auto bv = testing::copy_vectors(r.space, r.b);
      Vec xs, ys;
      for (const auto& t : r.x.found) xs.push_back(static_cast<double>(testing::naive_association(testing::copy_vector(r.space, t), av, bv)));
      for (const auto& t : r.y.found) ys.push_back(static_cast<double>(testing::naive_association(testing::copy_vector(r.space, t), av, bv)));
      const auto oracle = testing::brute_force_weat(xs, ys);
      const auto result = run_weat(WeatInput(r.space, r.x, r.y, r.a, r.b), exact);
      if (result.p_value != oracle.p || result.n_partitions_evaluated != oracle.partitions) ++p_mismatches;
      worst_d = std::max(worst_d, std::abs(result.effect_size - static_cast<double>(oracle.effect_size)));
    }
  }
  return {p_mismatches == 0 && worst_d < 1e-12, std::to_string(cases) + " spaces, n=2..6: p mismatches " +
                                                     std::to_string(p_mismatches) + ", max |d - oracle| " + fmt(worst_d)};
}

Outcome weat_mc_convergence() {
  std::mt19937_64 rng(303);
  auto r = testing::random_weat_space(rng, 8, 8, 50);
  const WeatInput input(r.space, r.x, r.y, r.a, r.b);
  PermutationOptions o;
  o.method = PermutationMethod::exact;
  const double exact = p_value(input, o).p;
  o.method = PermutationMethod::monte_carlo;
  o.iterations = 100000;
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    o.seed = seed;
    worst = std::max(worst, std::abs(p_value(input, o).p - exact));
  }
  return {worst < 0.01, "p_exact " + fmt(exact) + ", max |p_mc - p_exact| " + fmt(worst) + " over 20 seeds (tol 0.01)"};
}

Outcome weat_null_calibration() {
  std::mt19937_64 rng(404);
  PermutationOptions o;
  int significant = 0;
  for (int rep = 0; rep < 200; ++rep) {
    auto r = testing::random_weat_space(rng, 8, 8, 50);
    if (p_value(WeatInput(r.space, r.x, r.y, r.a, r.b), o).p < 0.05) ++significant;
  }
  const double fraction = significant / 200.0;
  return {fraction >= 0.01 && fraction <= 0.10, "fraction p<0.05 = " + fmt(fraction) + " (accept [0.01, 0.10])"};
}

Outcome weat_invariances() {
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  PermutationOptions o;
  int antisymmetry_failures = 0;
  double worst_scale = 0;
  for (int i = 0; i < 50; ++i) {
    auto r = testing::random_weat_space(rng, 2 + rng() % 6, 2 + rng() % 6, 3 + rng() % 30);
    const auto base = run_weat(WeatInput(r.space, r.x, r.y, r.a, r.b), o);
    const auto ab = run_weat(WeatInput(r.space, r.x, r.y, r.b, r.a), o);
    const auto xy = run_weat(WeatInput(r.space, r.y, r.x, r.a, r.b), o);
    if (ab.effect_size != -base.effect_size || ab.statistic != -base.statistic) ++antisymmetry_failures;
    if (xy.effect_size != -base.effect_size || xy.statistic != -base.statistic) ++antisymmetry_failures;

    const double k = scale(rng);
    EmbeddingSpace scaled(r.space.dimension());
    for (std::size_t t = 0; t < r.space.size(); ++t) {
      Vec v(r.space.vector(t).begin(), r.space.vector(t).end());
      for (double& c : v) c *= k;
      scaled.add(r.space.token(t), v);
    }
    const auto s = run_weat(WeatInput(scaled, r.x, r.y, r.a, r.b), o);
    worst_scale = std::max({worst_scale, std::abs(s.statistic - base.statistic),
                            std::abs(s.effect_size - base.effect_size), std::abs(s.p_value - base.p_value)});
  }
  return {antisymmetry_failures == 0 && worst_scale < 1e-12,
          "50 instances: swap mismatches " + std::to_string(antisymmetry_failures) + ", max scaling change " +
              fmt(worst_scale) + " (tol 1e-12)"};
}

Outcome tgbi_sweep() {
  std::size_t triples = 0;
  for (std::uint64_t total = 1; total <= 50; ++total) {
    for (std::uint64_t he = 0; he <= total; ++he) {
      for (std::uint64_t she = 0; he + she <= total; ++she) {
        GenderClassCounts c{"s", he, she, total - he - she, 0};
        GenderClassCounts mirrored{"s", she, he, total - he - she, 0};
        const double p = set_score(c);
        ++triples;
        if (!(p >= 0.0 && p <= 1.0)) return {false, "P out of [0,1] at " + std::to_string(he) + "," + std::to_string(she)};
        if (p != set_score(mirrored)) return {false, "he/she asymmetry at " + std::to_string(he) + "," + std::to_string(she)};
      }
    }
    if (total % 2 == 0 && set_score({"s", total / 2, total / 2, 0, 0}) != 0.5) return {false, "balanced != 0.5"};
    if (set_score({"s", 0, 0, total, 0}) != 1.0) return {false, "all-neutral != 1"};
    if (set_score({"s", total, 0, 0, 0}) != 0.0 || set_score({"s", 0, total, 0, 0}) != 0.0) {
      return {false, "one-sided != 0"};
    }
  }
  return {true, std::to_string(triples) + " count triples with total <= 50"};
}

// Four synthetic domains whose documents pair one gender's words with career
// words with probability 0.5 + skew/2 (family words otherwise). The skew
// levels are dealt to the domains in a seed-dependent order; recovery means
// compare ranks the domains by effect size in exactly the planted order.
bool planted_recovery_once(std::uint64_t seed, const TempDir& dir) {
  constexpr std::size_t kSetSize = 40, kDocs = 6000, kPerSide = 3;
  const std::vector<double> skews = {0.0, 0.04, 0.1, 0.3};
  std::vector<Domain> domains = {Domain::news, Domain::sports, Domain::social_media, Domain::entertainment};
  std::mt19937_64 rng(seed);
  std::shuffle(domains.begin(), domains.end(), rng);

  std::map<std::string, std::vector<std::string>> sets;
  for (const char* name : {"male", "female", "career", "family"}) {
    std::string text;
    for (std::size_t i = 0; i < kSetSize; ++i) {
      sets[name].push_back(std::string(name) + std::to_string(i));
      text += sets[name].back() + "\n";
    }
    dir.write(std::string(name) + ".txt", text);
  }

  std::vector<std::string> report_args = {"compare"};
  std::uniform_int_distribution<std::size_t> pick(0, kSetSize - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t level = 0; level < skews.size(); ++level) {
    const std::string name(to_string(domains[level]));
    std::string csv = "id," + std::string(default_column(domains[level])) + "\n";
    for (std::size_t doc = 0; doc < kDocs; ++doc) {
      const bool male = unit(rng) < 0.5;
      const double p_career = male ? 0.5 + skews[level] / 2 : 0.5 - skews[level] / 2;
      const auto& gender = sets[male ? "male" : "female"];
      const auto& attribute = sets[unit(rng) < p_career ? "career" : "family"];
      std::vector<std::string> tokens;
      for (std::size_t k = 0; k < kPerSide; ++k) tokens.push_back(gender[pick(rng)]);
      for (std::size_t k = 0; k < kPerSide; ++k) tokens.push_back(attribute[pick(rng)]);
      std::shuffle(tokens.begin(), tokens.end(), rng);
      csv += std::to_string(doc) + ",";
      for (std::size_t k = 0; k < tokens.size(); ++k) csv += (k ? " " : "") + tokens[k];
      csv += "\n";
    }
    const auto s = std::to_string(seed);
    dir.write(name + ".csv", csv);
    run_cli({"ingest", "--input", dir.file(name + ".csv"), "--domain", name, "--out", dir.file(name + ".txt")});
    run_cli({"split", "--corpus", dir.file(name + ".txt"), "--seed", s, "--train-out", dir.file(name + ".train"),
             "--test-out", dir.file(name + ".test")});
    run_cli({"train-sgns", "--corpus", dir.file(name + ".train"), "--out", dir.file(name + ".vec"), "--dimension", "30",
             "--window", "3", "--epochs", "5", "--min-count", "1", "--subsample-threshold", "1e-2", "--seed", s});
    run_cli({"weat", "--embeddings", dir.file(name + ".vec"), "--targets-x", dir.file("career.txt"), "--targets-y",
             dir.file("family.txt"), "--attrs-a", dir.file("male.txt"), "--attrs-b", dir.file("female.txt"),
             "--permutations", "1000", "--seed", s, "--out", dir.file(name + ".weat.json")});
    run_cli({"report", "--domain", name, "--weat", "career_family=" + dir.file(name + ".weat.json"), "--out",
             dir.file(name + ".report.json")});
    report_args.insert(report_args.end(), {"--domain-report", dir.file(name + ".report.json")});
  }
  report_args.insert(report_args.end(), {"--out", dir.file("compare.json")});
  run_cli(report_args);

  const auto report = parse_report(testing::slurp(dir.file("compare.json")));
  std::vector<Domain> expected(domains.rbegin(), domains.rend());
  return report.rankings.at("career_family").by_effect_size == expected;
}

Outcome planted_recovery() {
  int recovered = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    TempDir dir;
    if (planted_recovery_once(seed, dir)) ++recovered;
  }
  return {recovered >= 18, std::to_string(recovered) + "/20 seeds recover the planted ordering (need 18)"};
}

Outcome sgns_gradient_check() {
  std::mt19937_64 rng(606);
  std::normal_distribution<double> normal(0.0, 0.5);
  const double h = 1e-5;
  double worst = 0;
  auto loss = [](const Vec& v, const Vec& ctx, const std::vector<Vec>& negs) {
    std::vector<std::span<const double>> spans(negs.begin(), negs.end());
    return sgns_gradient(v, ctx, spans).loss;
  };
  // Relative error with a floor of 1e-6 on the denominator so components that
  // are zero analytically are compared absolutely.
  auto rel = [](double a, double n) { return std::abs(a - n) / std::max({std::abs(a), std::abs(n), 1e-6}); };
  for (int config = 0; config < 100; ++config) {
    const std::size_t m = 1 + rng() % 32;
    auto draw = [&] {
      Vec x(m);
      for (double& c : x) c = normal(rng);
      return x;
    };
    const Vec v = draw(), ctx = draw();
    std::vector<Vec> negs(1 + rng() % 10);
    for (auto& n : negs) n = draw();
    std::vector<std::span<const double>> spans(negs.begin(), negs.end());
    const auto g = sgns_gradient(v, ctx, spans);
    for (std::size_t i = 0; i < m; ++i) {
      Vec up = v, down = v;
      up[i] += h;
      down[i] -= h;
      worst = std::max(worst, rel(g.center[i], (loss(up, ctx, negs) - loss(down, ctx, negs)) / (2 * h)));
      up = ctx;
      down = ctx;
      up[i] += h;
      down[i] -= h;
      worst = std::max(worst, rel(g.outputs[0][i], (loss(v, up, negs) - loss(v, down, negs)) / (2 * h)));
      for (std::size_t k = 0; k < negs.size(); ++k) {
        auto nu = negs, nd = negs;
        nu[k][i] += h;
        nd[k][i] -= h;
        worst = std::max(worst, rel(g.outputs[k + 1][i], (loss(v, ctx, nu) - loss(v, ctx, nd)) / (2 * h)));
      }
    }
  }
  return {worst < 1e-5, "max relative error " + fmt(worst) + " over 100 configurations (tol 1e-5)"};
}

Outcome determinism() {
  TempDir dir;
  std::string csv = "id,desc\n";
  std::mt19937_64 rng(707);
  const std::vector<std::string> words = {"he", "she", "doctor", "nurse", "engineer", "teacher", "home", "office",
                                          "him", "her", "career", "family", "the", "a", "works", "at"};
  for (int i = 0; i < 400; ++i) {
    csv += std::to_string(i) + ",";
    for (int k = 0; k < 10; ++k) csv += words[rng() % words.size()] + " ";
    csv += "\n";
  }
  dir.write("in.csv", csv);
  dir.write("x.txt", "doctor\nengineer\ncareer\noffice\n");
  dir.write("y.txt", "nurse\nteacher\nfamily\nhome\n");
  dir.write("a.txt", "he\nhim\n");
  dir.write("b.txt", "she\nher\n");
  const std::vector<std::string> stems = {"c", "train", "test", "v", "v.meta.json", "w", "news", "cmp"};
  std::vector<std::vector<std::string>> runs;
  for (int run = 0; run < 2; ++run) {
    run_cli({"ingest", "--input", dir.file("in.csv"), "--domain", "news", "--out", dir.file("c")});
    run_cli({"split", "--corpus", dir.file("c"), "--seed", "5", "--train-out", dir.file("train"), "--test-out",
             dir.file("test")});
    run_cli({"train-sgns", "--corpus", dir.file("train"), "--out", dir.file("v"), "--dimension", "16", "--epochs",
             "3", "--min-count", "1", "--seed", "5"});
    run_cli({"weat", "--embeddings", dir.file("v"), "--targets-x", dir.file("x.txt"), "--targets-y",
             dir.file("y.txt"), "--attrs-a", dir.file("a.txt"), "--attrs-b", dir.file("b.txt"), "--method",
             "monte_carlo", "--permutations", "2000", "--seed", "5", "--out", dir.file("w")});
    run_cli({"report", "--domain", "news", "--weat", "m=" + dir.file("w"), "--out", dir.file("news")});
    run_cli({"report", "--domain", "sports", "--weat", "m=" + dir.file("w"), "--out", dir.file("sports")});
    run_cli({"compare", "--domain-report", dir.file("news"), "--domain-report", dir.file("sports"), "--out",
             dir.file("cmp")});
    std::vector<std::string> contents;
    for (const auto& stem : stems) contents.push_back(testing::slurp(dir.file(stem)));
    runs.push_back(std::move(contents));
  }
  std::vector<std::string> differing;
  for (std::size_t i = 0; i < stems.size(); ++i) {
    if (runs[0][i].empty() || runs[0][i] != runs[1][i]) differing.push_back(stems[i]);
  }
  std::string detail = "split, train (1 thread), weat, report, compare re-run byte-identical";
  if (!differing.empty()) {
    detail = "differing outputs:";
    for (const auto& d : differing) detail += " " + d;
  }
  return {differing.empty(), detail};
}

Outcome format_round_trips() {
  std::mt19937_64 rng(808);
  TempDir dir;
  double worst = 0;
  for (int trial = 0; trial < 20; ++trial) {
    EmbeddingSpace space(1 + rng() % 50);
    for (int t = 0; t < 30; ++t) space.add("t" + std::to_string(t), testing::gaussian_vector(rng, space.dimension()));
    save_vectors(space, dir.file("v.vec"));
    const auto loaded = load_vectors(dir.file("v.vec"));
    if (loaded.tokens().size() != space.size()) return {false, "token count changed"};
    for (const auto& token : space.tokens()) {
      const auto a = *space.find(token);
      const auto b = loaded.find(token);
      if (!b) return {false, "token lost: " + token};
      for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - (*b)[i]));
    }
  }

  WeatResult weat;
  weat.statistic = 0.123456789012345;
  weat.effect_size = -1.5;
  weat.p_value = 1.0 / 3.0;
  weat.per_word_associations = {{"x", 0.1}, {"y", -0.2}};
  weat.dropped_tokens = {{"x", {"gone"}}};
  DomainReport news{Domain::news, {{"m", weat}}, std::nullopt, {{"king", 0.4}}, {{"queen", -0.3}}, "src", "d1"};
  DomainReport sports{Domain::sports, {{"m", weat}}, TgbiResult{}, {}, {}, "", "d2"};
  sports.weat_results["m"].effect_size = 0.25;
  const auto report = compare_domains({news, sports});
  const auto text = emit_report(report, ReportFormat::json);
  const bool report_ok = parse_report(text) == report && emit_report(parse_report(text), ReportFormat::json) == text;

  const auto set = parse_wordset("He\nhe\n# comment\n\nhim\nHIM\nhis\n", "m", "en");
  const bool wordset_ok = set.tokens == std::vector<std::string>{"he", "him", "his"};
  bool whitespace_rejected = false;
  try {
    parse_wordset("ok\ntwo words\n", "m", "en");
  } catch (const Error& e) {
    whitespace_rejected = std::string(e.what()).find("line 2") != std::string::npos;
  }
  return {worst <= 1e-12 && report_ok && wordset_ok && whitespace_rejected,
          "vectors max diff " + fmt(worst) + "; report json " + (report_ok ? "identical" : "DIFFERS") +
              "; word-set rules " + (wordset_ok && whitespace_rejected ? "ok" : "BROKEN")};
}

Outcome split_contract() {
  for (std::size_t n = 1; n <= 1000; ++n) {
    DomainCorpus corpus;
    for (std::size_t i = 0; i < n; ++i) corpus.documents.push_back("d" + std::to_string(i));
    const auto parts = split(corpus, 0.8, n * 7919);
    if (parts.train.record_count() != 4 * n / 5 || parts.test.record_count() != n - 4 * n / 5) {
      return {false, "wrong sizes at n=" + std::to_string(n)};
    }
    std::vector<std::string> all = parts.train.documents;
    all.insert(all.end(), parts.test.documents.begin(), parts.test.documents.end());
    std::sort(all.begin(), all.end());
    auto expected = corpus.documents;
    std::sort(expected.begin(), expected.end());
    if (all != expected) return {false, "not a partition at n=" + std::to_string(n)};
    const auto again = split(corpus, 0.8, n * 7919);
    if (again.train != parts.train || again.test != parts.test) return {false, "nondeterministic at n=" + std::to_string(n)};
  }
  return {true, "n = 1..1000: sizes floor(0.8 n)/rest, partition, determinism"};
}

}  // namespace
}  // namespace biasprobe

int main() {
  using namespace biasprobe;
  set_log_level(LogLevel::error);
  criterion("cosine-correctness", 1, cosine_correctness);
  criterion("weat-exact-oracle", 30, weat_exact_oracle);
  criterion("weat-mc-convergence", 20, weat_mc_convergence);
  criterion("weat-null-calibration", 120, weat_null_calibration);
  criterion("weat-invariances", 60, weat_invariances);
  criterion("tgbi-formula-sweep", 1, tgbi_sweep);
  criterion("planted-cross-domain", 300, planted_recovery);
  criterion("sgns-gradient-check", 5, sgns_gradient_check);
  criterion("determinism", 60, determinism);
  criterion("format-round-trips", 60, format_round_trips);
  criterion("split-contract", 60, split_contract);
  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
