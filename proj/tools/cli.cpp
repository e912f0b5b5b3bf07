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

#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "biasprobe/analysis.hpp"
#include "biasprobe/corpus.hpp"
#include "biasprobe/digest.hpp"
#include "biasprobe/embed.hpp"
#include "biasprobe/error.hpp"
#include "biasprobe/lexicon.hpp"
#include "biasprobe/log.hpp"
#include "biasprobe/report.hpp"
#include "biasprobe/sgns.hpp"
#include "biasprobe/tgbi.hpp"
#include "biasprobe/tokenize.hpp"
#include "biasprobe/version.hpp"
#include "biasprobe/weat.hpp"

namespace biasprobe::cli {

namespace {

using nlohmann::json;

// Options that name where output goes (or where options came from) rather
// than what is computed; left out of the config digest.
const std::set<std::string> kUndigestedOptions = {"out", "config", "train-out", "test-out", "help"};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw Error(path + ": invalid JSON: " + e.what());
  }
}

// Appends "--key value" for every key of the --config JSON file the user did
// not pass explicitly, so command-line flags win over the file.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::optional<std::string> path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].starts_with("--config=")) path = args[i].substr(9);
  }
  if (!path) return args;

  const json config = read_json(*path);
  if (!config.is_object()) throw Error(*path + ": config file must hold a JSON object");
  auto given = [&](const std::string& flag) {
    return std::any_of(args.begin() + 1, args.end(),
                       [&](const std::string& a) { return a == flag || a.starts_with(flag + "="); });
  };
  auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };

  std::vector<std::string> expanded = args;
  for (const auto& [key, value] : config.items()) {
    std::string name = key;
    std::replace(name.begin(), name.end(), '_', '-');
    const std::string flag = "--" + name;
    if (name == "config" || given(flag) || value.is_null()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) expanded.push_back(flag);
    } else if (value.is_array()) {
      for (const auto& item : value) {
        expanded.push_back(flag);
        expanded.push_back(scalar(item));
      }
    } else {
      expanded.push_back(flag);
      expanded.push_back(scalar(value));
    }
  }
  return expanded;
}

// Effective configuration of a parsed subcommand: every long option with its
// given or default value.
json effective_config(const CLI::App& sub) {
  json config = json::object();
  config["subcommand"] = sub.get_name();
  config["tool_version"] = std::string(kVersion);
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (kUndigestedOptions.contains(name)) continue;
    if (opt->get_expected_max() == 0) {
      config[name] = opt->count() > 0;
    } else if (opt->count() > 0) {
      const auto& results = opt->results();
      if (opt->get_expected_max() > 1) {
        config[name] = results;
      } else {
        config[name] = results.back();
      }
    } else {
      const std::string& fallback = opt->get_default_str();
      config[name] = fallback.empty() ? json(nullptr) : json(fallback);
    }
  }
  return config;
}

void write_output(const std::string& path, std::string_view text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot write file: " + path);
  file << text;
  if (!file) throw Error("error writing file: " + path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json stamp(json j, const json& config) {
  j["config_digest"] = config_digest(config);
  j["run_config"] = config;
  return j;
}

WordSetSpec load_named_set(const std::string& name_or_path, const std::string& language) {
  const auto path = locate_data_file(name_or_path, language, ".txt");
  const bool bundled = !std::filesystem::is_regular_file(name_or_path);
  return load_wordset(path, bundled ? name_or_path : path.stem().string(), language);
}

TokenizedCorpus tokenize_documents(const std::vector<std::string>& documents) {
  TokenizedCorpus corpus;
  corpus.reserve(documents.size());
  for (const auto& doc : documents) corpus.push_back(tokenize(doc).tokens);
  return corpus;
}

EmbeddingSpace load_space(const std::string& path, const std::string& format, const std::string& language,
                          bool drop_zero_norm) {
  LoadOptions options;
  options.format = parse_vector_format(format);
  options.drop_zero_norm = drop_zero_norm;
  EmbeddingSpace space = load_vectors(path, options);
  space.set_language(language);
  return space;
}

const std::vector<std::string> kDomainNames = {"news", "sports", "social_media", "entertainment"};

CLI::Validator open_unit_interval() {
  return CLI::Validator(
      [](std::string& value) -> std::string {
        try {
          const double v = std::stod(value);
          if (v > 0.0 && v < 1.0) return {};
        } catch (const std::exception&) {
        }
        return "value must lie strictly between 0 and 1: " + value;
      },
      "in (0,1)");
}

struct Embeddings {
  std::string path;
  std::string format = "word2vec_text";
  std::string language = "en";
  bool drop_zero_norm = false;

  void bind(CLI::App* sub) {
    sub->add_option("--embeddings", path, "Embedding file")->required();
    sub->add_option("--format", format, "word2vec_text or glove_text")
        ->check(CLI::IsMember({"word2vec_text", "glove_text", "word2vec", "glove"}));
    sub->add_option("--language", language, "Language tag; selects bundled word sets");
    sub->add_flag("--drop-zero-norm", drop_zero_norm, "Drop zero vectors with a warning instead of failing");
  }
  EmbeddingSpace load() const { return load_space(path, format, language, drop_zero_norm); }
};

class Cli {
 public:
  Cli(std::ostream& out) : out_(out) {
    app_.name("biasprobe");
    app_.description("Gender-bias measurement over domain word embeddings (WEAT, TGBI, gendered neighbors).");
    app_.option_defaults()->always_capture_default();
    app_.set_version_flag("--version", std::string(kVersion));
    app_.require_subcommand(1);
    app_.failure_message(CLI::FailureMessage::help);
    app_.add_option("--log-level", log_level_, "Diagnostics on stderr: debug, info, warn, error or off")
        ->check(CLI::IsMember({"debug", "info", "warn", "error", "off"}));
    add_ingest();
    add_split();
    add_train();
    add_weat();
    add_tgbi();
    add_neighbors();
    add_report();
    add_compare();
  }

  CLI::App& app() { return app_; }

  void run() {
    set_log_level(parse_log_level(log_level_));
    for (CLI::App* sub : app_.get_subcommands()) handlers_.at(sub->get_name())(*sub);
  }

 private:
  CLI::App* subcommand(const std::string& name, const std::string& description, std::function<void(CLI::App&)> handler) {
    CLI::App* sub = app_.add_subcommand(name, description);
    sub->add_option("--config", "JSON file whose keys mirror this subcommand's flag names (flags win)");
    handlers_[name] = std::move(handler);
    return sub;
  }

  void add_ingest() {
    auto* sub = subcommand("ingest", "Extract, clean and save one domain's text column",
                           [this](CLI::App& s) { ingest(s); });
    sub->add_option("--input", ingest_.input, "CSV file with a header row")->required();
    sub->add_option("--domain", ingest_.domain, "news, sports, social_media or entertainment")
        ->required()
        ->check(CLI::IsMember(kDomainNames));
    sub->add_option("--column", ingest_.column, "Text column (default depends on --domain)");
    sub->add_option("--out", ingest_.out, "Corpus file to write (sidecar <out>.meta.json); stdout if omitted");
  }

  void ingest(CLI::App& sub) {
    const Domain domain = parse_domain(ingest_.domain);
    const std::string column = ingest_.column.empty() ? std::string(default_column(domain)) : ingest_.column;
    const DomainCorpus corpus = load_table(ingest_.input, column, domain);
    if (ingest_.out.empty()) {
      out_ << format_corpus(corpus);
      return;
    }
    write_corpus(corpus, ingest_.out);
    const json config = effective_config(sub);
    out_ << dump(stamp({{"domain_id", to_string(domain)},
                        {"record_count", corpus.record_count()},
                        {"source_path", corpus.source_path},
                        {"source_column", corpus.source_column}},
                       config));
  }

  void add_split() {
    auto* sub = subcommand("split", "Deterministic seeded train/test split of a corpus file",
                           [this](CLI::App& s) { split_corpus(s); });
    sub->add_option("--corpus", split_.corpus, "Corpus file written by ingest")->required();
    sub->add_option("--ratio", split_.ratio, "Training fraction")->check(open_unit_interval());
    sub->add_option("--seed", split_.seed, "Shuffle seed");
    sub->add_option("--domain", split_.domain, "Domain when the corpus has no sidecar")->check(CLI::IsMember(kDomainNames));
    sub->add_option("--train-out", split_.train_out, "Training corpus file")->required();
    sub->add_option("--test-out", split_.test_out, "Test corpus file")->required();
  }

  void split_corpus(CLI::App& sub) {
    std::optional<Domain> fallback;
    if (!split_.domain.empty()) fallback = parse_domain(split_.domain);
    const DomainCorpus corpus = read_corpus(split_.corpus, fallback);
    const CorpusSplit parts = split(corpus, split_.ratio, split_.seed);
    write_corpus(parts.train, split_.train_out, SplitProvenance{"train", parts.ratio, parts.seed, parts.train_indices});
    write_corpus(parts.test, split_.test_out, SplitProvenance{"test", parts.ratio, parts.seed, parts.test_indices});
    out_ << dump(stamp({{"domain_id", to_string(corpus.domain)},
                        {"train_count", parts.train.record_count()},
                        {"test_count", parts.test.record_count()},
                        {"ratio", parts.ratio},
                        {"seed", parts.seed}},
                       effective_config(sub)));
  }

  void add_train() {
    auto* sub = subcommand("train-sgns", "Train skip-gram negative-sampling embeddings on a corpus file",
                           [this](CLI::App& s) { train(s); });
    SgnsConfig& c = train_.config;
    sub->add_option("--corpus", train_.corpus, "Corpus file (one document per line)")->required();
    sub->add_option("--out", train_.out, "word2vec_text output (sidecar <out>.meta.json)")->required();
    sub->add_option("--language", train_.language, "Language tag stored with the space");
    sub->add_option("--dimension", c.dimension, "Vector dimension")->check(CLI::PositiveNumber);
    sub->add_option("--window", c.window, "Maximum context radius")->check(CLI::PositiveNumber);
    sub->add_option("--negatives", c.negatives, "Negative samples per pair")->check(CLI::PositiveNumber);
    sub->add_option("--epochs", c.epochs, "Passes over the corpus")->check(CLI::PositiveNumber);
    sub->add_option("--initial-learning-rate", c.initial_learning_rate, "Starting learning rate")->check(CLI::PositiveNumber);
    sub->add_option("--min-learning-rate", c.min_learning_rate, "Floor of the linear decay")->check(CLI::PositiveNumber);
    sub->add_option("--subsample-threshold", c.subsample_threshold, "Frequent-word subsampling threshold t")
        ->check(CLI::PositiveNumber);
    sub->add_option("--min-count", c.min_count, "Minimum token count")->check(CLI::PositiveNumber);
    sub->add_option("--seed", c.seed, "Random seed");
    sub->add_option("--threads", c.threads, "1 = deterministic; more = nondeterministic Hogwild")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--keep-numeric", c.keep_numeric, "Keep numeric tokens in the vocabulary");
  }

  void train(CLI::App& sub) {
    const auto documents = read_documents(train_.corpus);
    TrainResult result = train_sgns(tokenize_documents(documents), train_.config);
    result.space.set_language(train_.language);
    save_vectors(result.space, train_.out);
    const json summary = stamp({{"vectors", train_.out},
                                {"vocab_size", result.vocab.size()},
                                {"dimension", result.space.dimension()},
                                {"total_tokens", result.vocab.total_tokens()},
                                {"epoch_losses", result.epoch_losses},
                                {"provenance", result.space.source()},
                                {"sgns_config", to_json(train_.config)}},
                               effective_config(sub));
    write_output(train_.out + ".meta.json", dump(summary), out_);
    out_ << dump(summary);
  }

  void add_weat() {
    auto* sub = subcommand("weat", "Word Embedding Association Test", [this](CLI::App& s) { weat(s); });
    weat_.embeddings.bind(sub);
    sub->add_option("--targets-x", weat_.x, "Target set X (file or bundled name)")->required();
    sub->add_option("--targets-y", weat_.y, "Target set Y")->required();
    sub->add_option("--attrs-a", weat_.a, "Attribute set A")->required();
    sub->add_option("--attrs-b", weat_.b, "Attribute set B")->required();
    sub->add_option("--permutations", weat_.permutations, "Monte-Carlo iterations")->check(CLI::PositiveNumber);
    sub->add_option("--max-exact", weat_.max_exact, "Largest C(2n,n) enumerated exactly");
    sub->add_option("--method", weat_.method, "auto, exact or monte_carlo")
        ->check(CLI::IsMember({"auto", "exact", "monte_carlo"}));
    sub->add_option("--seed", weat_.seed, "Seed for Monte-Carlo partitions and balancing");
    sub->add_option("--min-size", weat_.min_size, "Minimum resolved size of each set")->check(CLI::Range(2, 1 << 20));
    sub->add_option("--threads", weat_.threads, "Monte-Carlo worker threads (result is thread-count independent)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--balance", weat_.balance, "Subsample the larger target set to equal size");
    sub->add_option("--out", weat_.out, "Result file; stdout if omitted");
  }

  void weat(CLI::App& sub) {
    const EmbeddingSpace space = weat_.embeddings.load();
    const std::string& language = weat_.embeddings.language;
    WeatConfig config;
    config.balance = weat_.balance;
    config.min_set_size = weat_.min_size;
    config.permutation.method = parse_permutation_method(weat_.method);
    config.permutation.iterations = weat_.permutations;
    config.permutation.max_exact = weat_.max_exact;
    config.permutation.seed = weat_.seed;
    config.permutation.threads = weat_.threads;
    const WeatResult result = run_weat(space, load_named_set(weat_.x, language), load_named_set(weat_.y, language),
                                       load_named_set(weat_.a, language), load_named_set(weat_.b, language), config);
    json j = to_json(result);
    j["embedding_provenance"] = space.source();
    write_output(weat_.out, dump(stamp(std::move(j), effective_config(sub))), out_);
  }

  void add_tgbi() {
    auto* sub = subcommand("tgbi", "Translation Gender Bias Index", [this](CLI::App& s) { tgbi_cmd(s); });
    auto* counts = sub->add_option("--counts", tgbi_.counts, "CSV with header set_id,n_he,n_she,n_neutral");
    auto* sentences = sub->add_option("--sentences", tgbi_.sentences, "Translated sentences, one per line");
    auto* manifest = sub->add_option("--manifest", tgbi_.manifest, "JSON: set_id -> [[first, last], ...] line ranges");
    sentences->needs(manifest);
    manifest->needs(sentences);
    counts->excludes(sentences);
    sub->add_option("--he-lexicon", tgbi_.he, "Masculine lexicon (file or bundled name)");
    sub->add_option("--she-lexicon", tgbi_.she, "Feminine lexicon");
    sub->add_option("--language", tgbi_.language, "Language tag; selects bundled lexicons");
    sub->add_option("--out", tgbi_.out, "Result file; stdout if omitted");
  }

  void tgbi_cmd(CLI::App& sub) {
    std::vector<GenderClassCounts> sets;
    if (!tgbi_.counts.empty()) {
      sets = load_counts(tgbi_.counts);
    } else if (!tgbi_.sentences.empty()) {
      const SentenceClassifier classifier(load_named_set(tgbi_.he, tgbi_.language),
                                          load_named_set(tgbi_.she, tgbi_.language));
      std::vector<std::string> lines;
      std::istringstream text(read_text(tgbi_.sentences));
      for (std::string line; std::getline(text, line);) lines.push_back(line);
      sets = count_sentences(lines, read_json(tgbi_.manifest), classifier);
    } else {
      throw CLI::RequiredError("--counts or --sentences/--manifest");
    }
    write_output(tgbi_.out, dump(stamp(to_json(tgbi(sets)), effective_config(sub))), out_);
  }

  void add_neighbors() {
    auto* sub = subcommand("neighbors", "Gender direction and the most gender-associated words",
                           [this](CLI::App& s) { neighbors(s); });
    neighbors_.embeddings.bind(sub);
    sub->add_option("--pairs", neighbors_.pairs, "Definitional pairs (file or bundled name)");
    sub->add_option("--method", neighbors_.method, "mean_difference or pca")
        ->check(CLI::IsMember({"mean_difference", "pca", "first_principal_component"}));
    sub->add_option("-k,--top-k", neighbors_.k, "Words per list")->check(CLI::PositiveNumber);
    auto* corpus = sub->add_option("--corpus", neighbors_.corpus, "Corpus file for --min-count");
    sub->add_option("--min-count", neighbors_.min_count, "Only score tokens seen this often in --corpus")->needs(corpus);
    sub->add_option("--out", neighbors_.out, "Result file; stdout if omitted");
  }

  void neighbors(CLI::App& sub) {
    const EmbeddingSpace space = neighbors_.embeddings.load();
    const auto pairs_path = locate_data_file(neighbors_.pairs, neighbors_.embeddings.language, ".csv");
    const GenderPairList pairs = load_pairs(pairs_path, neighbors_.embeddings.language);
    const GenderDirection direction = gender_direction(space, pairs, parse_direction_method(neighbors_.method));

    TokenFilter filter;
    if (!neighbors_.corpus.empty() && neighbors_.min_count > 0) {
      auto counts = std::make_shared<std::unordered_map<std::string, std::size_t>>();
      for (const auto& doc : tokenize_documents(read_documents(neighbors_.corpus))) {
        for (const auto& token : doc) ++(*counts)[token];
      }
      filter = [counts, min = neighbors_.min_count](std::string_view token) {
        const auto it = counts->find(std::string(token));
        return it != counts->end() && it->second >= min;
      };
    }
    const GenderedNeighbors result = gendered_neighbors(space, direction, neighbors_.k, filter);
    json j = to_json(result);
    j["direction"] = to_json(direction);
    j["embedding_provenance"] = space.source();
    write_output(neighbors_.out, dump(stamp(std::move(j), effective_config(sub))), out_);
  }

  void add_report() {
    auto* sub = subcommand("report", "Assemble one domain's report from weat/tgbi/neighbors outputs",
                           [this](CLI::App& s) { report(s); });
    sub->add_option("--domain", report_.domain, "Domain of these results")->required()->check(CLI::IsMember(kDomainNames));
    sub->add_option("--weat", report_.weat, "NAME=weat-result.json (repeatable)")->required()->default_str("");
    sub->add_option("--tgbi", report_.tgbi, "tgbi result JSON");
    sub->add_option("--neighbors", report_.neighbors, "neighbors result JSON");
    sub->add_option("--provenance", report_.provenance, "Embedding provenance (default: from the inputs)");
    sub->add_option("--out", report_.out, "Domain report file; stdout if omitted");
  }

  void report(CLI::App& sub) {
    DomainReport r;
    r.domain = parse_domain(report_.domain);
    json digests = json::object();
    std::string provenance = report_.provenance;
    auto note = [&](const std::string& key, const json& artifact) {
      digests[key] = artifact.value("config_digest", "");
      if (provenance.empty()) provenance = artifact.value("embedding_provenance", "");
    };
    for (const auto& spec : report_.weat) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
        throw CLI::ValidationError("--weat", "expected NAME=path, got '" + spec + "'");
      }
      const std::string name = spec.substr(0, eq);
      const json artifact = read_json(spec.substr(eq + 1));
      if (r.weat_results.contains(name)) throw Error("metric '" + name + "' given twice");
      r.weat_results.emplace(name, weat_result_from_json(artifact));
      note("weat:" + name, artifact);
    }
    if (!report_.tgbi.empty()) {
      const json artifact = read_json(report_.tgbi);
      r.tgbi_result = tgbi_result_from_json(artifact);
      note("tgbi", artifact);
    }
    if (!report_.neighbors.empty()) {
      const json artifact = read_json(report_.neighbors);
      try {
        r.masculine_top = scored_tokens_from_json(artifact.at("masculine_top"));
        r.feminine_top = scored_tokens_from_json(artifact.at("feminine_top"));
      } catch (const json::exception& e) {
        throw Error(report_.neighbors + ": not a neighbors result: " + e.what());
      }
      note("neighbors", artifact);
    }
    r.embedding_provenance = provenance;
    r.config_digest = config_digest({{"domain_id", report_.domain}, {"inputs", digests}});
    write_output(report_.out, dump(to_json(r)), out_);
    (void)sub;
  }

  void add_compare() {
    auto* sub = subcommand("compare", "Rank domains on shared WEAT metrics and emit the cross-domain report",
                           [this](CLI::App& s) { compare(s); });
    sub->add_option("--domain-report", compare_.reports, "Domain report JSON (repeat for each domain)")->required()->default_str("");
    sub->add_option("--format", compare_.format, "json, csv or markdown")->check(CLI::IsMember({"json", "csv", "markdown"}));
    sub->add_option("--generated-at", compare_.generated_at, "Timestamp to record (omitted by default)");
    sub->add_option("--out", compare_.out, "Report file; stdout if omitted");
  }

  void compare(CLI::App& sub) {
    std::vector<DomainReport> reports;
    for (const auto& path : compare_.reports) reports.push_back(domain_report_from_json(read_json(path)));
    std::optional<std::string> generated_at;
    if (!compare_.generated_at.empty()) generated_at = compare_.generated_at;
    const CrossDomainReport report = compare_domains(std::move(reports), generated_at);
    write_output(compare_.out, emit_report(report, parse_report_format(compare_.format)), out_);
    (void)sub;
  }

  std::ostream& out_;
  CLI::App app_;
  std::string log_level_ = "warn";
  std::map<std::string, std::function<void(CLI::App&)>> handlers_;

  struct {
    std::string input, domain, column, out;
  } ingest_;
  struct {
    std::string corpus, domain, train_out, test_out;
    double ratio = 0.8;
    std::uint64_t seed = 0;
  } split_;
  struct {
    std::string corpus, out, language = "en";
    SgnsConfig config;
  } train_;
  struct {
    Embeddings embeddings;
    std::string x, y, a, b, method = "auto", out;
    std::uint64_t permutations = 100'000, max_exact = 200'000, seed = 0;
    std::size_t min_size = 2, threads = 1;
    bool balance = false;
  } weat_;
  struct {
    std::string counts, sentences, manifest, he = "he_words", she = "she_words", language = "en", out;
  } tgbi_;
  struct {
    Embeddings embeddings;
    std::string pairs = "gender_pairs", method = "mean_difference", corpus, out;
    std::size_t k = 20, min_count = 0;
  } neighbors_;
  struct {
    std::string domain, tgbi, neighbors, provenance, out;
    std::vector<std::string> weat;
  } report_;
  struct {
    std::vector<std::string> reports;
    std::string format = "json", generated_at, out;
  } compare_;
};

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> expanded;
  try {
    expanded = expand_config(args);
  } catch (const std::exception& e) {
    err << "biasprobe: error: " << e.what() << "\n";
    return 1;
  }

  Cli cli(out);
  std::vector<std::string> reversed(expanded.rbegin(), expanded.rend() - (expanded.empty() ? 0 : 1));
  try {
    cli.app().parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = cli.app().exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    cli.run();
  } catch (const CLI::ParseError& e) {
    err << "biasprobe: usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "biasprobe: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace biasprobe::cli
