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

#include "biasprobe/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "biasprobe/digest.hpp"
#include "biasprobe/error.hpp"
#include "biasprobe/version.hpp"

namespace biasprobe {

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, result.ptr);
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << v;
  return out.str();
}

// Orders domains by key descending, then by name; groups equal keys.
void rank(std::vector<std::pair<Domain, double>> entries, std::vector<Domain>& order,
          std::vector<std::vector<Domain>>& ties) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : to_string(a.first) < to_string(b.first);
  });
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i;
    while (j < entries.size() && entries[j].second == entries[i].second) ++j;
    if (j - i > 1) {
      std::vector<Domain> group;
      for (std::size_t k = i; k < j; ++k) group.push_back(entries[k].first);
      ties.push_back(std::move(group));
    }
    i = j;
  }
  for (const auto& e : entries) order.push_back(e.first);
}

nlohmann::json domains_json(const std::vector<Domain>& domains) {
  nlohmann::json out = nlohmann::json::array();
  for (Domain d : domains) out.push_back(to_string(d));
  return out;
}

std::vector<Domain> domains_from_json(const nlohmann::json& json) {
  std::vector<Domain> out;
  for (const auto& d : json) out.push_back(parse_domain(d.get<std::string>()));
  return out;
}

nlohmann::json groups_json(const std::vector<std::vector<Domain>>& groups) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& g : groups) out.push_back(domains_json(g));
  return out;
}

std::vector<std::vector<Domain>> groups_from_json(const nlohmann::json& json) {
  std::vector<std::vector<Domain>> out;
  for (const auto& g : json) out.push_back(domains_from_json(g));
  return out;
}

nlohmann::json tokens_json(const std::vector<ScoredToken>& tokens) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : tokens) out.push_back(to_json(t));
  return out;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string markdown_cell(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string emit_csv(const CrossDomainReport& report) {
  std::string out = "domain,metric,effect_size,p_value,method\n";
  for (const auto& domain : report.domains) {
    for (const auto& [metric, result] : domain.weat_results) {
      out += std::string(to_string(domain.domain)) + "," + csv_field(metric) + "," + format_double(result.effect_size) +
             "," + format_double(result.p_value) + "," + std::string(to_string(result.method)) + "\n";
    }
  }
  return out;
}

std::string emit_markdown(const CrossDomainReport& report) {
  std::ostringstream out;
  out << "# Cross-domain gender bias report\n\n";
  out << "- tool version: " << report.tool_version << "\n";
  out << "- config digest: `" << report.config_digest << "`\n";
  out << "- generated at: " << report.generated_at.value_or("(not recorded)") << "\n";
  out << "- domains: ";
  for (std::size_t i = 0; i < report.domains.size(); ++i) {
    out << (i ? ", " : "") << to_string(report.domains[i].domain);
  }
  out << "\n\n";

  auto find_domain = [&](Domain d) -> const DomainReport& {
    for (const auto& r : report.domains) {
      if (r.domain == d) return r;
    }
    throw Error("ranking refers to a domain missing from the report");
  };

  out << "## WEAT rankings\n\n";
  out << "Domains ordered by signed effect size (positive d: first target set leans toward the first attribute "
         "set).\n\n";
  for (const auto& [metric, ranking] : report.rankings) {
    out << "### " << markdown_cell(metric) << "\n\n";
    out << "| rank | domain | effect size d | p-value | method | permutations |\n";
    out << "|---:|---|---:|---:|---|---:|\n";
    for (std::size_t i = 0; i < ranking.by_effect_size.size(); ++i) {
      const Domain d = ranking.by_effect_size[i];
      const WeatResult& r = find_domain(d).weat_results.at(metric);
      out << "| " << i + 1 << " | " << to_string(d) << " | " << fixed(r.effect_size) << " | " << fixed(r.p_value, 5)
          << " | " << to_string(r.method) << " | " << r.n_partitions_evaluated << " |\n";
    }
    out << "\n";
    if (!ranking.ties.empty()) {
      out << "Ties (broken by domain name):";
      for (const auto& group : ranking.ties) {
        out << " {";
        for (std::size_t i = 0; i < group.size(); ++i) out << (i ? ", " : "") << to_string(group[i]);
        out << "}";
      }
      out << "\n\n";
    }
    if (!ranking.omitted.empty()) {
      out << "Not reported by:";
      for (Domain d : ranking.omitted) out << " " << to_string(d);
      out << "\n\n";
    }
  }

  out << "## Domains\n\n";
  for (const auto& domain : report.domains) {
    out << "### " << to_string(domain.domain) << "\n\n";
    out << "- embeddings: " << markdown_cell(domain.embedding_provenance.empty() ? "(unknown)" : domain.embedding_provenance)
        << "\n";
    out << "- config digest: `" << domain.config_digest << "`\n";
    if (domain.tgbi_result) {
      out << "- TGBI index: " << fixed(domain.tgbi_result->index) << " over " << domain.tgbi_result->per_set.size()
          << " sets\n";
    } else {
      out << "- TGBI index: \n";
    }
    out << "\n";
    const std::size_t rows = std::max(domain.masculine_top.size(), domain.feminine_top.size());
    if (rows > 0) {
      out << "| # | masculine-leaning | cos | feminine-leaning | cos |\n";
      out << "|---:|---|---:|---|---:|\n";
      for (std::size_t i = 0; i < rows; ++i) {
        out << "| " << i + 1 << " | ";
        if (i < domain.masculine_top.size()) {
          out << markdown_cell(domain.masculine_top[i].token) << " | " << fixed(domain.masculine_top[i].score);
        } else {
          out << " | ";
        }
        out << " | ";
        if (i < domain.feminine_top.size()) {
          out << markdown_cell(domain.feminine_top[i].token) << " | " << fixed(domain.feminine_top[i].score);
        } else {
          out << " | ";
        }
        out << " |\n";
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace

CrossDomainReport compare_domains(std::vector<DomainReport> reports, std::optional<std::string> generated_at) {
  std::set<Domain> seen;
  for (const auto& r : reports) {
    if (!seen.insert(r.domain).second) throw Error("domain '" + std::string(to_string(r.domain)) + "' reported twice");
  }
  if (reports.size() < 2) throw Error("cross-domain comparison needs at least two domains");

  std::map<std::string, std::vector<std::pair<Domain, double>>> by_metric;
  for (const auto& r : reports) {
    for (const auto& [metric, result] : r.weat_results) by_metric[metric].emplace_back(r.domain, result.effect_size);
  }
  if (std::none_of(by_metric.begin(), by_metric.end(), [](const auto& m) { return m.second.size() >= 2; })) {
    throw Error("no WEAT metric name is shared by two or more domains");
  }

  CrossDomainReport report;
  for (const auto& [metric, entries] : by_metric) {
    MetricRanking ranking;
    rank(entries, ranking.by_effect_size, ranking.ties);
    std::vector<std::pair<Domain, double>> absolute;
    for (const auto& [d, e] : entries) absolute.emplace_back(d, std::fabs(e));
    rank(std::move(absolute), ranking.by_absolute_effect_size, ranking.absolute_ties);
    for (const auto& r : reports) {
      if (!r.weat_results.contains(metric)) ranking.omitted.push_back(r.domain);
    }
    report.rankings.emplace(metric, std::move(ranking));
  }

  nlohmann::json digest_input = nlohmann::json::array();
  for (const auto& r : reports) digest_input.push_back({to_string(r.domain), r.config_digest});
  report.config_digest = config_digest(digest_input);
  report.tool_version = std::string(kVersion);
  report.generated_at = std::move(generated_at);
  report.domains = std::move(reports);
  return report;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  if (name == "markdown" || name == "md") return ReportFormat::markdown;
  throw Error("unknown report format: " + std::string(name) + "; expected json, csv or markdown");
}

std::string emit_report(const CrossDomainReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: return to_json(report).dump(2) + "\n";
    case ReportFormat::csv: return emit_csv(report);
    case ReportFormat::markdown: return emit_markdown(report);
  }
  throw Error("unknown report format");
}

CrossDomainReport parse_report(std::string_view json_text) {
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("report is not valid JSON: ") + e.what());
  }
  return cross_domain_report_from_json(json);
}

nlohmann::json to_json(const DomainReport& r) {
  nlohmann::json weat = nlohmann::json::object();
  for (const auto& [metric, result] : r.weat_results) weat[metric] = to_json(result);
  return {
      {"domain_id", to_string(r.domain)},
      {"weat_results", weat},
      {"tgbi_result", r.tgbi_result ? to_json(*r.tgbi_result) : nlohmann::json(nullptr)},
      {"masculine_top", tokens_json(r.masculine_top)},
      {"feminine_top", tokens_json(r.feminine_top)},
      {"embedding_provenance", r.embedding_provenance},
      {"config_digest", r.config_digest},
  };
}

DomainReport domain_report_from_json(const nlohmann::json& json) {
  DomainReport r;
  try {
    r.domain = parse_domain(json.at("domain_id").get<std::string>());
    for (const auto& [metric, result] : json.at("weat_results").items()) {
      r.weat_results.emplace(metric, weat_result_from_json(result));
    }
    if (json.contains("tgbi_result") && !json.at("tgbi_result").is_null()) {
      r.tgbi_result = tgbi_result_from_json(json.at("tgbi_result"));
    }
    if (json.contains("masculine_top")) r.masculine_top = scored_tokens_from_json(json.at("masculine_top"));
    if (json.contains("feminine_top")) r.feminine_top = scored_tokens_from_json(json.at("feminine_top"));
    r.embedding_provenance = json.value("embedding_provenance", "");
    r.config_digest = json.value("config_digest", "");
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid domain report JSON: ") + e.what());
  }
  return r;
}

nlohmann::json to_json(const CrossDomainReport& r) {
  nlohmann::json domains = nlohmann::json::array();
  for (const auto& d : r.domains) domains.push_back(to_json(d));
  nlohmann::json rankings = nlohmann::json::object();
  for (const auto& [metric, ranking] : r.rankings) {
    rankings[metric] = {
        {"by_effect_size", domains_json(ranking.by_effect_size)},
        {"by_absolute_effect_size", domains_json(ranking.by_absolute_effect_size)},
        {"ties", groups_json(ranking.ties)},
        {"absolute_ties", groups_json(ranking.absolute_ties)},
        {"omitted", domains_json(ranking.omitted)},
    };
  }
  return {
      {"domains", domains},
      {"rankings", rankings},
      {"generated_at", r.generated_at ? nlohmann::json(*r.generated_at) : nlohmann::json(nullptr)},
      {"tool_version", r.tool_version},
      {"config_digest", r.config_digest},
  };
}

CrossDomainReport cross_domain_report_from_json(const nlohmann::json& json) {
  CrossDomainReport r;
  try {
    for (const auto& d : json.at("domains")) r.domains.push_back(domain_report_from_json(d));
    for (const auto& [metric, ranking] : json.at("rankings").items()) {
      MetricRanking m;
      m.by_effect_size = domains_from_json(ranking.at("by_effect_size"));
      m.by_absolute_effect_size = domains_from_json(ranking.at("by_absolute_effect_size"));
      m.ties = groups_from_json(ranking.at("ties"));
      m.absolute_ties = groups_from_json(ranking.at("absolute_ties"));
      m.omitted = domains_from_json(ranking.at("omitted"));
      r.rankings.emplace(metric, std::move(m));
    }
    if (json.contains("generated_at") && !json.at("generated_at").is_null()) {
      r.generated_at = json.at("generated_at").get<std::string>();
    }
    r.tool_version = json.at("tool_version").get<std::string>();
    r.config_digest = json.at("config_digest").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid cross-domain report JSON: ") + e.what());
  }
  return r;
}

}  // namespace biasprobe
