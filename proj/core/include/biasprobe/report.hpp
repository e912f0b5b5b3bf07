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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "biasprobe/analysis.hpp"
#include "biasprobe/corpus.hpp"
#include "biasprobe/tgbi.hpp"
#include "biasprobe/weat.hpp"

namespace biasprobe {

/// Everything measured for one domain.
struct DomainReport {
  Domain domain = Domain::news;
  std::map<std::string, WeatResult> weat_results;  // metric name -> result
  std::optional<TgbiResult> tgbi_result;
  std::vector<ScoredToken> masculine_top;
  std::vector<ScoredToken> feminine_top;
  std::string embedding_provenance;
  std::string config_digest;

  bool operator==(const DomainReport&) const = default;
};

/// Domains ordered for one WEAT metric. Ties on effect size are broken by
/// domain name and listed in `ties` / `absolute_ties`.
struct MetricRanking {
  std::vector<Domain> by_effect_size;           // signed d, descending
  std::vector<Domain> by_absolute_effect_size;  // |d|, descending
  std::vector<std::vector<Domain>> ties;
  std::vector<std::vector<Domain>> absolute_ties;
  std::vector<Domain> omitted;  // compared domains lacking this metric

  bool operator==(const MetricRanking&) const = default;
};

struct CrossDomainReport {
  std::vector<DomainReport> domains;
  std::map<std::string, MetricRanking> rankings;
  std::optional<std::string> generated_at;
  std::string tool_version;
  std::string config_digest;

  bool operator==(const CrossDomainReport&) const = default;
};

/// Ranks the domains on every WEAT metric name they report. Needs at least
/// two distinct domains and at least one metric reported by two of them.
/// `generated_at` is recorded verbatim; it is left out by default so reports
/// are reproducible byte for byte.
CrossDomainReport compare_domains(std::vector<DomainReport> reports,
                                  std::optional<std::string> generated_at = std::nullopt);

enum class ReportFormat { json, csv, markdown };

ReportFormat parse_report_format(std::string_view name);

/// json: sorted keys, two-space indent. csv: header
/// "domain,metric,effect_size,p_value,method" then one row per (domain,
/// metric). markdown: a ranking table per metric, then each domain's
/// gendered word lists and TGBI.
std::string emit_report(const CrossDomainReport& report, ReportFormat format);

CrossDomainReport parse_report(std::string_view json_text);

nlohmann::json to_json(const DomainReport& report);
DomainReport domain_report_from_json(const nlohmann::json& json);
nlohmann::json to_json(const CrossDomainReport& report);
CrossDomainReport cross_domain_report_from_json(const nlohmann::json& json);

}  // namespace biasprobe
