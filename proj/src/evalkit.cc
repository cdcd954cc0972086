// Copyright 2026 The SyntaxSplice Authors. All Rights Reserved.
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

#include "syntaxsplice/evalkit.h"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "syntaxsplice/error.h"

namespace syntaxsplice {
namespace {

// Full (m+1) x (n+1) cost table, row-major.
std::vector<int64_t> CostTable(std::span<const std::string> ref,
                               std::span<const std::string> hyp) {
  const size_t m = ref.size();
  const size_t n = hyp.size();
  std::vector<int64_t> d((m + 1) * (n + 1));
  auto at = [&](size_t i, size_t j) -> int64_t& { return d[i * (n + 1) + j]; };
  for (size_t i = 0; i <= m; ++i) at(i, 0) = static_cast<int64_t>(i);
  for (size_t j = 0; j <= n; ++j) at(0, j) = static_cast<int64_t>(j);
  for (size_t i = 1; i <= m; ++i) {
    for (size_t j = 1; j <= n; ++j) {
      const int64_t sub = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      at(i, j) = std::min({sub, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }
  return d;
}

nlohmann::ordered_json ReportJson(const ErrorRateReport& r) {
  nlohmann::ordered_json j;
  j["substitutions"] = r.substitutions;
  j["insertions"] = r.insertions;
  j["deletions"] = r.deletions;
  j["reference_length"] = r.reference_length;
  j["errors"] = r.errors();
  j["rate"] = r.reference_length > 0 ? r.rate() : 0.0;
  return j;
}

}  // namespace

ErrorRateReport& ErrorRateReport::operator+=(const ErrorRateReport& other) {
  substitutions += other.substitutions;
  insertions += other.insertions;
  deletions += other.deletions;
  reference_length += other.reference_length;
  return *this;
}

int64_t EditDistance(std::span<const std::string> a,
                     std::span<const std::string> b) {
  // Two-row variant; the full table is only needed for the backtrace.
  std::vector<int64_t> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int64_t>(j);
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int64_t>(i);
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1),
                         prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

ErrorRateReport EditRate(std::span<const std::string> reference,
                         std::span<const std::string> hypothesis) {
  if (reference.empty()) {
    throw Error(ErrorCode::kEmptyReference, "reference has no tokens");
  }
  const auto d = CostTable(reference, hypothesis);
  const size_t n = hypothesis.size();
  auto at = [&](size_t i, size_t j) { return d[i * (n + 1) + j]; };

  ErrorRateReport report;
  report.reference_length = static_cast<int64_t>(reference.size());
  size_t i = reference.size();
  size_t j = n;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        at(i, j) == at(i - 1, j - 1) +
                        (reference[i - 1] == hypothesis[j - 1] ? 0 : 1)) {
      if (reference[i - 1] != hypothesis[j - 1]) ++report.substitutions;
      --i;
      --j;
    } else if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      ++report.deletions;
      --i;
    } else {
      ++report.insertions;
      --j;
    }
  }
  return report;
}

std::map<std::string, double> RelativeRates(
    const std::map<std::string, double>& rates, const std::string& baseline_key) {
  const auto it = rates.find(baseline_key);
  if (it == rates.end()) {
    throw Error(ErrorCode::kMissingBaselineKey, "no rate for " + baseline_key);
  }
  if (!(it->second > 0.0)) {
    throw Error(ErrorCode::kZeroBaseline, baseline_key + " rate is not positive");
  }
  std::map<std::string, double> out;
  for (const auto& [name, rate] : rates) out[name] = rate / it->second;
  out[baseline_key] = 1.0;
  return out;
}

std::vector<std::string> SplitTokens(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(std::move(t));
  return tokens;
}

ScoreSummary ScoreTsv(std::istream& in) {
  ScoreSummary summary;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const size_t t1 = line.find('\t');
    const size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos) {
      throw Error(ErrorCode::kMalformedRow,
                  "line " + std::to_string(line_number) +
                      ": expected id<TAB>reference<TAB>hypothesis");
    }
    UtteranceScore score;
    score.id = line.substr(0, t1);
    const auto ref = SplitTokens(line.substr(t1 + 1, t2 - t1 - 1));
    const auto hyp = SplitTokens(line.substr(t2 + 1));
    try {
      score.report = EditRate(ref, hyp);
    } catch (const Error& e) {
      RethrowWithContext(e, "line " + std::to_string(line_number));
    }
    summary.pooled += score.report;
    summary.utterances.push_back(std::move(score));
  }
  return summary;
}

std::string ScoreSummaryJson(const ScoreSummary& summary) {
  nlohmann::ordered_json j;
  j["pooled"] = ReportJson(summary.pooled);
  j["utterances"] = nlohmann::ordered_json::array();
  for (const auto& u : summary.utterances) {
    auto row = ReportJson(u.report);
    row["id"] = u.id;
    j["utterances"].push_back(std::move(row));
  }
  return j.dump();
}

}  // namespace syntaxsplice
