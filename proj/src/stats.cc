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

#include "syntaxsplice/stats.h"

#include <sstream>

#include "json.hpp"
#include "syntaxsplice/error.h"

namespace syntaxsplice {
namespace {

Span ReadSpan(const nlohmann::json& provenance, const char* key) {
  const auto& v = provenance.at(key);
  if (!v.is_array() || v.size() != 2) {
    throw Error(ErrorCode::kMissingProvenance,
                std::string(key) + " is not a [begin, end] pair");
  }
  const Span span{v[0].get<int>(), v[1].get<int>()};
  if (span.begin < 0 || span.end <= span.begin) {
    throw Error(ErrorCode::kMissingProvenance,
                std::string(key) + " is an empty span");
  }
  return span;
}

nlohmann::ordered_json CountsJson(const LengthHistogram& h) {
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (const auto& [length, count] : h.counts) {
    counts[std::to_string(length)] = count;
  }
  return counts;
}

const char* KindName(HistogramKind kind) {
  return kind == HistogramKind::kInserted ? "inserted" : "removed";
}

}  // namespace

void LengthHistogram::Add(int length) {
  ++counts[length];
  ++total;
}

void LengthHistogram::Merge(const LengthHistogram& other) {
  for (const auto& [length, count] : other.counts) counts[length] += count;
  total += other.total;
}

double LengthHistogram::MassBetween(int lo, int hi) const {
  if (total == 0) return 0.0;
  uint64_t in_range = 0;
  for (auto it = counts.lower_bound(lo); it != counts.end() && it->first <= hi;
       ++it) {
    in_range += it->second;
  }
  return static_cast<double>(in_range) / static_cast<double>(total);
}

void LengthHistograms::Add(const Provenance& provenance) {
  inserted.Add(provenance.donor_span.size());
  removed.Add(provenance.host_span.size());
}

void LengthHistograms::Merge(const LengthHistograms& other) {
  inserted.Merge(other.inserted);
  removed.Merge(other.removed);
}

LengthHistograms ConstituentLengthHistograms(std::istream& manifest) {
  LengthHistograms histograms;
  std::string line;
  int line_number = 0;
  while (std::getline(manifest, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "manifest line " + std::to_string(line_number);
    const auto row = nlohmann::json::parse(line, nullptr, false);
    if (row.is_discarded() || !row.is_object()) {
      throw Error(ErrorCode::kManifestParse, where + ": not a JSON object");
    }
    if (row.value("origin", "") == "original") continue;
    const auto it = row.find("provenance");
    if (it == row.end() || !it->is_object()) {
      throw Error(ErrorCode::kMissingProvenance, where);
    }
    try {
      Provenance p;
      p.host_span = ReadSpan(*it, "host_span");
      p.donor_span = ReadSpan(*it, "donor_span");
      histograms.Add(p);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kMissingProvenance, where + ": " + e.what());
    } catch (const Error& e) {
      RethrowWithContext(e, where);
    }
  }
  return histograms;
}

std::string RenderReport(const LengthHistogram& histogram, ReportFormat format) {
  if (format == ReportFormat::kJson) return CountsJson(histogram).dump();
  std::ostringstream out;
  for (const auto& [length, count] : histogram.counts) {
    out << length << '\t' << count << '\n';
  }
  return out.str();
}

std::string RenderReport(const LengthHistograms& histograms,
                         ReportFormat format) {
  if (format == ReportFormat::kJson) {
    nlohmann::ordered_json report;
    for (const LengthHistogram* h : {&histograms.inserted, &histograms.removed}) {
      report[KindName(h->kind)] = {{"counts", CountsJson(*h)},
                                   {"total", h->total}};
    }
    return report.dump();
  }
  std::ostringstream out;
  out << "kind\tlength\tcount\n";
  for (const LengthHistogram* h : {&histograms.inserted, &histograms.removed}) {
    for (const auto& [length, count] : h->counts) {
      out << KindName(h->kind) << '\t' << length << '\t' << count << '\n';
    }
  }
  return out.str();
}

}  // namespace syntaxsplice
