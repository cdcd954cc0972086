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

// Length distributions of the constituents used by an augmented dataset.

#ifndef SYNTAXSPLICE_STATS_H_
#define SYNTAXSPLICE_STATS_H_

#include <cstdint>
#include <istream>
#include <map>
#include <string>

#include "syntaxsplice/splice.h"

namespace syntaxsplice {

enum class HistogramKind { kInserted, kRemoved };

struct LengthHistogram {
  HistogramKind kind = HistogramKind::kInserted;
  std::map<int, uint64_t> counts;  // word length -> count
  uint64_t total = 0;

  void Add(int length);
  void Merge(const LengthHistogram& other);
  // Share of the total with length in [lo, hi]; 0 when empty.
  double MassBetween(int lo, int hi) const;
};

struct LengthHistograms {
  LengthHistogram inserted{HistogramKind::kInserted, {}, 0};
  LengthHistogram removed{HistogramKind::kRemoved, {}, 0};

  void Add(const Provenance& provenance);
  void Merge(const LengthHistograms& other);
};

// Folds an output manifest. Original rows are skipped; augmented rows without
// provenance spans throw kMissingProvenance.
LengthHistograms ConstituentLengthHistograms(std::istream& manifest);

enum class ReportFormat { kTsv, kJson };

// One histogram: "1\t8\n3\t2\n" or {"1":8,"3":2}, sorted by length.
std::string RenderReport(const LengthHistogram& histogram, ReportFormat format);

// Both histograms. TSV rows are kind<TAB>length<TAB>count; JSON is
// {"inserted":{"counts":{...},"total":N},"removed":{...}}.
std::string RenderReport(const LengthHistograms& histograms, ReportFormat format);

}  // namespace syntaxsplice

#endif  // SYNTAXSPLICE_STATS_H_
