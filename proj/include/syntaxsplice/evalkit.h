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

// Word and phoneme error rates.

#ifndef SYNTAXSPLICE_EVALKIT_H_
#define SYNTAXSPLICE_EVALKIT_H_

#include <cstdint>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace syntaxsplice {

struct ErrorRateReport {
  int64_t substitutions = 0;
  int64_t insertions = 0;
  int64_t deletions = 0;
  int64_t reference_length = 0;

  int64_t errors() const { return substitutions + insertions + deletions; }
  double rate() const {
    return static_cast<double>(errors()) / static_cast<double>(reference_length);
  }
  ErrorRateReport& operator+=(const ErrorRateReport& other);
};

// Unit-cost Levenshtein alignment of hypothesis against reference. Among
// minimal alignments, substitutions are preferred over insertion+deletion
// pairs. Throws kEmptyReference.
ErrorRateReport EditRate(std::span<const std::string> reference,
                         std::span<const std::string> hypothesis);

// Minimal edit distance only.
int64_t EditDistance(std::span<const std::string> a,
                     std::span<const std::string> b);

// Divides every rate by rates[baseline_key]. Throws kMissingBaselineKey or
// kZeroBaseline.
std::map<std::string, double> RelativeRates(
    const std::map<std::string, double>& rates, const std::string& baseline_key);

struct UtteranceScore {
  std::string id;
  ErrorRateReport report;
};

struct ScoreSummary {
  std::vector<UtteranceScore> utterances;
  // Counts pooled over all utterances; rate = total errors / total reference.
  ErrorRateReport pooled;
};

// Scores `utterance_id<TAB>reference<TAB>hypothesis` lines with
// space-separated tokens.
ScoreSummary ScoreTsv(std::istream& in);

// {"pooled": {...}, "utterances": [{"id", ...}, ...]}
std::string ScoreSummaryJson(const ScoreSummary& summary);

std::vector<std::string> SplitTokens(const std::string& text);

}  // namespace syntaxsplice

#endif  // SYNTAXSPLICE_EVALKIT_H_
