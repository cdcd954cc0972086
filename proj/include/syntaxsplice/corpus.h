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

// Corpus ingestion, the substitution universe, sampling and export.
//
// Input manifest, one JSON object per line:
//   {"id": "u1", "tokens": ["He", "never", "lied"],
//    "tree": "(S (NP (PRP He)) (ADVP (RB never)) (VP (VBD lied)))",
//    "alignment": "u1.tsv", "features": "u1.melf", "frame_shift_ms": 12.5}
// Relative paths resolve against the manifest's directory.
//
// Output manifest rows:
//   {"id", "origin": "original"|"augmented", "tokens", "phonemes",
//    "joint_tags", "features", "provenance": {host, donor, host_span,
//    donor_span, label} | null}

#ifndef SYNTAXSPLICE_CORPUS_H_
#define SYNTAXSPLICE_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "syntaxsplice/splice.h"
#include "syntaxsplice/treebank.h"

namespace syntaxsplice {

// A constituent occurrence: record index and index into that record's
// constituent list.
struct ConstituentRef {
  int record = 0;
  int constituent = 0;

  friend bool operator==(const ConstituentRef&, const ConstituentRef&) = default;
};

// One substitution: replace `host` by `donor`.
struct PairTuple {
  ConstituentRef host;
  ConstituentRef donor;

  friend bool operator==(const PairTuple&, const PairTuple&) = default;
};

// Immutable set of utterances plus the label index of their constituents
// under one policy. Records are ordered by id.
class Corpus {
 public:
  Corpus() : Corpus(std::vector<UtteranceRecord>{}, ConstituentPolicy{}) {}
  // Validates cross-record consistency (unique ids, equal n_bins and frame
  // shift) and indexes constituents.
  Corpus(std::vector<UtteranceRecord> records, ConstituentPolicy policy);

  // The tuple index points into label_index_, whose nodes survive a move but
  // not a copy.
  Corpus(const Corpus&) = delete;
  Corpus& operator=(const Corpus&) = delete;
  Corpus(Corpus&&) = default;
  Corpus& operator=(Corpus&&) = default;

  // Same records, indexed under another policy.
  Corpus Reindexed(const ConstituentPolicy& policy) const;

  int size() const { return static_cast<int>(records_->size()); }
  bool empty() const { return records_->empty(); }
  const std::vector<UtteranceRecord>& records() const { return *records_; }
  const UtteranceRecord& record(int i) const { return (*records_)[i]; }
  const ConstituentPolicy& policy() const { return policy_; }

  const std::vector<Constituent>& constituents(int record) const {
    return constituents_[record];
  }
  const Constituent& constituent(ConstituentRef ref) const {
    return constituents_[ref.record][ref.constituent];
  }
  // label -> occurrences, ordered by (record, document order).
  const std::map<std::string, std::vector<ConstituentRef>>& label_index() const {
    return label_index_;
  }

  // Number of valid substitution tuples.
  uint64_t universe_size() const {
    return host_offsets_.empty() ? 0 : host_offsets_.back();
  }
  // The index-th tuple in enumeration order (host record id, host span,
  // donor record id, donor span). index < universe_size().
  PairTuple TupleAt(uint64_t index) const;

  int64_t total_frames() const;

 private:
  struct HostSlot {
    ConstituentRef ref;
    const std::vector<ConstituentRef>* occurrences = nullptr;
    // Occurrences excluded as donors: [skip_begin, skip_end).
    int skip_begin = 0;
    int skip_end = 0;
  };

  Corpus(std::shared_ptr<const std::vector<UtteranceRecord>> records,
         ConstituentPolicy policy);

  void BuildIndex();

  std::shared_ptr<const std::vector<UtteranceRecord>> records_;
  ConstituentPolicy policy_;
  std::vector<std::vector<Constituent>> constituents_;
  std::map<std::string, std::vector<ConstituentRef>> label_index_;
  std::vector<HostSlot> hosts_;
  std::vector<uint64_t> host_offsets_;  // prefix sums, size hosts_ + 1
};

struct LoadOptions {
  ConstituentPolicy policy;
  // Keep only the first `limit` manifest rows.
  std::optional<size_t> limit;
};

// Reads a manifest stream. Relative file paths resolve against `base_dir`.
Corpus LoadCorpus(std::istream& manifest, const std::filesystem::path& base_dir,
                  const LoadOptions& options = {});
Corpus LoadCorpusFile(const std::filesystem::path& manifest_path,
                      const LoadOptions& options = {});

// Calls `fn` for every tuple in enumeration order. Same-node tuples are never
// produced; same-record tuples only when the policy allows self pairs.
void EnumeratePairs(const Corpus& corpus,
                    const std::function<void(const PairTuple&)>& fn);

enum class SampleMode { kRandom, kExhaustive };

struct SampleSpec {
  // Required in random mode; an optional cap in exhaustive mode.
  std::optional<uint64_t> target_count;
  uint64_t seed = 0;
  ConstituentPolicy policy;
  bool dedupe = false;
  SampleMode mode = SampleMode::kRandom;
  int workers = 1;
};

struct SampleStats {
  uint64_t draws = 0;
  uint64_t accepted = 0;
  uint64_t rejected = 0;
};

// Builds augmented examples and passes them to `sink` in a sequence that
// depends only on (corpus, spec), independent of `spec.workers`.
//
// Random mode draws tuple indices uniformly from the universe with the
// counter-based stream for `spec.seed`. With dedupe, examples whose token
// sequence matches an original or an earlier accepted example are rejected;
// kExhaustedUniverse is thrown after universe_size * 10 rejections.
SampleStats SampleAugmented(const Corpus& corpus, const SampleSpec& spec,
                            const std::function<void(AugmentedExample&&)>& sink);

// Convenience wrapper collecting the sampled examples.
std::vector<AugmentedExample> SampleAugmented(const Corpus& corpus,
                                              const SampleSpec& spec);

struct ExportReport {
  uint64_t n_original = 0;
  uint64_t n_augmented = 0;
  int64_t total_frames = 0;

  friend bool operator==(const ExportReport&, const ExportReport&) = default;
};

// Writes <out_dir>/manifest.jsonl and <out_dir>/features/*.melf. Originals are
// written first with all-zero joint tags, then each added example.
class DatasetWriter {
 public:
  explicit DatasetWriter(const std::filesystem::path& out_dir);

  void WriteOriginals(const Corpus& corpus);
  void Add(const AugmentedExample& example);
  ExportReport Finish();

  static constexpr const char* kManifestName = "manifest.jsonl";

 private:
  void WriteRow(const std::string& row);

  std::filesystem::path out_dir_;
  std::ofstream manifest_;
  ExportReport report_;
  bool finished_ = false;
};

ExportReport ExportDataset(const Corpus& originals,
                           const std::vector<AugmentedExample>& augmented,
                           const std::filesystem::path& out_dir);

// Space-joined token sequence, the dedupe key.
std::string TokenKey(const std::vector<std::string>& tokens);

}  // namespace syntaxsplice

#endif  // SYNTAXSPLICE_CORPUS_H_
