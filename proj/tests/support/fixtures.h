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

// Shared test data: the two-utterance "He never lied" / "She shook her head"
// corpus with toy alignments, and a synthetic corpus generator.

#ifndef SYNTAXSPLICE_TESTS_SUPPORT_FIXTURES_H_
#define SYNTAXSPLICE_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "syntaxsplice/corpus.h"

namespace syntaxsplice::testing {

inline constexpr const char* kTreeU1 =
    "(S (NP (PRP He)) (ADVP (RB never)) (VP (VBD lied)))";
inline constexpr const char* kTreeU2 =
    "(S (NP (PRP She)) (VP (VBD shook) (NP (PRP$ her) (NN head))))";

// U1: one phoneme per word, frames [0,10) [10,25) [25,40), 45 frames.
std::vector<PhonemeEntry> ToyAlignmentU1();
inline constexpr int kToyFramesU1 = 45;
// U2: "She" [0,8), "shook" [8,20), "her" [20,28), "head" [28,36), 40 frames.
std::vector<PhonemeEntry> ToyAlignmentU2();
inline constexpr int kToyFramesU2 = 40;

// Random finite features, a pure function of (seed, shape).
FeatureMatrix RandomFeatures(int n_frames, int n_bins, uint64_t seed);

UtteranceRecord MakeRecord(const std::string& id, const std::string& tree,
                           std::vector<PhonemeEntry> alignment, int total_frames,
                           int n_bins, uint64_t feature_seed);

UtteranceRecord ToyU1(int n_bins = kDefaultMelBins);
UtteranceRecord ToyU2(int n_bins = kDefaultMelBins);

// {u1, u2}, default policy unless given.
Corpus TwoSentenceCorpus(const ConstituentPolicy& policy = {});

struct SyntheticOptions {
  int n_utterances = 20;
  uint64_t seed = 1;
  int n_bins = 8;
  // Maximum phrase nesting used by the toy grammar.
  int max_depth = 4;
};

// Random English-like parses from a small PCFG, each with a plausible
// alignment (1-4 phonemes per word, short pauses, optional leading silence)
// and random features.
std::vector<UtteranceRecord> SyntheticRecords(const SyntheticOptions& options);

// Writes manifest.jsonl plus alignment and MELF files under `dir`; returns
// the manifest path.
std::filesystem::path WriteCorpusDir(const std::vector<UtteranceRecord>& records,
                                     const std::filesystem::path& dir);

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

std::string ReadFileBytes(const std::filesystem::path& path);

// Every regular file under `dir`, relative path -> contents.
std::vector<std::pair<std::string, std::string>> ReadTree(
    const std::filesystem::path& dir);

}  // namespace syntaxsplice::testing

#endif  // SYNTAXSPLICE_TESTS_SUPPORT_FIXTURES_H_
