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

#include "fixtures.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <unistd.h>

#include "json.hpp"
#include "syntaxsplice/random.h"

namespace syntaxsplice::testing {
namespace fs = std::filesystem;

std::vector<PhonemeEntry> ToyAlignmentU1() {
  return {{"HIY", 0, 0, 10}, {"NEHVER", 1, 10, 25}, {"LAYD", 2, 25, 40}};
}

std::vector<PhonemeEntry> ToyAlignmentU2() {
  return {{"SH", 0, 0, 4},   {"IY", 0, 4, 8},    {"SH", 1, 8, 12},
          {"UH", 1, 12, 16}, {"K", 1, 16, 20},   {"HH", 2, 20, 24},
          {"ER", 2, 24, 28}, {"HH", 3, 28, 31},  {"EH", 3, 31, 34},
          {"D", 3, 34, 36}};
}

FeatureMatrix RandomFeatures(int n_frames, int n_bins, uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<float> values(static_cast<size_t>(n_frames) * n_bins);
  for (float& v : values) v = static_cast<float>(rng.Uniform() * 8.0 - 4.0);
  return FeatureMatrix(n_frames, n_bins, std::move(values));
}

UtteranceRecord MakeRecord(const std::string& id, const std::string& tree_text,
                           std::vector<PhonemeEntry> alignment, int total_frames,
                           int n_bins, uint64_t feature_seed) {
  ParseTree tree = ParseBracketed(tree_text);
  auto tokens = LeafTokens(tree);
  return UtteranceRecord{
      id,
      std::move(tokens),
      std::move(tree),
      Alignment(std::move(alignment), total_frames),
      std::make_shared<const FeatureMatrix>(
          RandomFeatures(total_frames, n_bins, feature_seed)),
      id + ".melf"};
}

UtteranceRecord ToyU1(int n_bins) {
  return MakeRecord("u1", kTreeU1, ToyAlignmentU1(), kToyFramesU1, n_bins, 101);
}

UtteranceRecord ToyU2(int n_bins) {
  return MakeRecord("u2", kTreeU2, ToyAlignmentU2(), kToyFramesU2, n_bins, 202);
}

Corpus TwoSentenceCorpus(const ConstituentPolicy& policy) {
  std::vector<UtteranceRecord> records;
  records.push_back(ToyU1());
  records.push_back(ToyU2());
  return Corpus(std::move(records), policy);
}

// ---------------------------------------------------------------------------
// Synthetic corpus

namespace {

const std::map<std::string, std::vector<std::string>>& Lexicon() {
  static const auto* lexicon = new std::map<std::string, std::vector<std::string>>{
      {"PRP", {"he", "she", "they", "we", "it"}},
      {"PRP$", {"her", "his", "their", "our"}},
      {"DT", {"the", "a", "every", "this"}},
      {"NN", {"dog", "house", "letter", "river", "window", "song", "garden",
              "teacher", "morning", "story"}},
      {"NNP", {"anna", "london", "peter", "maria"}},
      {"JJ", {"old", "quiet", "bright", "small", "famous"}},
      {"VBD", {"saw", "opened", "lied", "wrote", "heard", "found", "left",
               "painted"}},
      {"MD", {"could", "would", "might"}},
      {"VB", {"see", "open", "write", "find"}},
      {"IN", {"in", "near", "under", "after", "with"}},
      {"RB", {"never", "slowly", "often", "quietly"}},
  };
  return *lexicon;
}

class Grammar {
 public:
  Grammar(SplitMix64* rng, int max_depth) : rng_(rng), max_depth_(max_depth) {}

  Node Sentence() {
    const double u = rng_->Uniform();
    if (u < 0.6) return Phrase("S", {NounPhrase(1), VerbPhrase(1)});
    if (u < 0.8) {
      return Phrase("S", {NounPhrase(1), Phrase("ADVP", {Word("RB")}),
                          VerbPhrase(1)});
    }
    return Phrase("S", {PrepPhrase(1), NounPhrase(1), VerbPhrase(1)});
  }

 private:
  Node Word(const std::string& pos) {
    const auto& words = Lexicon().at(pos);
    return Node{pos, words[rng_->Below(words.size())], {}};
  }

  static Node Phrase(const std::string& label, std::vector<Node> children) {
    return Node{label, "", std::move(children)};
  }

  Node NounPhrase(int depth) {
    const bool leaf_only = depth >= max_depth_;
    const double u = rng_->Uniform();
    if (u < 0.25) return Phrase("NP", {Word("PRP")});
    if (u < 0.55) return Phrase("NP", {Word("DT"), Word("NN")});
    if (u < 0.70) return Phrase("NP", {Word("DT"), Word("JJ"), Word("NN")});
    if (u < 0.80) return Phrase("NP", {Word("NNP")});
    if (u < 0.85 || leaf_only) return Phrase("NP", {Word("PRP$"), Word("NN")});
    return Phrase("NP", {NounPhrase(depth + 1), PrepPhrase(depth + 1)});
  }

  Node PrepPhrase(int depth) {
    return Phrase("PP", {Word("IN"), NounPhrase(depth + 1)});
  }

  Node VerbPhrase(int depth) {
    const bool leaf_only = depth >= max_depth_;
    const double u = rng_->Uniform();
    if (u < 0.15 || leaf_only) return Phrase("VP", {Word("VBD")});
    if (u < 0.55) return Phrase("VP", {Word("VBD"), NounPhrase(depth + 1)});
    if (u < 0.75) {
      return Phrase("VP", {Word("VBD"), NounPhrase(depth + 1),
                           PrepPhrase(depth + 1)});
    }
    if (u < 0.85) {
      return Phrase("VP", {Word("MD"),
                           Phrase("VP", {Word("VB"), NounPhrase(depth + 1)})});
    }
    return Phrase("VP", {Word("VBD"), Phrase("ADVP", {Word("RB")})});
  }

  SplitMix64* rng_;
  int max_depth_;
};

std::vector<PhonemeEntry> SyntheticAlignment(const std::vector<std::string>& words,
                                             SplitMix64* rng, int* total_frames) {
  std::vector<PhonemeEntry> entries;
  int frame = rng->Below(2) ? static_cast<int>(rng->Below(10)) : 0;
  for (size_t w = 0; w < words.size(); ++w) {
    const std::string& word = words[w];
    const int n = std::clamp(static_cast<int>(word.size()) / 2, 1, 4);
    for (int p = 0; p < n; ++p) {
      std::string phoneme;
      for (size_t k = p * 2; k < std::min(word.size(), size_t(p) * 2 + 2); ++k) {
        phoneme.push_back(static_cast<char>(std::toupper(word[k])));
      }
      const int length = 2 + static_cast<int>(rng->Below(7));
      entries.push_back({phoneme, static_cast<int>(w), frame, frame + length});
      frame += length;
    }
    if (rng->Below(4) == 0) frame += 1 + static_cast<int>(rng->Below(3));
  }
  *total_frames = frame + static_cast<int>(rng->Below(10));
  return entries;
}

}  // namespace

std::vector<UtteranceRecord> SyntheticRecords(const SyntheticOptions& options) {
  SplitMix64 rng(options.seed);
  Grammar grammar(&rng, options.max_depth);
  std::vector<UtteranceRecord> records;
  records.reserve(options.n_utterances);
  for (int i = 0; i < options.n_utterances; ++i) {
    ParseTree tree(grammar.Sentence());
    auto tokens = LeafTokens(tree);
    int total_frames = 0;
    auto entries = SyntheticAlignment(tokens, &rng, &total_frames);
    std::ostringstream id;
    id << "syn" << std::setw(5) << std::setfill('0') << i;
    records.push_back(UtteranceRecord{
        id.str(), std::move(tokens), std::move(tree),
        Alignment(std::move(entries), total_frames),
        std::make_shared<const FeatureMatrix>(
            RandomFeatures(total_frames, options.n_bins, rng())),
        id.str() + ".melf"});
  }
  return records;
}

fs::path WriteCorpusDir(const std::vector<UtteranceRecord>& records,
                        const fs::path& dir) {
  fs::create_directories(dir);
  const fs::path manifest = dir / "manifest.jsonl";
  std::ofstream out(manifest, std::ios::binary);
  for (const UtteranceRecord& r : records) {
    std::ofstream tsv(dir / (r.id + ".tsv"));
    tsv << "#phoneme\tword\tstart\tend\n";
    for (const PhonemeEntry& e : r.alignment.entries()) {
      tsv << e.phoneme << '\t' << e.word_index << '\t' << e.frame_start << '\t'
          << e.frame_end << '\n';
    }
    WriteFeaturesFile(*r.features, (dir / (r.id + ".melf")).string());
    nlohmann::ordered_json row;
    row["id"] = r.id;
    row["tokens"] = r.tokens;
    row["tree"] = ToBracketed(r.tree);
    row["alignment"] = r.id + ".tsv";
    row["features"] = r.id + ".melf";
    row["frame_shift_ms"] = r.features->frame_shift_ms();
    out << row.dump() << '\n';
  }
  return manifest;
}

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("syntaxsplice_" + tag + "_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string ReadFileBytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::pair<std::string, std::string>> ReadTree(const fs::path& dir) {
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    files.emplace_back(fs::relative(entry.path(), dir).string(),
                       ReadFileBytes(entry.path()));
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace syntaxsplice::testing
