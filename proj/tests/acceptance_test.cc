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

// End-to-end acceptance checks. Prints one PASS/FAIL line per check and exits
// non-zero if any fails or runs over its time budget.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fixtures.h"
#include "oracles.h"
#include "syntaxsplice/cli.h"
#include "syntaxsplice/corpus.h"
#include "syntaxsplice/error.h"
#include "syntaxsplice/evalkit.h"
#include "syntaxsplice/random.h"
#include "syntaxsplice/stats.h"

namespace syntaxsplice {
namespace {

namespace fs = std::filesystem;
using Strings = std::vector<std::string>;

// A check returns an empty string on success, else the reason it failed.
// `detail` collects a short summary printed either way.
struct Check {
  std::string name;
  double budget_seconds;
  std::function<std::string(std::string* detail)> run;
};

std::string Expect(bool ok, const std::string& why) { return ok ? "" : why; }

uint64_t Fnv1a(const std::string& bytes, uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string Hex(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Constituent Find(const ParseTree& tree, const std::string& label, Span span) {
  for (const auto& c : EnumerateConstituents(tree, {})) {
    if (c.label == label && c.span == span) return c;
  }
  throw std::runtime_error("no constituent " + label);
}

std::vector<std::string> TreeTexts(const Corpus& corpus) {
  std::vector<std::string> out;
  for (const auto& r : corpus.records()) out.push_back(ToBracketed(r.tree));
  return out;
}

// ---------------------------------------------------------------------------

std::string TwoSentenceGolden(std::string* detail) {
  const UtteranceRecord u1 = testing::ToyU1();
  const UtteranceRecord u2 = testing::ToyU2();
  const AugmentedExample ex = BuildAugmented(u1, Find(u1.tree, "VP", {2, 3}), u2,
                                             Find(u2.tree, "VP", {1, 4}));
  const Strings expected{"He", "never", "shook", "her", "head"};
  *detail = "tokens [" + TokenKey(ex.tokens) + "]";
  if (ex.tokens != expected) return "wrong tokens";
  // The tree-level substitution must agree with the token splice.
  const ParseTree swapped =
      SubstituteSubtree(u1.tree, Find(u1.tree, "VP", {2, 3}).node_path, u2.tree,
                        Find(u2.tree, "VP", {1, 4}).node_path);
  return Expect(LeafTokens(swapped) == expected, "tree substitution disagrees");
}

std::string EnumerationOracle(std::string* detail) {
  const Corpus two = testing::TwoSentenceCorpus();
  SampleSpec spec;
  spec.mode = SampleMode::kExhaustive;
  const auto examples = SampleAugmented(two, spec);
  const auto naive = testing::oracle::LabelCrossProduct(TreeTexts(two), false);
  if (examples.size() != 10 || naive.size() != 10) {
    return "expected 10 examples, got " + std::to_string(examples.size()) +
           " (oracle " + std::to_string(naive.size()) + ")";
  }
  // Random synthetic corpora of up to 20 utterances, both pairing policies.
  SplitMix64 rng(20);
  int corpora = 0;
  uint64_t tuples = 0;
  for (int trial = 0; trial < 40; ++trial) {
    testing::SyntheticOptions options;
    options.n_utterances = 1 + static_cast<int>(rng.Below(20));
    options.seed = rng();
    options.max_depth = 3 + static_cast<int>(rng.Below(3));
    ConstituentPolicy policy;
    policy.allow_self_pairs = trial % 2 == 1;
    const Corpus corpus(testing::SyntheticRecords(options), policy);
    const auto expected =
        testing::oracle::LabelCrossProduct(TreeTexts(corpus), policy.allow_self_pairs);
    std::vector<testing::oracle::Tuple> got;
    EnumeratePairs(corpus, [&](const PairTuple& t) {
      got.emplace_back(t.host.record, t.host.constituent, t.donor.record,
                       t.donor.constituent);
    });
    if (got != expected) {
      return "corpus " + std::to_string(trial) + ": " + std::to_string(got.size()) +
             " tuples vs oracle " + std::to_string(expected.size());
    }
    ++corpora;
    tuples += got.size();
  }
  *detail = "10 on the two-sentence corpus; " + std::to_string(corpora) +
            " random corpora, " + std::to_string(tuples) + " tuples";
  return "";
}

std::string IdentityInvariance(std::string* detail) {
  testing::SyntheticOptions options;
  options.n_utterances = 100;
  options.seed = 123;
  options.n_bins = kDefaultMelBins;
  for (const auto& r : testing::SyntheticRecords(options)) {
    const Constituent whole{r.tree.root().label, {0, r.tree.token_count()}, {}};
    const AugmentedExample ex = BuildAugmented(r, whole, r, whole);
    if (!ex.features.BitEqual(*r.features)) return r.id + ": features differ";
    if (std::accumulate(ex.joint_tags.begin(), ex.joint_tags.end(), 0) != 0) {
      return r.id + ": non-zero joint tag";
    }
    if (ex.tokens != r.tokens || ex.phonemes != r.alignment.Phonemes()) {
      return r.id + ": text differs";
    }
  }
  *detail = "100 records";
  return "";
}

std::string Conservation(std::string* detail) {
  testing::SyntheticOptions options;
  options.n_utterances = 150;
  options.seed = 321;
  options.max_depth = 5;
  const Corpus corpus(testing::SyntheticRecords(options), {});
  SampleSpec spec;
  spec.target_count = 1000;
  spec.seed = 2;
  const auto examples = SampleAugmented(corpus, spec);
  if (examples.size() != 1000) return "sampled " + std::to_string(examples.size());
  int two_joints = 0;
  for (size_t i = 0; i < examples.size(); ++i) {
    const AugmentedExample& ex = examples[i];
    const Provenance& p = ex.provenance;
    const UtteranceRecord* host = nullptr;
    const UtteranceRecord* donor = nullptr;
    for (const auto& r : corpus.records()) {
      if (r.id == p.host_id) host = &r;
      if (r.id == p.donor_id) donor = &r;
    }
    const auto [prefix, insert, suffix] = testing::oracle::SplicePieces(
        host->alignment.entries(), host->alignment.total_frames(), p.host_span.begin,
        p.host_span.end, donor->alignment.entries(), donor->alignment.total_frames(),
        p.donor_span.begin, p.donor_span.end);
    const std::string at = "example " + std::to_string(i) + ": ";
    if (ex.features.n_frames() != prefix + insert + suffix) {
      return at + std::to_string(ex.features.n_frames()) + " frames, expected " +
             std::to_string(prefix + insert + suffix);
    }
    if (ex.joint_tags.size() != ex.phonemes.size()) return at + "tag count";
    const int tags = std::accumulate(ex.joint_tags.begin(), ex.joint_tags.end(), 0);
    if (tags > 2) return at + std::to_string(tags) + " joints";
    two_joints += tags == 2;
  }
  *detail = "1000 examples, " + std::to_string(two_joints) + " with two joints";
  return "";
}

std::string Determinism(std::string* detail) {
  testing::TempDir dir("accept_determinism");
  testing::SyntheticOptions options;
  options.n_utterances = 60;
  options.seed = 9;
  options.n_bins = kDefaultMelBins;
  const auto manifest =
      testing::WriteCorpusDir(testing::SyntheticRecords(options), dir.path() / "in");
  std::vector<std::vector<std::pair<std::string, std::string>>> trees;
  for (const char* run : {"run1", "run2"}) {
    std::ostringstream out, err;
    const int code = cli::Run({"syntaxsplice", "augment", "--manifest",
                               manifest.string(), "--out",
                               (dir.path() / run).string(), "--mode", "random",
                               "--count", "1000", "--seed", "7"},
                              out, err);
    if (code != 0) return std::string(run) + " exited " + std::to_string(code) +
                          ": " + err.str();
    trees.push_back(testing::ReadTree(dir.path() / run));
  }
  uint64_t h1 = 1469598103934665603ull, h2 = h1;
  for (const auto& [path, bytes] : trees[0]) h1 = Fnv1a(path + bytes, h1);
  for (const auto& [path, bytes] : trees[1]) h2 = Fnv1a(path + bytes, h2);
  *detail = std::to_string(trees[0].size()) + " files, digest " + Hex(h1) +
            " / " + Hex(h2);
  if (trees[0].size() != 1 + 60 + 1000) return "unexpected file count";
  return Expect(trees[0] == trees[1] && h1 == h2, "outputs differ");
}

std::string MelfRoundTrip(std::string* detail) {
  SplitMix64 rng(77);
  int empty = 0;
  for (int i = 0; i < 100; ++i) {
    const int frames = i < 2 ? 0 : static_cast<int>(rng.Below(400));
    const int bins = i % 3 == 0 ? kDefaultMelBins : 1 + static_cast<int>(rng.Below(128));
    const FeatureMatrix m = testing::RandomFeatures(frames, bins, rng());
    std::stringstream buf;
    const size_t written = WriteFeatures(m, buf);
    if (written != 16 + 4ull * frames * bins) return "byte count";
    if (!ReadFeatures(buf).BitEqual(m)) return "matrix " + std::to_string(i);
    empty += frames == 0;
  }
  *detail = "100 matrices, " + std::to_string(empty) + " with zero frames";
  return "";
}

std::string ShortInsertions(std::string* detail) {
  testing::TempDir dir("accept_lengths");
  testing::SyntheticOptions options;
  options.n_utterances = 200;
  options.seed = 2718;
  options.max_depth = 6;
  const Corpus corpus(testing::SyntheticRecords(options), {});
  SampleSpec spec;
  spec.target_count = 5000;
  spec.seed = 1;
  ExportDataset(corpus, SampleAugmented(corpus, spec), dir.path());
  std::ifstream in(dir.path() / "manifest.jsonl");
  const LengthHistograms h = ConstituentLengthHistograms(in);
  const double mass = h.inserted.MassBetween(1, 3);
  std::ostringstream s;
  s.precision(3);
  s << "mass on 1-3 words " << mass << " over " << h.inserted.total
    << " insertions; histogram " << RenderReport(h.inserted, ReportFormat::kJson);
  *detail = s.str();
  return Expect(mass >= 0.60, "below 0.60");
}

std::string EvalOracle(std::string* detail) {
  std::vector<Strings> seqs{{}};
  for (size_t begin = 0, len = 0; len < 6; ++len) {
    const size_t end = seqs.size();
    for (size_t i = begin; i < end; ++i) {
      for (const char* s : {"a", "b", "c"}) {
        Strings next = seqs[i];
        next.push_back(s);
        seqs.push_back(std::move(next));
      }
    }
    begin = end;
  }
  uint64_t pairs = 0;
  for (const auto& a : seqs) {
    for (const auto& b : seqs) {
      const int expected = testing::oracle::RecursiveEditDistance(a, b);
      if (EditDistance(a, b) != expected) return "distance mismatch";
      if (!a.empty() && EditRate(a, b).errors() != expected) {
        return "edit rate mismatch";
      }
      ++pairs;
    }
  }
  const auto rel = RelativeRates({{"baseline", 0.137}, {"augmented", 0.121}},
                                 "baseline");
  std::ostringstream s;
  s.precision(3);
  s << pairs << " pairs; baseline " << std::fixed << rel.at("baseline");
  *detail = s.str();
  return Expect(rel.at("baseline") == 1.0, "baseline is not 1.00");
}

std::string Throughput(std::string* detail) {
  testing::SyntheticOptions options;
  options.n_utterances = 1000;
  options.seed = 4;
  options.n_bins = kDefaultMelBins;
  const Corpus corpus(testing::SyntheticRecords(options), {});
  SampleSpec spec;
  spec.target_count = 20000;
  spec.seed = 3;
  spec.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  int64_t frames = 0;
  const auto start = std::chrono::steady_clock::now();
  const SampleStats stats = SampleAugmented(
      corpus, spec, [&](AugmentedExample&& ex) { frames += ex.features.n_frames(); });
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double per_minute = stats.accepted / seconds * 60.0;
  std::ostringstream s;
  s << stats.accepted << " examples (" << frames << " frames, " << spec.workers
    << " workers) in " << seconds << " s = " << static_cast<int64_t>(per_minute)
    << " per minute";
  *detail = s.str();
  return Expect(per_minute >= 10000.0, "below 10000 per minute");
}

}  // namespace
}  // namespace syntaxsplice

int main() {
  using namespace syntaxsplice;
  const std::vector<Check> checks = {
      {"two_sentence_golden", 1, TwoSentenceGolden},
      {"enumeration_oracle", 10, EnumerationOracle},
      {"identity_invariance", 10, IdentityInvariance},
      {"frame_phoneme_conservation", 30, Conservation},
      {"random_mode_determinism", 60, Determinism},
      {"melf_round_trip", 60, MelfRoundTrip},
      {"short_insertions_dominate", 60, ShortInsertions},
      {"eval_kit_oracle", 60, EvalOracle},
      {"throughput", 60, Throughput},
  };
  int failures = 0;
  for (const Check& check : checks) {
    std::string detail, why;
    const auto start = std::chrono::steady_clock::now();
    try {
      why = check.run(&detail);
    } catch (const std::exception& e) {
      why = std::string("threw ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (why.empty() && seconds > check.budget_seconds) {
      why = "over the " + std::to_string(static_cast<int>(check.budget_seconds)) +
            " s budget";
    }
    const bool ok = why.empty();
    failures += !ok;
    std::printf("%s  %-28s %8.3f s  %s%s\n", ok ? "PASS" : "FAIL",
                check.name.c_str(), seconds, detail.c_str(),
                ok ? "" : ("  [" + why + "]").c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu checks passed\n", static_cast<int>(checks.size()) - failures,
              checks.size());
  return failures == 0 ? 0 : 1;
}
