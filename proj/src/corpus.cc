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

#include "syntaxsplice/corpus.h"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>
#include <tuple>
#include <unordered_set>

#include "json.hpp"
#include "syntaxsplice/error.h"
#include "syntaxsplice/random.h"

namespace syntaxsplice {
namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Corpus

Corpus::Corpus(std::vector<UtteranceRecord> records, ConstituentPolicy policy)
    : Corpus(std::make_shared<const std::vector<UtteranceRecord>>([&] {
               std::sort(records.begin(), records.end(),
                         [](const UtteranceRecord& a, const UtteranceRecord& b) {
                           return a.id < b.id;
                         });
               return std::move(records);
             }()),
             std::move(policy)) {}

Corpus::Corpus(std::shared_ptr<const std::vector<UtteranceRecord>> records,
               ConstituentPolicy policy)
    : records_(std::move(records)), policy_(std::move(policy)) {
  const auto& rs = *records_;
  for (size_t i = 0; i < rs.size(); ++i) {
    if (!rs[i].features) {
      throw Error(ErrorCode::kMissingFile, rs[i].id + ": no features");
    }
    if (i > 0 && rs[i].id == rs[i - 1].id) {
      throw Error(ErrorCode::kManifestParse, "duplicate id " + rs[i].id);
    }
    if (rs[i].features->n_bins() != rs[0].features->n_bins() ||
        rs[i].features->frame_shift_ms() != rs[0].features->frame_shift_ms()) {
      throw Error(ErrorCode::kBinMismatch,
                  rs[i].id + " has " + std::to_string(rs[i].features->n_bins()) +
                      " bins, " + rs[0].id + " has " +
                      std::to_string(rs[0].features->n_bins()));
    }
  }
  BuildIndex();
}

Corpus Corpus::Reindexed(const ConstituentPolicy& policy) const {
  return Corpus(records_, policy);
}

void Corpus::BuildIndex() {
  const auto& rs = *records_;
  constituents_.clear();
  constituents_.reserve(rs.size());
  for (size_t r = 0; r < rs.size(); ++r) {
    constituents_.push_back(EnumerateConstituents(rs[r].tree, policy_));
    for (size_t c = 0; c < constituents_[r].size(); ++c) {
      label_index_[constituents_[r][c].label].push_back(
          {static_cast<int>(r), static_cast<int>(c)});
    }
  }

  // Host slots in (record, document) order. A host's donors are the label's
  // occurrences minus a contiguous excluded block: the host's own record, or
  // just the host node when self pairs are allowed.
  hosts_.clear();
  host_offsets_.assign(1, 0);
  for (size_t r = 0; r < rs.size(); ++r) {
    for (size_t c = 0; c < constituents_[r].size(); ++c) {
      const ConstituentRef ref{static_cast<int>(r), static_cast<int>(c)};
      const auto& occ = label_index_.at(constituents_[r][c].label);
      HostSlot slot{ref, &occ, 0, 0};
      if (policy_.allow_self_pairs) {
        const auto it = std::lower_bound(
            occ.begin(), occ.end(), ref, [](ConstituentRef a, ConstituentRef b) {
              return std::tie(a.record, a.constituent) <
                     std::tie(b.record, b.constituent);
            });
        slot.skip_begin = static_cast<int>(it - occ.begin());
        slot.skip_end = slot.skip_begin + 1;
      } else {
        const auto [lo, hi] = std::equal_range(
            occ.begin(), occ.end(), ref,
            [](ConstituentRef a, ConstituentRef b) { return a.record < b.record; });
        slot.skip_begin = static_cast<int>(lo - occ.begin());
        slot.skip_end = static_cast<int>(hi - occ.begin());
      }
      const uint64_t donors =
          occ.size() - static_cast<uint64_t>(slot.skip_end - slot.skip_begin);
      hosts_.push_back(slot);
      host_offsets_.push_back(host_offsets_.back() + donors);
    }
  }
}

PairTuple Corpus::TupleAt(uint64_t index) const {
  if (index >= universe_size()) {
    throw Error(ErrorCode::kRangeOutOfBounds,
                "tuple " + std::to_string(index) + " of " +
                    std::to_string(universe_size()));
  }
  const auto it =
      std::upper_bound(host_offsets_.begin(), host_offsets_.end(), index);
  const size_t h = static_cast<size_t>(it - host_offsets_.begin()) - 1;
  const HostSlot& slot = hosts_[h];
  uint64_t d = index - host_offsets_[h];
  if (d >= static_cast<uint64_t>(slot.skip_begin)) {
    d += slot.skip_end - slot.skip_begin;
  }
  return {slot.ref, (*slot.occurrences)[d]};
}

int64_t Corpus::total_frames() const {
  int64_t total = 0;
  for (const auto& r : *records_) total += r.duration_frames();
  return total;
}

// ---------------------------------------------------------------------------
// Loading

namespace {

std::string ResolvePath(const fs::path& base_dir, const std::string& path) {
  const fs::path p(path);
  return (p.is_absolute() ? p : base_dir / p).string();
}

UtteranceRecord ParseRecord(const std::string& line,
                            const fs::path& base_dir) {
  const auto j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorCode::kManifestParse, "not a JSON object");
  }
  std::string id, tree_text, alignment_path, features_path;
  std::vector<std::string> tokens;
  double frame_shift_ms = kDefaultFrameShiftMs;
  try {
    id = j.at("id").get<std::string>();
    tokens = j.at("tokens").get<std::vector<std::string>>();
    tree_text = j.at("tree").get<std::string>();
    alignment_path = j.at("alignment").get<std::string>();
    features_path = j.at("features").get<std::string>();
    if (j.contains("frame_shift_ms")) {
      frame_shift_ms = j.at("frame_shift_ms").get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kManifestParse, e.what());
  }
  if (id.empty()) throw Error(ErrorCode::kManifestParse, "empty id");
  if (!(frame_shift_ms > 0)) {
    throw Error(ErrorCode::kManifestParse, "frame_shift_ms must be positive");
  }

  ParseTree tree = ParseBracketed(tree_text);
  if (LeafTokens(tree) != tokens) {
    throw Error(ErrorCode::kTokenTreeMismatch,
                id + ": tree leaves differ from tokens");
  }

  const std::string melf = ResolvePath(base_dir, features_path);
  auto features = std::make_shared<FeatureMatrix>(ReadFeaturesFile(melf));
  features->set_frame_shift_ms(frame_shift_ms);

  const std::string tsv = ResolvePath(base_dir, alignment_path);
  std::optional<Alignment> alignment;
  try {
    alignment.emplace(LoadAlignmentFile(tsv, features->n_frames()));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kRangeOutOfBounds) {
      throw Error(ErrorCode::kFrameCountMismatch,
                  id + ": alignment runs past the " +
                      std::to_string(features->n_frames()) + " frames of " +
                      melf);
    }
    throw;
  }
  if (alignment->word_count() != static_cast<int>(tokens.size())) {
    throw Error(ErrorCode::kAlignmentInconsistent,
                id + ": alignment covers " +
                    std::to_string(alignment->word_count()) + " words, " +
                    std::to_string(tokens.size()) + " tokens");
  }
  return UtteranceRecord{std::move(id), std::move(tokens), std::move(tree),
                         std::move(*alignment), std::move(features),
                         features_path};
}

}  // namespace

Corpus LoadCorpus(std::istream& manifest, const fs::path& base_dir,
                  const LoadOptions& options) {
  std::vector<UtteranceRecord> records;
  std::string line;
  int line_number = 0;
  while (std::getline(manifest, line)) {
    ++line_number;
    if (options.limit && records.size() >= *options.limit) break;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(ParseRecord(line, base_dir));
    } catch (const Error& e) {
      RethrowWithContext(e, "manifest line " + std::to_string(line_number));
    }
  }
  return Corpus(std::move(records), options.policy);
}

Corpus LoadCorpusFile(const fs::path& manifest_path, const LoadOptions& options) {
  std::ifstream in(manifest_path);
  if (!in) {
    throw Error(ErrorCode::kMissingFile, "cannot open " + manifest_path.string());
  }
  try {
    return LoadCorpus(in, manifest_path.parent_path(), options);
  } catch (const Error& e) {
    RethrowWithContext(e, manifest_path.string());
  }
}

void EnumeratePairs(const Corpus& corpus,
                    const std::function<void(const PairTuple&)>& fn) {
  const uint64_t n = corpus.universe_size();
  for (uint64_t i = 0; i < n; ++i) fn(corpus.TupleAt(i));
}

// ---------------------------------------------------------------------------
// Sampling

std::string TokenKey(const std::vector<std::string>& tokens) {
  std::string key;
  for (const std::string& t : tokens) {
    if (!key.empty()) key.push_back(' ');
    key.append(t);
  }
  return key;
}

namespace {

constexpr uint64_t kBlockPerWorker = 256;

AugmentedExample BuildTuple(const Corpus& corpus, const PairTuple& t) {
  return BuildAugmented(corpus.record(t.host.record), corpus.constituent(t.host),
                        corpus.record(t.donor.record),
                        corpus.constituent(t.donor));
}

// Builds examples for draws [first, first + count) on `workers` threads.
// Output slot i always holds draw first + i.
template <typename IndexOf>
std::vector<AugmentedExample> BuildBlock(const Corpus& corpus, uint64_t first,
                                         uint64_t count, int workers,
                                         const IndexOf& index_of) {
  std::vector<AugmentedExample> out(count);
  auto work = [&](uint64_t begin, uint64_t end) {
    for (uint64_t i = begin; i < end; ++i) {
      out[i] = BuildTuple(corpus, corpus.TupleAt(index_of(first + i)));
    }
  };
  if (workers <= 1 || count < 2) {
    work(0, count);
    return out;
  }
  std::vector<std::jthread> threads;
  std::vector<std::exception_ptr> errors(workers);
  const uint64_t chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const uint64_t begin = std::min(count, w * chunk);
    const uint64_t end = std::min(count, begin + chunk);
    threads.emplace_back([&, w, begin, end] {
      try {
        work(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  threads.clear();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace

SampleStats SampleAugmented(const Corpus& corpus_in, const SampleSpec& spec,
                            const std::function<void(AugmentedExample&&)>& sink) {
  std::optional<Corpus> reindexed;
  const Corpus* corpus = &corpus_in;
  if (!(spec.policy == corpus_in.policy())) {
    reindexed.emplace(corpus_in.Reindexed(spec.policy));
    corpus = &*reindexed;
  }

  SampleStats stats;
  const uint64_t universe = corpus->universe_size();
  const bool random = spec.mode == SampleMode::kRandom;
  if (random && !spec.target_count) {
    throw Error(ErrorCode::kExhaustedUniverse, "random mode needs a target count");
  }
  const uint64_t target =
      spec.target_count.value_or(std::numeric_limits<uint64_t>::max());
  if (target == 0) return stats;
  if (random && universe == 0) {
    throw Error(ErrorCode::kExhaustedUniverse,
                "no substitutable constituent pairs in corpus");
  }

  std::unordered_set<std::string> seen;
  if (spec.dedupe) {
    for (const auto& r : corpus->records()) seen.insert(TokenKey(r.tokens));
  }
  const uint64_t max_rejections = universe * 10;

  auto index_of = [&](uint64_t draw) -> uint64_t {
    if (!random) return draw;
    SplitMix64 rng = StreamAt(spec.seed, draw);
    return rng.Below(universe);
  };

  const int workers = std::max(1, spec.workers);
  const uint64_t block = kBlockPerWorker * workers;
  uint64_t next_draw = 0;
  while (stats.accepted < target) {
    uint64_t count = random ? block : std::min(block, universe - next_draw);
    if (count == 0) break;
    // Don't build far past what is still needed when nothing is rejected.
    if (!spec.dedupe) count = std::min(count, target - stats.accepted);
    auto examples = BuildBlock(*corpus, next_draw, count, workers, index_of);
    next_draw += count;
    for (auto& ex : examples) {
      ++stats.draws;
      if (spec.dedupe && !seen.insert(TokenKey(ex.tokens)).second) {
        ++stats.rejected;
        if (random && stats.rejected > max_rejections) {
          throw Error(ErrorCode::kExhaustedUniverse,
                      "accepted " + std::to_string(stats.accepted) + " of " +
                          std::to_string(target) + " after " +
                          std::to_string(stats.rejected) + " rejections");
        }
        continue;
      }
      ++stats.accepted;
      sink(std::move(ex));
      if (stats.accepted == target) break;
    }
  }
  return stats;
}

std::vector<AugmentedExample> SampleAugmented(const Corpus& corpus,
                                              const SampleSpec& spec) {
  std::vector<AugmentedExample> out;
  SampleAugmented(corpus, spec,
                  [&](AugmentedExample&& ex) { out.push_back(std::move(ex)); });
  return out;
}

// ---------------------------------------------------------------------------
// Export

namespace {

std::string FeatureFileName(const char* prefix, uint64_t n) {
  std::ostringstream name;
  name << "features/" << prefix << std::setw(7) << std::setfill('0') << n
       << ".melf";
  return name.str();
}

}  // namespace

DatasetWriter::DatasetWriter(const fs::path& out_dir) : out_dir_(out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir_ / "features", ec);
  if (ec) {
    throw Error(ErrorCode::kIoFailure,
                "cannot create " + (out_dir_ / "features").string() + ": " +
                    ec.message());
  }
  manifest_.open(out_dir_ / kManifestName, std::ios::binary | std::ios::trunc);
  if (!manifest_) {
    throw Error(ErrorCode::kIoFailure,
                "cannot create " + (out_dir_ / kManifestName).string());
  }
}

void DatasetWriter::WriteRow(const std::string& row) {
  manifest_ << row << '\n';
  if (!manifest_) throw Error(ErrorCode::kIoFailure, "manifest write failed");
}

void DatasetWriter::WriteOriginals(const Corpus& corpus) {
  for (const auto& r : corpus.records()) {
    const std::string rel = FeatureFileName("orig_", report_.n_original);
    WriteFeaturesFile(*r.features, (out_dir_ / rel).string());
    ordered_json row;
    row["id"] = r.id;
    row["origin"] = "original";
    row["tokens"] = r.tokens;
    row["phonemes"] = r.alignment.Phonemes();
    row["joint_tags"] = std::vector<int>(r.alignment.phoneme_count(), 0);
    row["features"] = rel;
    row["provenance"] = nullptr;
    WriteRow(row.dump());
    ++report_.n_original;
    report_.total_frames += r.features->n_frames();
  }
}

void DatasetWriter::Add(const AugmentedExample& ex) {
  ValidateAugmented(ex);
  const std::string rel = FeatureFileName("aug_", report_.n_augmented);
  WriteFeaturesFile(ex.features, (out_dir_ / rel).string());
  const Provenance& p = ex.provenance;
  ordered_json provenance;
  provenance["host"] = p.host_id;
  provenance["donor"] = p.donor_id;
  provenance["host_span"] = {p.host_span.begin, p.host_span.end};
  provenance["donor_span"] = {p.donor_span.begin, p.donor_span.end};
  provenance["label"] = p.label;

  ordered_json row;
  std::ostringstream id;
  id << "aug_" << std::setw(7) << std::setfill('0') << report_.n_augmented;
  row["id"] = id.str();
  row["origin"] = "augmented";
  row["tokens"] = ex.tokens;
  row["phonemes"] = ex.phonemes;
  row["joint_tags"] = std::vector<int>(ex.joint_tags.begin(), ex.joint_tags.end());
  row["features"] = rel;
  row["provenance"] = std::move(provenance);
  WriteRow(row.dump());
  ++report_.n_augmented;
  report_.total_frames += ex.features.n_frames();
}

ExportReport DatasetWriter::Finish() {
  if (!finished_) {
    manifest_.close();
    if (!manifest_) throw Error(ErrorCode::kIoFailure, "manifest close failed");
    finished_ = true;
  }
  return report_;
}

ExportReport ExportDataset(const Corpus& originals,
                           const std::vector<AugmentedExample>& augmented,
                           const fs::path& out_dir) {
  DatasetWriter writer(out_dir);
  writer.WriteOriginals(originals);
  for (const auto& ex : augmented) writer.Add(ex);
  return writer.Finish();
}

}  // namespace syntaxsplice
