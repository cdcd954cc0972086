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

#include "syntaxsplice/cli.h"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <set>

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "syntaxsplice/corpus.h"
#include "syntaxsplice/error.h"
#include "syntaxsplice/evalkit.h"
#include "syntaxsplice/stats.h"

namespace syntaxsplice::cli {
namespace {

// Flags shared by validate and augment. Mirrors ConstituentPolicy and
// SampleSpec one to one.
struct RunConfig {
  std::string manifest;
  std::string out_dir;
  std::string mode = "random";
  std::optional<uint64_t> count;
  uint64_t seed = 0;
  int min_words = 1;
  std::optional<int> max_words;
  bool include_preterminals = true;
  std::vector<std::string> labels;
  bool normalize_labels = false;
  bool self_pairs = false;
  bool dedupe = false;
  int workers = 1;
  std::optional<size_t> limit;

  ConstituentPolicy Policy() const {
    ConstituentPolicy p;
    p.include_preterminals = include_preterminals;
    p.min_words = min_words;
    p.max_words = max_words;
    if (!labels.empty()) {
      p.label_allowlist = std::set<std::string>(labels.begin(), labels.end());
    }
    p.normalize_labels = normalize_labels;
    p.allow_self_pairs = self_pairs;
    return p;
  }
};

void AddCorpusFlags(CLI::App* cmd, RunConfig* c) {
  cmd->add_option("--manifest", c->manifest, "Input manifest (JSONL)")
      ->required();
  cmd->add_option("--min-words", c->min_words, "Shortest constituent, in words")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-words", c->max_words, "Longest constituent, in words")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--include-preterminals", c->include_preterminals,
                  "Substitute single POS nodes (true|false)");
  cmd->add_option("--labels", c->labels, "Only these labels, comma separated")
      ->delimiter(',');
  cmd->add_flag("--normalize-labels", c->normalize_labels,
                "Strip functional suffixes (NP-SBJ -> NP)");
  cmd->add_flag("--self-pairs", c->self_pairs,
                "Also pair constituents within one utterance");
  cmd->add_option("--limit", c->limit, "Use only the first N manifest rows");
}

std::shared_ptr<spdlog::logger> MakeLogger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto logger = std::make_shared<spdlog::logger>("syntaxsplice", sink);
  logger->set_pattern("[%l] %v");
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("SYNTAXSPLICE_LOG")) {
    level = spdlog::level::from_str(env);
  }
  logger->set_level(level);
  return logger;
}

int Validate(const RunConfig& c, std::ostream& err, spdlog::logger& log) {
  const Corpus corpus = LoadCorpusFile(c.manifest, {c.Policy(), c.limit});
  size_t constituents = 0;
  for (int r = 0; r < corpus.size(); ++r) {
    constituents += corpus.constituents(r).size();
  }
  log.debug("{} labels indexed", corpus.label_index().size());
  err << corpus.size() << " records, " << constituents << " constituents, "
      << corpus.label_index().size() << " labels, " << corpus.universe_size()
      << " substitution tuples, " << corpus.total_frames() << " frames\n";
  return kExitOk;
}

int Augment(const RunConfig& c, std::ostream& err, spdlog::logger& log) {
  SampleSpec spec;
  spec.mode = c.mode == "exhaustive" ? SampleMode::kExhaustive : SampleMode::kRandom;
  if (spec.mode == SampleMode::kRandom && !c.count) {
    err << "augment: --count is required in random mode\n";
    return kExitUsage;
  }
  spec.target_count = c.count;
  spec.seed = c.seed;
  spec.policy = c.Policy();
  spec.dedupe = c.dedupe;
  spec.workers = c.workers;

  const auto start = std::chrono::steady_clock::now();
  const Corpus corpus = LoadCorpusFile(c.manifest, {spec.policy, c.limit});
  log.info("loaded {} records, {} substitution tuples", corpus.size(),
           corpus.universe_size());

  DatasetWriter writer(c.out_dir);
  writer.WriteOriginals(corpus);
  const SampleStats stats = SampleAugmented(
      corpus, spec, [&](AugmentedExample&& ex) { writer.Add(ex); });
  const ExportReport report = writer.Finish();

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  log.info("{} draws, {} rejected, {:.2f}s", stats.draws, stats.rejected, seconds);
  err << report.n_original << " original, " << report.n_augmented
      << " augmented rows, " << report.total_frames << " frames written to "
      << c.out_dir << "\n";
  return kExitOk;
}

int Stats(const std::string& manifest, const std::string& format,
          const std::string& kind, std::ostream& out) {
  std::ifstream in(manifest);
  if (!in) throw Error(ErrorCode::kMissingFile, "cannot open " + manifest);
  const LengthHistograms h = ConstituentLengthHistograms(in);
  const ReportFormat f = format == "json" ? ReportFormat::kJson : ReportFormat::kTsv;
  if (kind == "inserted") {
    out << RenderReport(h.inserted, f);
  } else if (kind == "removed") {
    out << RenderReport(h.removed, f);
  } else {
    out << RenderReport(h, f);
  }
  if (f == ReportFormat::kJson) out << '\n';
  return kExitOk;
}

int Score(const std::string& input, const std::string& rates_path,
          const std::string& baseline, std::ostream& out, std::ostream& err) {
  if (!input.empty()) {
    std::ifstream in(input);
    if (!in) throw Error(ErrorCode::kMissingFile, "cannot open " + input);
    const ScoreSummary summary = ScoreTsv(in);
    out << ScoreSummaryJson(summary) << '\n';
    err << summary.utterances.size() << " utterances, pooled rate "
        << (summary.pooled.reference_length ? summary.pooled.rate() : 0.0)
        << "\n";
    return kExitOk;
  }
  if (rates_path.empty() || baseline.empty()) {
    err << "score: give --input, or --rates with --baseline\n";
    return kExitUsage;
  }
  std::ifstream in(rates_path);
  if (!in) throw Error(ErrorCode::kMissingFile, "cannot open " + rates_path);
  const auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorCode::kManifestParse, rates_path + ": expected a JSON object");
  }
  std::map<std::string, double> rates;
  for (const auto& [name, value] : j.items()) {
    if (!value.is_number()) {
      throw Error(ErrorCode::kManifestParse, rates_path + ": " + name +
                                                 " is not a number");
    }
    rates[name] = value.get<double>();
  }
  out << nlohmann::json(RelativeRates(rates, baseline)).dump() << '\n';
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Syntax-aware augmentation of TTS corpora", "syntaxsplice"};
  app.require_subcommand(1);

  RunConfig validate_cfg;
  CLI::App* validate = app.add_subcommand("validate", "Load and check a corpus");
  AddCorpusFlags(validate, &validate_cfg);

  RunConfig aug;
  CLI::App* augment =
      app.add_subcommand("augment", "Generate and export augmented examples");
  AddCorpusFlags(augment, &aug);
  augment->add_option("--out", aug.out_dir, "Output directory")->required();
  augment->add_option("--mode", aug.mode, "random | exhaustive")
      ->check(CLI::IsMember({"random", "exhaustive"}));
  augment->add_option("--count", aug.count, "Examples to generate");
  augment->add_option("--seed", aug.seed, "Sampling seed");
  augment->add_option("--dedupe", aug.dedupe,
                      "Drop repeated token sequences (true|false)");
  augment->add_option("--workers", aug.workers, "Worker threads")
      ->check(CLI::PositiveNumber);

  std::string stats_manifest, stats_format = "tsv", stats_kind = "both";
  CLI::App* stats =
      app.add_subcommand("stats", "Constituent length histograms of an export");
  stats->add_option("--manifest", stats_manifest, "Exported manifest")->required();
  stats->add_option("--format", stats_format, "tsv | json")
      ->check(CLI::IsMember({"tsv", "json"}));
  stats->add_option("--kind", stats_kind, "inserted | removed | both")
      ->check(CLI::IsMember({"inserted", "removed", "both"}));

  std::string score_input, score_rates, score_baseline;
  CLI::App* score = app.add_subcommand("score", "Word / phoneme error rates");
  score->add_option("--input", score_input, "id<TAB>reference<TAB>hypothesis file");
  score->add_option("--rates", score_rates, "JSON map of system -> rate");
  score->add_option("--baseline", score_baseline, "Key the rates are relative to");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  auto log = MakeLogger(err);
  try {
    if (*validate) return Validate(validate_cfg, err, *log);
    if (*augment) return Augment(aug, err, *log);
    if (*stats) return Stats(stats_manifest, stats_format, stats_kind, out);
    if (*score) return Score(score_input, score_rates, score_baseline, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace syntaxsplice::cli
