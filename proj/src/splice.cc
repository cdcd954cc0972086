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

#include "syntaxsplice/splice.h"

#include <array>

#include "syntaxsplice/error.h"

namespace syntaxsplice {
namespace {

void CheckSpan(Span span, size_t size, const char* which) {
  if (span.begin < 0 || span.begin >= span.end ||
      static_cast<size_t>(span.end) > size) {
    throw Error(ErrorCode::kSpanOutOfBounds,
                std::string(which) + " span [" + std::to_string(span.begin) +
                    "," + std::to_string(span.end) + ") outside " +
                    std::to_string(size) + " tokens");
  }
}

void CheckRecord(const UtteranceRecord& r) {
  if (r.alignment.word_count() != static_cast<int>(r.tokens.size())) {
    throw Error(ErrorCode::kAlignmentInconsistent,
                r.id + ": alignment has " +
                    std::to_string(r.alignment.word_count()) + " words, " +
                    std::to_string(r.tokens.size()) + " tokens");
  }
  if (!r.features || r.features->n_frames() != r.alignment.total_frames()) {
    throw Error(ErrorCode::kAlignmentInconsistent,
                r.id + ": feature frames disagree with alignment");
  }
}

}  // namespace

std::vector<ConstituentPair> FindMatches(const ParseTree& host,
                                         const ParseTree& donor,
                                         const ConstituentPolicy& policy) {
  const auto host_constituents = EnumerateConstituents(host, policy);
  const auto donor_constituents = EnumerateConstituents(donor, policy);
  std::vector<ConstituentPair> pairs;
  for (const Constituent& h : host_constituents) {
    for (const Constituent& d : donor_constituents) {
      if (h.label == d.label) pairs.emplace_back(h, d);
    }
  }
  return pairs;
}

std::vector<std::string> SubstituteText(std::span<const std::string> host_tokens,
                                        Span host_span,
                                        std::span<const std::string> donor_tokens,
                                        Span donor_span) {
  CheckSpan(host_span, host_tokens.size(), "host");
  CheckSpan(donor_span, donor_tokens.size(), "donor");
  std::vector<std::string> out;
  out.reserve(host_tokens.size() - host_span.size() + donor_span.size());
  out.insert(out.end(), host_tokens.begin(), host_tokens.begin() + host_span.begin);
  out.insert(out.end(), donor_tokens.begin() + donor_span.begin,
             donor_tokens.begin() + donor_span.end);
  out.insert(out.end(), host_tokens.begin() + host_span.end, host_tokens.end());
  return out;
}

AugmentedExample BuildAugmented(const UtteranceRecord& host,
                                const Constituent& host_constituent,
                                const UtteranceRecord& donor,
                                const Constituent& donor_constituent) {
  if (host_constituent.label != donor_constituent.label) {
    throw Error(ErrorCode::kLabelMismatch,
                host_constituent.label + " vs " + donor_constituent.label);
  }
  CheckRecord(host);
  CheckRecord(donor);
  if (host.features->n_bins() != donor.features->n_bins()) {
    throw Error(ErrorCode::kBinMismatch,
                host.id + " has " + std::to_string(host.features->n_bins()) +
                    " bins, " + donor.id + " has " +
                    std::to_string(donor.features->n_bins()));
  }
  const Span hs = host_constituent.span;
  const Span ds = donor_constituent.span;

  AugmentedExample ex;
  ex.tokens = SubstituteText(host.tokens, hs, donor.tokens, ds);

  const Alignment& ha = host.alignment;
  const Alignment& da = donor.alignment;
  const int host_words = ha.word_count();

  // Host prefix keeps the leading silence; the donor piece runs from its
  // first word onset to the onset of the word after the span (or the end).
  const FrameRange prefix{0, ha.WordFrameSpan({hs.begin, hs.begin + 1}).begin};
  const FrameRange insert = da.WordFrameSpan(ds);
  const FrameRange suffix =
      hs.end < host_words
          ? FrameRange{ha.WordFrameSpan({hs.end, host_words}).begin,
                       ha.total_frames()}
          : FrameRange{ha.total_frames(), ha.total_frames()};

  const std::array<FeatureSegment, 3> segments = {
      FeatureSegment{*host.features, prefix},
      FeatureSegment{*donor.features, insert},
      FeatureSegment{*host.features, suffix},
  };
  ex.features = ConcatSegments(segments);
  ex.prefix_frames = prefix.size();
  ex.insert_frames = insert.size();
  ex.suffix_frames = suffix.size();

  const Span host_before{0, ha.WordPhonemeSpan({hs.begin, hs.begin + 1}).begin};
  const Span donor_phonemes = da.WordPhonemeSpan(ds);
  const int host_after_begin = hs.end < host_words
                                   ? ha.WordPhonemeSpan({hs.end, host_words}).begin
                                   : ha.phoneme_count();

  const auto& he = ha.entries();
  const auto& de = da.entries();
  ex.phonemes.reserve(host_before.size() + donor_phonemes.size() +
                      (he.size() - host_after_begin));
  for (int i = host_before.begin; i < host_before.end; ++i) {
    ex.phonemes.push_back(he[i].phoneme);
  }
  for (int i = donor_phonemes.begin; i < donor_phonemes.end; ++i) {
    ex.phonemes.push_back(de[i].phoneme);
  }
  for (int i = host_after_begin; i < static_cast<int>(he.size()); ++i) {
    ex.phonemes.push_back(he[i].phoneme);
  }

  // A joint exists where two pieces meet and the frames on either side were
  // not already adjacent in the same recording.
  ex.joint_tags.assign(ex.phonemes.size(), 0);
  const bool same_recording = &host == &donor || host.id == donor.id;
  const bool joint_before =
      prefix.size() > 0 && !(same_recording && insert.begin == prefix.end);
  const bool joint_after =
      suffix.size() > 0 && !(same_recording && insert.end == suffix.begin);
  if (joint_before) ex.joint_tags[host_before.size()] = 1;
  if (joint_after) {
    ex.joint_tags[host_before.size() + donor_phonemes.size()] = 1;
  }

  ex.provenance = Provenance{host.id, donor.id, hs, ds, host_constituent.label};
  return ex;
}

void ValidateAugmented(const AugmentedExample& ex) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kAlignmentInconsistent,
                ex.provenance.host_id + "<-" + ex.provenance.donor_id + ": " +
                    what);
  };
  if (ex.joint_tags.size() != ex.phonemes.size()) {
    fail("joint tag count differs from phoneme count");
  }
  int joints = 0;
  for (uint8_t t : ex.joint_tags) {
    if (t > 1) fail("joint tag is not binary");
    joints += t;
  }
  if (joints > 2) fail("more than two joints");
  if (ex.features.n_frames() !=
      ex.prefix_frames + ex.insert_frames + ex.suffix_frames) {
    fail("frame count is not prefix + insert + suffix");
  }
}

}  // namespace syntaxsplice
