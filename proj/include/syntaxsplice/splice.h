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

// The augmentation operator. One augmented example is assembled from exactly
// two originals, a host and a donor, by replacing one host constituent with a
// donor constituent of the same label:
//
//   host   [He never] [lied]              VP[2,3)
//   donor  [She] [shook her head]         VP[1,4)
//   result [He never] [shook her head]
//
// Tokens, phonemes and feature frames are spliced in the same way, following
// the alignments. The first phoneme after each audio joint is tagged 1.

#ifndef SYNTAXSPLICE_SPLICE_H_
#define SYNTAXSPLICE_SPLICE_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "syntaxsplice/alignment.h"
#include "syntaxsplice/features.h"
#include "syntaxsplice/treebank.h"

namespace syntaxsplice {

// One corpus utterance: text, parse, alignment and features.
struct UtteranceRecord {
  std::string id;
  std::vector<std::string> tokens;
  ParseTree tree;
  Alignment alignment;
  std::shared_ptr<const FeatureMatrix> features;
  std::string features_ref;  // path as written in the manifest

  int duration_frames() const { return features ? features->n_frames() : 0; }
};

struct Provenance {
  std::string host_id;
  std::string donor_id;
  Span host_span;
  Span donor_span;
  std::string label;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct AugmentedExample {
  std::vector<std::string> tokens;
  std::vector<std::string> phonemes;
  std::vector<uint8_t> joint_tags;  // one per phoneme
  FeatureMatrix features;
  Provenance provenance;
  // Frame counts of the three spliced pieces.
  int prefix_frames = 0;
  int insert_frames = 0;
  int suffix_frames = 0;
};

using ConstituentPair = std::pair<Constituent, Constituent>;

// All (host constituent, donor constituent) pairs with equal labels, host
// constituents in document order, then donor constituents in document order.
std::vector<ConstituentPair> FindMatches(const ParseTree& host,
                                         const ParseTree& donor,
                                         const ConstituentPolicy& policy);

// host[0, a) ++ donor[a_d, b_d) ++ host[b, end).
std::vector<std::string> SubstituteText(std::span<const std::string> host_tokens,
                                        Span host_span,
                                        std::span<const std::string> donor_tokens,
                                        Span donor_span);

// Builds the augmented example for one substitution. Throws kLabelMismatch,
// kBinMismatch, kAlignmentInconsistent or kSpanOutOfBounds.
AugmentedExample BuildAugmented(const UtteranceRecord& host,
                                const Constituent& host_constituent,
                                const UtteranceRecord& donor,
                                const Constituent& donor_constituent);

// Throws kAlignmentInconsistent if `example` breaks a structural invariant
// (tag/phoneme lengths, joint count, frame conservation).
void ValidateAugmented(const AugmentedExample& example);

}  // namespace syntaxsplice

#endif  // SYNTAXSPLICE_SPLICE_H_
