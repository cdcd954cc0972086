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

#ifndef SYNTAXSPLICE_ALIGNMENT_H_
#define SYNTAXSPLICE_ALIGNMENT_H_

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "syntaxsplice/treebank.h"

namespace syntaxsplice {

struct PhonemeEntry {
  std::string phoneme;
  int word_index = 0;
  int frame_start = 0;
  int frame_end = 0;  // exclusive

  friend bool operator==(const PhonemeEntry&, const PhonemeEntry&) = default;
};

// Half-open frame range [begin, end).
struct FrameRange {
  int begin = 0;
  int end = 0;

  int size() const { return end - begin; }
  friend bool operator==(const FrameRange&, const FrameRange&) = default;
};

// Phoneme-level forced alignment of one utterance, in feature frames.
//
// Frames between two words belong to the earlier word; frames before the
// first phoneme (leading silence) belong to no word; frames after the last
// phoneme belong to the last word.
class Alignment {
 public:
  // Throws on any invariant violation: entries must be non-empty intervals,
  // sorted and non-overlapping, with word indices non-decreasing and covering
  // 0..word_count-1 without gaps, and ending at or before `total_frames`.
  Alignment(std::vector<PhonemeEntry> entries, int total_frames);

  const std::vector<PhonemeEntry>& entries() const { return entries_; }
  int total_frames() const { return total_frames_; }
  int word_count() const { return static_cast<int>(word_first_phoneme_.size()); }
  int phoneme_count() const { return static_cast<int>(entries_.size()); }

  // First frame owned by a word (end of leading silence).
  int speech_start() const {
    return entries_.empty() ? total_frames_ : entries_.front().frame_start;
  }

  std::vector<std::string> Phonemes() const;

  // [frame_start of word w0's first phoneme, frame_start of word w1's first
  // phoneme), or total_frames when w1 == word_count.
  FrameRange WordFrameSpan(Span words) const;

  // Indices of the phonemes that belong to words in [w0, w1).
  Span WordPhonemeSpan(Span words) const;

 private:
  void CheckWords(Span words) const;

  std::vector<PhonemeEntry> entries_;
  int total_frames_ = 0;
  std::vector<int> word_first_phoneme_;
};

// Reads the tab separated format
//
//   #phoneme<TAB>word<TAB>start<TAB>end
//   HH<TAB>0<TAB>0<TAB>4
//
// Lines starting with '#' and blank lines are skipped. When `total_frames` is
// not given the end of the last phoneme is used; callers pairing the
// alignment with a feature file pass its frame count.
Alignment LoadAlignment(std::istream& in,
                        std::optional<int> total_frames = std::nullopt);

Alignment LoadAlignmentFile(const std::string& path,
                            std::optional<int> total_frames = std::nullopt);

// Converts a time in seconds to a frame index. Start times round down and end
// times round up to frame boundaries.
int SecondsToFrameStart(double seconds, double frame_shift_ms);
int SecondsToFrameEnd(double seconds, double frame_shift_ms);

}  // namespace syntaxsplice

#endif  // SYNTAXSPLICE_ALIGNMENT_H_
