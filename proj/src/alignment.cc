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

#include "syntaxsplice/alignment.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>

#include "syntaxsplice/error.h"

namespace syntaxsplice {
namespace {

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    const size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

bool ParseInt(std::string_view text, int* value) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, *value);
  return ec == std::errc() && ptr == end;
}

}  // namespace

Alignment::Alignment(std::vector<PhonemeEntry> entries, int total_frames)
    : entries_(std::move(entries)), total_frames_(total_frames) {
  if (total_frames_ < 0) {
    throw Error(ErrorCode::kMalformedRow, "negative total_frames");
  }
  int previous_end = 0;
  int expected_word = 0;
  for (size_t i = 0; i < entries_.size(); ++i) {
    const PhonemeEntry& e = entries_[i];
    const std::string where = "phoneme " + std::to_string(i);
    if (e.phoneme.empty()) {
      throw Error(ErrorCode::kMalformedRow, where + ": empty phoneme");
    }
    if (e.frame_start < 0 || e.frame_end <= e.frame_start) {
      throw Error(ErrorCode::kMalformedRow,
                  where + ": empty or negative frame range");
    }
    if (i > 0 && e.frame_start < entries_[i - 1].frame_start) {
      throw Error(ErrorCode::kNonMonotonic, where + ": frame_start decreases");
    }
    if (i > 0 && e.frame_start < previous_end) {
      throw Error(ErrorCode::kOverlappingFrames,
                  where + ": starts at " + std::to_string(e.frame_start) +
                      " before previous end " + std::to_string(previous_end));
    }
    if (e.word_index == expected_word) {
      word_first_phoneme_.push_back(static_cast<int>(i));
      ++expected_word;
    } else if (e.word_index != expected_word - 1) {
      if (e.word_index > expected_word) {
        throw Error(ErrorCode::kWordIndexGap,
                    where + ": word " + std::to_string(e.word_index) +
                        " follows word " + std::to_string(expected_word - 1));
      }
      throw Error(ErrorCode::kNonMonotonic, where + ": word index decreases");
    }
    previous_end = e.frame_end;
  }
  if (previous_end > total_frames_) {
    throw Error(ErrorCode::kRangeOutOfBounds,
                "alignment ends at frame " + std::to_string(previous_end) +
                    " past total " + std::to_string(total_frames_));
  }
}

std::vector<std::string> Alignment::Phonemes() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const PhonemeEntry& e : entries_) out.push_back(e.phoneme);
  return out;
}

void Alignment::CheckWords(Span words) const {
  if (words.begin < 0 || words.begin >= words.end ||
      words.end > word_count()) {
    throw Error(ErrorCode::kRangeOutOfBounds,
                "word range [" + std::to_string(words.begin) + "," +
                    std::to_string(words.end) + ") outside [0," +
                    std::to_string(word_count()) + ")");
  }
}

FrameRange Alignment::WordFrameSpan(Span words) const {
  CheckWords(words);
  const int begin = entries_[word_first_phoneme_[words.begin]].frame_start;
  const int end = words.end == word_count()
                      ? total_frames_
                      : entries_[word_first_phoneme_[words.end]].frame_start;
  return {begin, end};
}

Span Alignment::WordPhonemeSpan(Span words) const {
  CheckWords(words);
  const int end = words.end == word_count() ? phoneme_count()
                                            : word_first_phoneme_[words.end];
  return {word_first_phoneme_[words.begin], end};
}

Alignment LoadAlignment(std::istream& in, std::optional<int> total_frames) {
  std::vector<PhonemeEntry> entries;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = SplitTabs(line);
    PhonemeEntry entry;
    if (fields.size() != 4 || fields[0].empty() ||
        !ParseInt(fields[1], &entry.word_index) ||
        !ParseInt(fields[2], &entry.frame_start) ||
        !ParseInt(fields[3], &entry.frame_end) || entry.word_index < 0) {
      throw Error(ErrorCode::kMalformedRow,
                  "line " + std::to_string(line_number) +
                      ": expected phoneme<TAB>word<TAB>start<TAB>end");
    }
    entry.phoneme = std::string(fields[0]);
    entries.push_back(std::move(entry));
  }
  const int total =
      total_frames.value_or(entries.empty() ? 0 : entries.back().frame_end);
  return Alignment(std::move(entries), total);
}

Alignment LoadAlignmentFile(const std::string& path,
                            std::optional<int> total_frames) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kMissingFile, "cannot open " + path);
  try {
    return LoadAlignment(in, total_frames);
  } catch (const Error& e) {
    RethrowWithContext(e, path);
  }
}

int SecondsToFrameStart(double seconds, double frame_shift_ms) {
  // The small epsilon keeps exact multiples (0.025 s / 12.5 ms) from landing
  // one frame off through binary rounding.
  return static_cast<int>(std::floor(seconds * 1000.0 / frame_shift_ms + 1e-9));
}

int SecondsToFrameEnd(double seconds, double frame_shift_ms) {
  return static_cast<int>(std::ceil(seconds * 1000.0 / frame_shift_ms - 1e-9));
}

}  // namespace syntaxsplice
