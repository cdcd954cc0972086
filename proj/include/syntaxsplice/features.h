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

// Acoustic feature matrices and the MELF container.
//
// MELF layout, little-endian:
//   bytes  0..3   magic "MELF"
//   bytes  4..7   u32 version (1)
//   bytes  8..11  u32 n_frames
//   bytes 12..15  u32 n_bins
//   then n_frames * n_bins IEEE-754 float32 values, frame-major.

#ifndef SYNTAXSPLICE_FEATURES_H_
#define SYNTAXSPLICE_FEATURES_H_

#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "syntaxsplice/alignment.h"

namespace syntaxsplice {

inline constexpr int kDefaultMelBins = 80;
inline constexpr double kDefaultFrameShiftMs = 12.5;
inline constexpr uint32_t kMelfVersion = 1;
inline constexpr size_t kMelfHeaderBytes = 16;

class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  // Zero-filled n_frames x n_bins matrix.
  FeatureMatrix(int n_frames, int n_bins,
                double frame_shift_ms = kDefaultFrameShiftMs);
  // Takes ownership of row-major `values`; throws on size mismatch or
  // non-finite values.
  FeatureMatrix(int n_frames, int n_bins, std::vector<float> values,
                double frame_shift_ms = kDefaultFrameShiftMs);

  int n_frames() const { return n_frames_; }
  int n_bins() const { return n_bins_; }
  double frame_shift_ms() const { return frame_shift_ms_; }
  void set_frame_shift_ms(double ms) { frame_shift_ms_ = ms; }

  std::span<const float> values() const { return values_; }
  std::span<const float> row(int frame) const {
    return std::span<const float>(values_).subspan(
        static_cast<size_t>(frame) * n_bins_, n_bins_);
  }
  std::span<float> mutable_row(int frame) {
    return std::span<float>(values_).subspan(
        static_cast<size_t>(frame) * n_bins_, n_bins_);
  }

  // Bitwise equality of shape and payload (distinguishes -0.0 from 0.0).
  bool BitEqual(const FeatureMatrix& other) const;

 private:
  int n_frames_ = 0;
  int n_bins_ = 1;
  double frame_shift_ms_ = kDefaultFrameShiftMs;
  std::vector<float> values_;
};

struct MelfHeader {
  uint32_t version = kMelfVersion;
  uint32_t n_frames = 0;
  uint32_t n_bins = 0;
};

FeatureMatrix ReadFeatures(std::istream& in);
FeatureMatrix ReadFeaturesFile(const std::string& path);

// Reads and checks only the 16 byte header.
MelfHeader ReadMelfHeader(std::istream& in);

// Returns the number of bytes written: 16 + 4 * n_frames * n_bins.
size_t WriteFeatures(const FeatureMatrix& m, std::ostream& out);
size_t WriteFeaturesFile(const FeatureMatrix& m, const std::string& path);

struct FeatureSegment {
  std::reference_wrapper<const FeatureMatrix> matrix;
  FrameRange frames;
};

// Copies the selected rows of each segment, in order, into one matrix. Rows
// are copied verbatim; nothing is smoothed at the joins.
FeatureMatrix ConcatSegments(std::span<const FeatureSegment> segments);

}  // namespace syntaxsplice

#endif  // SYNTAXSPLICE_FEATURES_H_
