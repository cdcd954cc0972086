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

#include "syntaxsplice/features.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "syntaxsplice/error.h"

namespace syntaxsplice {
namespace {

constexpr std::array<char, 4> kMagic = {'M', 'E', 'L', 'F'};

// Payloads are read in chunks so a corrupt header cannot force a huge
// allocation before the stream runs dry.
constexpr size_t kChunkFloats = 1 << 16;

uint32_t DecodeU32(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

void EncodeU32(uint32_t v, unsigned char* p) {
  p[0] = static_cast<unsigned char>(v);
  p[1] = static_cast<unsigned char>(v >> 8);
  p[2] = static_cast<unsigned char>(v >> 16);
  p[3] = static_cast<unsigned char>(v >> 24);
}

void CheckFinite(std::span<const float> values) {
  for (size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorCode::kNonFiniteValue,
                  "value " + std::to_string(i) + " is not finite");
    }
  }
}

}  // namespace

FeatureMatrix::FeatureMatrix(int n_frames, int n_bins, double frame_shift_ms)
    : FeatureMatrix(n_frames, n_bins,
                    std::vector<float>(static_cast<size_t>(std::max(n_frames, 0)) *
                                       std::max(n_bins, 0)),
                    frame_shift_ms) {}

FeatureMatrix::FeatureMatrix(int n_frames, int n_bins, std::vector<float> values,
                             double frame_shift_ms)
    : n_frames_(n_frames),
      n_bins_(n_bins),
      frame_shift_ms_(frame_shift_ms),
      values_(std::move(values)) {
  if (n_frames_ < 0 || n_bins_ < 1) {
    throw Error(ErrorCode::kBinMismatch, "invalid shape " +
                                             std::to_string(n_frames_) + "x" +
                                             std::to_string(n_bins_));
  }
  if (values_.size() != static_cast<size_t>(n_frames_) * n_bins_) {
    throw Error(ErrorCode::kTruncatedPayload,
                "expected " + std::to_string(n_frames_ * n_bins_) +
                    " values, got " + std::to_string(values_.size()));
  }
  CheckFinite(values_);
}

bool FeatureMatrix::BitEqual(const FeatureMatrix& other) const {
  return n_frames_ == other.n_frames_ && n_bins_ == other.n_bins_ &&
         (values_.empty() ||
          std::memcmp(values_.data(), other.values_.data(),
                      values_.size() * sizeof(float)) == 0);
}

MelfHeader ReadMelfHeader(std::istream& in) {
  std::array<unsigned char, kMelfHeaderBytes> header{};
  in.read(reinterpret_cast<char*>(header.data()), header.size());
  if (in.gcount() < 4 || std::memcmp(header.data(), kMagic.data(), 4) != 0) {
    throw Error(ErrorCode::kBadMagic, "missing MELF magic");
  }
  if (static_cast<size_t>(in.gcount()) != header.size()) {
    throw Error(ErrorCode::kTruncatedPayload, "short MELF header");
  }
  MelfHeader h;
  h.version = DecodeU32(header.data() + 4);
  h.n_frames = DecodeU32(header.data() + 8);
  h.n_bins = DecodeU32(header.data() + 12);
  if (h.version != kMelfVersion) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "MELF version " + std::to_string(h.version));
  }
  if (h.n_bins < 1 || h.n_bins > INT32_MAX || h.n_frames > INT32_MAX) {
    throw Error(ErrorCode::kBinMismatch, "invalid MELF shape " +
                                             std::to_string(h.n_frames) + "x" +
                                             std::to_string(h.n_bins));
  }
  return h;
}

FeatureMatrix ReadFeatures(std::istream& in) {
  const MelfHeader h = ReadMelfHeader(in);
  const size_t total = static_cast<size_t>(h.n_frames) * h.n_bins;
  std::vector<float> values;
  std::vector<unsigned char> buffer;
  while (values.size() < total) {
    const size_t n = std::min(kChunkFloats, total - values.size());
    buffer.resize(n * 4);
    in.read(reinterpret_cast<char*>(buffer.data()), buffer.size());
    if (static_cast<size_t>(in.gcount()) != buffer.size()) {
      throw Error(ErrorCode::kTruncatedPayload,
                  "expected " + std::to_string(total * 4) +
                      " payload bytes, stream ended early");
    }
    for (size_t i = 0; i < n; ++i) {
      values.push_back(std::bit_cast<float>(DecodeU32(&buffer[i * 4])));
    }
  }
  return FeatureMatrix(static_cast<int>(h.n_frames), static_cast<int>(h.n_bins),
                       std::move(values));
}

FeatureMatrix ReadFeaturesFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMissingFile, "cannot open " + path);
  try {
    return ReadFeatures(in);
  } catch (const Error& e) {
    RethrowWithContext(e, path);
  }
}

size_t WriteFeatures(const FeatureMatrix& m, std::ostream& out) {
  std::vector<unsigned char> bytes(kMelfHeaderBytes + m.values().size() * 4);
  std::memcpy(bytes.data(), kMagic.data(), 4);
  EncodeU32(kMelfVersion, &bytes[4]);
  EncodeU32(static_cast<uint32_t>(m.n_frames()), &bytes[8]);
  EncodeU32(static_cast<uint32_t>(m.n_bins()), &bytes[12]);
  unsigned char* p = bytes.data() + kMelfHeaderBytes;
  for (float v : m.values()) {
    EncodeU32(std::bit_cast<uint32_t>(v), p);
    p += 4;
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  if (!out) throw Error(ErrorCode::kIoFailure, "MELF write failed");
  return bytes.size();
}

size_t WriteFeaturesFile(const FeatureMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot create " + path);
  const size_t n = WriteFeatures(m, out);
  out.close();
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path);
  return n;
}

FeatureMatrix ConcatSegments(std::span<const FeatureSegment> segments) {
  if (segments.empty()) {
    throw Error(ErrorCode::kRangeOutOfBounds, "no segments to concatenate");
  }
  const FeatureMatrix& first = segments.front().matrix.get();
  size_t frames = 0;
  for (const FeatureSegment& s : segments) {
    const FeatureMatrix& m = s.matrix.get();
    if (m.n_bins() != first.n_bins() ||
        m.frame_shift_ms() != first.frame_shift_ms()) {
      throw Error(ErrorCode::kBinMismatch,
                  std::to_string(m.n_bins()) + " bins vs " +
                      std::to_string(first.n_bins()));
    }
    if (s.frames.begin < 0 || s.frames.end < s.frames.begin ||
        s.frames.end > m.n_frames()) {
      throw Error(ErrorCode::kRangeOutOfBounds,
                  "frames [" + std::to_string(s.frames.begin) + "," +
                      std::to_string(s.frames.end) + ") outside matrix of " +
                      std::to_string(m.n_frames()));
    }
    frames += s.frames.size();
  }

  std::vector<float> values;
  values.reserve(frames * first.n_bins());
  for (const FeatureSegment& s : segments) {
    const auto all = s.matrix.get().values();
    const size_t bins = first.n_bins();
    values.insert(values.end(), all.begin() + s.frames.begin * bins,
                  all.begin() + s.frames.end * bins);
  }
  return FeatureMatrix(static_cast<int>(frames), first.n_bins(),
                       std::move(values), first.frame_shift_ms());
}

}  // namespace syntaxsplice
