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

// Portable, counter-addressable random numbers.
//
// Draw k of a stream is a pure function of (seed, k), so draws can be computed
// in any order or on any thread and still reproduce the same sequence on every
// platform. Standard library distributions are avoided because their output
// is implementation defined.

#ifndef SYNTAXSPLICE_RANDOM_H_
#define SYNTAXSPLICE_RANDOM_H_

#include <cstdint>

namespace syntaxsplice {

// SplitMix64 (Steele, Lea, Flood 2014).
class SplitMix64 {
 public:
  using result_type = uint64_t;

  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  static constexpr uint64_t Mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  uint64_t operator()() {
    state_ += kGolden;
    return Mix(state_);
  }

  static constexpr uint64_t min() { return 0; }
  static constexpr uint64_t max() { return UINT64_MAX; }

  // Uniform integer in [0, bound), bound > 0. Lemire's multiply-and-reject;
  // no modulo bias.
  uint64_t Below(uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
    uint64_t low = static_cast<uint64_t>(m);
    if (low < bound) {
      const uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>((*this)()) * bound;
        low = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  // Uniform double in [0, 1).
  double Uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  static constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

 private:
  uint64_t state_;
};

// Generator for draw `counter` of the stream identified by `seed`.
inline SplitMix64 StreamAt(uint64_t seed, uint64_t counter) {
  return SplitMix64(SplitMix64::Mix(SplitMix64::Mix(seed) ^
                                    (counter * SplitMix64::kGolden)));
}

}  // namespace syntaxsplice

#endif  // SYNTAXSPLICE_RANDOM_H_
