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

#ifndef SYNTAXSPLICE_ERROR_H_
#define SYNTAXSPLICE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace syntaxsplice {

enum class ErrorCode {
  // treebank
  kUnbalancedBrackets,
  kEmptyLabel,
  kEmptyTree,
  kTrailingGarbage,
  kMalformedTree,
  // alignment
  kMalformedRow,
  kOverlappingFrames,
  kWordIndexGap,
  kNonMonotonic,
  kRangeOutOfBounds,
  // features
  kBadMagic,
  kUnsupportedVersion,
  kTruncatedPayload,
  kNonFiniteValue,
  kBinMismatch,
  kIoFailure,
  // splice
  kSpanOutOfBounds,
  kLabelMismatch,
  kAlignmentInconsistent,
  // corpus
  kManifestParse,
  kMissingFile,
  kTokenTreeMismatch,
  kFrameCountMismatch,
  kExhaustedUniverse,
  // stats
  kMissingProvenance,
  // evalkit
  kEmptyReference,
  kZeroBaseline,
  kMissingBaselineKey,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception. what() carries
// the code name followed by a human readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Rethrows `e` with `context` (typically "file:line") prefixed to the message.
[[noreturn]] void RethrowWithContext(const Error& e, const std::string& context);

}  // namespace syntaxsplice

#endif  // SYNTAXSPLICE_ERROR_H_
