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

#include "syntaxsplice/error.h"

namespace syntaxsplice {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnbalancedBrackets: return "UnbalancedBrackets";
    case ErrorCode::kEmptyLabel: return "EmptyLabel";
    case ErrorCode::kEmptyTree: return "EmptyTree";
    case ErrorCode::kTrailingGarbage: return "TrailingGarbage";
    case ErrorCode::kMalformedTree: return "MalformedTree";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kOverlappingFrames: return "OverlappingFrames";
    case ErrorCode::kWordIndexGap: return "WordIndexGap";
    case ErrorCode::kNonMonotonic: return "NonMonotonic";
    case ErrorCode::kRangeOutOfBounds: return "RangeOutOfBounds";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kUnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::kTruncatedPayload: return "TruncatedPayload";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kBinMismatch: return "BinMismatch";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kSpanOutOfBounds: return "SpanOutOfBounds";
    case ErrorCode::kLabelMismatch: return "LabelMismatch";
    case ErrorCode::kAlignmentInconsistent: return "AlignmentInconsistent";
    case ErrorCode::kManifestParse: return "ManifestParse";
    case ErrorCode::kMissingFile: return "MissingFile";
    case ErrorCode::kTokenTreeMismatch: return "TokenTreeMismatch";
    case ErrorCode::kFrameCountMismatch: return "FrameCountMismatch";
    case ErrorCode::kExhaustedUniverse: return "ExhaustedUniverse";
    case ErrorCode::kMissingProvenance: return "MissingProvenance";
    case ErrorCode::kEmptyReference: return "EmptyReference";
    case ErrorCode::kZeroBaseline: return "ZeroBaseline";
    case ErrorCode::kMissingBaselineKey: return "MissingBaselineKey";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

void RethrowWithContext(const Error& e, const std::string& context) {
  // Strip the "Code: " prefix so it is not repeated.
  std::string message = e.what();
  const std::string prefix = std::string(ErrorCodeName(e.code())) + ": ";
  if (message.rfind(prefix, 0) == 0) message.erase(0, prefix.size());
  throw Error(e.code(), context + ": " + message);
}

}  // namespace syntaxsplice
