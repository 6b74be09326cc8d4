// Copyright 2026 The nnfuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nnfuzz/error.h"

namespace nnfuzz {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kMalformedManifest: return "MalformedManifest";
    case ErrorCode::kShapeChainError: return "ShapeChainError";
    case ErrorCode::kWeightCountMismatch: return "WeightCountMismatch";
    case ErrorCode::kNonFiniteWeight: return "NonFiniteWeight";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kRangeViolation: return "RangeViolation";
    case ErrorCode::kNotAClassifier: return "NotAClassifier";
    case ErrorCode::kProfileMismatch: return "ProfileMismatch";
    case ErrorCode::kCorruptReport: return "CorruptReport";
    case ErrorCode::kEmptyPool: return "EmptyPool";
    case ErrorCode::kCorruptCorpus: return "CorruptCorpus";
    case ErrorCode::kUnknownOp: return "UnknownOp";
    case ErrorCode::kMagnitudeOutOfRange: return "MagnitudeOutOfRange";
    case ErrorCode::kNoFeatureLayer: return "NoFeatureLayer";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
  }
  return "Unknown";
}

}  // namespace nnfuzz
