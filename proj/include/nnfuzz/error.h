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

#ifndef NNFUZZ_ERROR_H_
#define NNFUZZ_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace nnfuzz {

enum class ErrorCode {
  kInvalidArgument,
  kIoError,
  // Model interchange format.
  kMalformedManifest,
  kShapeChainError,
  kWeightCountMismatch,
  kNonFiniteWeight,
  // Inference.
  kShapeMismatch,
  kRangeViolation,
  kNotAClassifier,
  // Coverage.
  kProfileMismatch,
  // Campaign reports.
  kCorruptReport,
  // Seed pool / corpus.
  kEmptyPool,
  kCorruptCorpus,
  // Mutation.
  kUnknownOp,
  kMagnitudeOutOfRange,
  // Feature gate.
  kNoFeatureLayer,
  kZeroVector,
  kDimensionMismatch,
};

std::string_view ErrorCodeName(ErrorCode code);

// All engine failures are reported as Error; code() identifies the kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nnfuzz

#endif  // NNFUZZ_ERROR_H_
