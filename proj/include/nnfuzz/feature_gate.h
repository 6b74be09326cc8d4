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

#ifndef NNFUZZ_FEATURE_GATE_H_
#define NNFUZZ_FEATURE_GATE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nnfuzz/model.h"
#include "nnfuzz/tensor.h"

namespace nnfuzz {

inline constexpr double kDefaultSimThreshold = 0.9;
inline constexpr int kDefaultTopK = 5;

using FeatureVector = std::vector<double>;

// Output of the extractor's designated feature layer. `image` is resampled
// (nearest neighbor) to the extractor's input shape when they differ and
// mapped from `image_range` onto the extractor's input range.
FeatureVector ExtractFeatures(const Model& extractor, const Tensor& image,
                              ValueRange image_range);

// X.Y / (|X| |Y|), clamped to [-1, 1]. Throws ZeroVector, DimensionMismatch.
double CosineSimilarity(std::span<const double> x, std::span<const double> y);

struct GateCandidate {
  std::uint64_t id = 0;
  FeatureVector features;
};

struct GateDecision {
  std::uint64_t id = 0;
  double similarity = 0.0;  // 0 when degenerate
  bool kept = false;
  std::optional<int> rank;  // 1-based, kept decisions only
  bool degenerate = false;  // zero feature vector on either side
};

// Keeps candidates with similarity strictly above `threshold`, best first,
// at most `k` of them; equal similarities rank by ascending id. Returns one
// decision per candidate: kept ones in rank order, then the rest in input
// order.
std::vector<GateDecision> GateAndRank(std::span<const double> parent,
                                      std::span<const GateCandidate> candidates,
                                      double threshold, int k);

}  // namespace nnfuzz

#endif  // NNFUZZ_FEATURE_GATE_H_
