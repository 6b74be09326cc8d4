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

// Neuron coverage: the fraction of neurons whose activation exceeds a
// threshold t for at least one input of a set (union over inputs).

#ifndef NNFUZZ_COVERAGE_H_
#define NNFUZZ_COVERAGE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "nnfuzz/inference.h"

namespace nnfuzz {

enum class Scaling {
  kRaw,          // compare activations to t directly
  kLayerMinMax,  // rescale each layer to [0, 1] per input, then compare
};

enum class Feedback {
  kParentRelative,    // child activates strictly more neurons than its parent
  kGlobalCumulative,  // child activates a neuron never covered before
};

inline constexpr double kDefaultActThreshold = 0.25;

std::string_view ScalingName(Scaling s);
Scaling ParseScaling(std::string_view name);
std::string_view FeedbackName(Feedback f);
Feedback ParseFeedback(std::string_view name);

using NeuronSet = boost::dynamic_bitset<>;

// Bit i is set iff the (scaled) activation of neuron i is strictly above t.
struct ActivationProfile {
  NeuronSet bits;
  double threshold = kDefaultActThreshold;
  Scaling scaling = Scaling::kRaw;

  std::size_t size() const { return bits.size(); }
  std::size_t popcount() const { return bits.count(); }
};

ActivationProfile ComputeProfile(const ActivationRecord& record, double t,
                                 Scaling scaling);

class CoverageTracker {
 public:
  CoverageTracker(std::size_t neuron_count, double t, Scaling scaling);

  // Folds `profile` into the cumulative set; returns the number of newly
  // covered neurons. Throws ProfileMismatch on length/threshold/mode mismatch.
  std::size_t Update(const ActivationProfile& profile);

  // Neurons `profile` would newly cover, without changing state.
  std::size_t CountNew(const ActivationProfile& profile) const;

  double NcRatio() const;
  std::size_t covered() const { return cumulative_.count(); }
  std::size_t neuron_count() const { return cumulative_.size(); }
  double threshold() const { return threshold_; }
  Scaling scaling() const { return scaling_; }
  const NeuronSet& cumulative() const { return cumulative_; }
  std::vector<std::size_t> CoveredIndices() const;

 private:
  void CheckCompatible(const ActivationProfile& profile) const;

  NeuronSet cumulative_;
  double threshold_;
  Scaling scaling_;
};

// Coverage feedback predicate. In global mode the caller is responsible for
// applying Update() before evaluating the next candidate.
bool IsNewCoverage(const ActivationProfile& parent, const ActivationProfile& child,
                   const CoverageTracker& tracker, Feedback mode);

// nc ratio as a percentage with two decimals, e.g. 20/52 -> "38.46".
std::string FormatPercent(double ratio);

}  // namespace nnfuzz

#endif  // NNFUZZ_COVERAGE_H_
