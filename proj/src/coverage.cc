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

#include "nnfuzz/coverage.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "nnfuzz/error.h"

namespace nnfuzz {

std::string_view ScalingName(Scaling s) {
  return s == Scaling::kRaw ? "raw" : "layer_minmax";
}

Scaling ParseScaling(std::string_view name) {
  if (name == "raw") return Scaling::kRaw;
  if (name == "layer_minmax") return Scaling::kLayerMinMax;
  throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown scaling mode \"{}\"", name));
}

std::string_view FeedbackName(Feedback f) {
  return f == Feedback::kParentRelative ? "parent-relative" : "global";
}

Feedback ParseFeedback(std::string_view name) {
  if (name == "parent-relative" || name == "parent_relative") return Feedback::kParentRelative;
  if (name == "global" || name == "global_cumulative") return Feedback::kGlobalCumulative;
  throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown feedback mode \"{}\"", name));
}

ActivationProfile ComputeProfile(const ActivationRecord& record, double t, Scaling scaling) {
  if (!std::isfinite(t)) throw Error(ErrorCode::kInvalidArgument, "threshold must be finite");
  ActivationProfile profile{NeuronSet(record.size()), t, scaling};
  if (scaling == Scaling::kRaw) {
    for (std::size_t i = 0; i < record.size(); ++i) {
      if (record.values[i] > t) profile.bits.set(i);
    }
    return profile;
  }
  for (const auto& slice : record.slices) {
    const auto first = record.values.begin() + static_cast<std::ptrdiff_t>(slice.offset);
    const auto [lo, hi] = std::minmax_element(first, first + static_cast<std::ptrdiff_t>(slice.count));
    const double low = *lo;
    const double span = *hi - low;
    // A constant layer scales to all zeros.
    if (!(span > 0.0)) {
      if (0.0 > t) {
        for (std::size_t i = 0; i < slice.count; ++i) profile.bits.set(slice.offset + i);
      }
      continue;
    }
    for (std::size_t i = 0; i < slice.count; ++i) {
      const double scaled = (record.values[slice.offset + i] - low) / span;
      if (scaled > t) profile.bits.set(slice.offset + i);
    }
  }
  return profile;
}

CoverageTracker::CoverageTracker(std::size_t neuron_count, double t, Scaling scaling)
    : cumulative_(neuron_count), threshold_(t), scaling_(scaling) {
  if (neuron_count == 0) {
    throw Error(ErrorCode::kInvalidArgument, "coverage needs at least one neuron");
  }
  if (!std::isfinite(t)) throw Error(ErrorCode::kInvalidArgument, "threshold must be finite");
}

void CoverageTracker::CheckCompatible(const ActivationProfile& p) const {
  if (p.size() != cumulative_.size()) {
    throw Error(ErrorCode::kProfileMismatch,
                fmt::format("profile has {} neurons, tracker {}", p.size(), cumulative_.size()));
  }
  if (p.threshold != threshold_ || p.scaling != scaling_) {
    throw Error(ErrorCode::kProfileMismatch,
                fmt::format("profile (t={}, {}) does not match tracker (t={}, {})", p.threshold,
                            ScalingName(p.scaling), threshold_, ScalingName(scaling_)));
  }
}

std::size_t CoverageTracker::CountNew(const ActivationProfile& profile) const {
  CheckCompatible(profile);
  return (profile.bits - cumulative_).count();
}

std::size_t CoverageTracker::Update(const ActivationProfile& profile) {
  CheckCompatible(profile);
  const std::size_t before = cumulative_.count();
  cumulative_ |= profile.bits;
  return cumulative_.count() - before;
}

double CoverageTracker::NcRatio() const {
  return static_cast<double>(cumulative_.count()) / static_cast<double>(cumulative_.size());
}

std::vector<std::size_t> CoverageTracker::CoveredIndices() const {
  std::vector<std::size_t> out;
  out.reserve(cumulative_.count());
  for (auto i = cumulative_.find_first(); i != NeuronSet::npos; i = cumulative_.find_next(i)) {
    out.push_back(i);
  }
  return out;
}

bool IsNewCoverage(const ActivationProfile& parent, const ActivationProfile& child,
                   const CoverageTracker& tracker, Feedback mode) {
  if (parent.size() != child.size()) {
    throw Error(ErrorCode::kProfileMismatch,
                fmt::format("parent has {} neurons, child {}", parent.size(), child.size()));
  }
  const std::size_t fresh = tracker.CountNew(child);
  if (mode == Feedback::kParentRelative) return child.popcount() > parent.popcount();
  return fresh > 0;
}

std::string FormatPercent(double ratio) { return fmt::format("{:.2f}", ratio * 100.0); }

}  // namespace nnfuzz
