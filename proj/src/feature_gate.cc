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

#include "nnfuzz/feature_gate.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "nnfuzz/inference.h"

namespace nnfuzz {
namespace {

// Nearest-neighbor spatial resample plus channel adaptation (replicate a
// single channel, or average down to one).
Tensor Resample(const Tensor& img, const Shape& target) {
  if (img.rank() != 3 || target.size() != 3) {
    throw Error(ErrorCode::kShapeMismatch, fmt::format("cannot resample {} to {}",
                                                       ShapeToString(img.shape),
                                                       ShapeToString(target)));
  }
  const int h = img.shape[0], w = img.shape[1], c = img.shape[2];
  const int th = target[0], tw = target[1], tc = target[2];
  if (c != tc && c != 1 && tc != 1) {
    throw Error(ErrorCode::kShapeMismatch,
                fmt::format("cannot map {} channels onto {}", c, tc));
  }
  Tensor out(target);
  for (int y = 0; y < th; ++y) {
    const int sy = static_cast<int>(static_cast<long>(y) * h / th);
    for (int x = 0; x < tw; ++x) {
      const int sx = static_cast<int>(static_cast<long>(x) * w / tw);
      const double* src = img.data.data() + (static_cast<std::size_t>(sy) * w + sx) * c;
      double* dst = out.data.data() + (static_cast<std::size_t>(y) * tw + x) * tc;
      if (c == tc) {
        std::copy(src, src + c, dst);
      } else if (c == 1) {
        std::fill(dst, dst + tc, src[0]);
      } else {
        dst[0] = std::accumulate(src, src + c, 0.0) / c;
      }
    }
  }
  return out;
}

}  // namespace

FeatureVector ExtractFeatures(const Model& extractor, const Tensor& image,
                              ValueRange image_range) {
  const auto& layer = extractor.manifest().feature_layer;
  if (!layer) {
    throw Error(ErrorCode::kNoFeatureLayer,
                fmt::format("model {} declares no feature_layer", extractor.name()));
  }
  Tensor input = image.shape == extractor.input_shape()
                     ? image
                     : Resample(image, extractor.input_shape());
  const ValueRange target = extractor.input_range();
  if (!(image_range == target)) {
    for (double& v : input.data) v = MapRange(v, image_range, target);
  }
  ForwardOptions opts;
  opts.stop_after = static_cast<std::size_t>(*layer);
  return std::move(Forward(extractor, input, opts).output.data);
}

double CosineSimilarity(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                fmt::format("feature dimensions {} and {}", x.size(), y.size()));
  }
  double dot = 0, xx = 0, yy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    dot += x[i] * y[i];
    xx += x[i] * x[i];
    yy += y[i] * y[i];
  }
  if (xx == 0.0 || yy == 0.0) throw Error(ErrorCode::kZeroVector, "zero-norm feature vector");
  // sqrt(xx * yy) keeps cos(x, x) exactly 1; split only if the product
  // leaves the normal range.
  const double prod = xx * yy;
  const double norm = std::isnormal(prod) ? std::sqrt(prod) : std::sqrt(xx) * std::sqrt(yy);
  return std::clamp(dot / norm, -1.0, 1.0);
}

std::vector<GateDecision> GateAndRank(std::span<const double> parent,
                                      std::span<const GateCandidate> candidates,
                                      double threshold, int k) {
  if (!(threshold >= -1.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("threshold {} outside [-1, 1]", threshold));
  }
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "top-k must be >= 1");

  std::vector<GateDecision> all;
  all.reserve(candidates.size());
  for (const auto& c : candidates) {
    GateDecision d;
    d.id = c.id;
    try {
      d.similarity = CosineSimilarity(parent, c.features);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kZeroVector) throw;
      d.degenerate = true;
    }
    all.push_back(d);
  }

  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!all[i].degenerate && all[i].similarity > threshold) eligible.push_back(i);
  }
  std::sort(eligible.begin(), eligible.end(), [&](std::size_t a, std::size_t b) {
    if (all[a].similarity != all[b].similarity) return all[a].similarity > all[b].similarity;
    return all[a].id < all[b].id;
  });
  if (eligible.size() > static_cast<std::size_t>(k)) eligible.resize(k);

  std::vector<GateDecision> out;
  out.reserve(all.size());
  for (std::size_t r = 0; r < eligible.size(); ++r) {
    all[eligible[r]].kept = true;
    all[eligible[r]].rank = static_cast<int>(r + 1);
    out.push_back(all[eligible[r]]);
  }
  for (const auto& d : all) {
    if (!d.kept) out.push_back(d);
  }
  return out;
}

}  // namespace nnfuzz
