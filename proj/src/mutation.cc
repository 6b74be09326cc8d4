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

#include "nnfuzz/mutation.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "nnfuzz/inference.h"
#include "nnfuzz/parallel.h"

namespace nnfuzz {
namespace {

constexpr std::pair<std::string_view, ClassicalOp> kOpNames[] = {
    {"brightness", ClassicalOp::kBrightness}, {"contrast", ClassicalOp::kContrast},
    {"noise", ClassicalOp::kNoise},           {"blur", ClassicalOp::kBlur},
    {"translate", ClassicalOp::kTranslate},   {"scale", ClassicalOp::kScale},
    {"shear", ClassicalOp::kShear},           {"rotate", ClassicalOp::kRotate}};

void ClipAndRound(Tensor& t, ValueRange range) {
  for (double& v : t.data) v = std::clamp(v, range.lo, range.hi);
  RoundToFloat(t);
}

void CheckImage(const Tensor& t) {
  if (t.rank() != 3) {
    throw Error(ErrorCode::kShapeMismatch, "expected an [H, W, C] image, got " + ShapeToString(t.shape));
  }
}

void CheckMagnitude(ClassicalOp op, Magnitude mag, const Shape& shape) {
  double lo = 0, hi = 0;
  switch (op) {
    case ClassicalOp::kBrightness: lo = -1; hi = 1; break;
    case ClassicalOp::kContrast: lo = -1; hi = 3; break;
    case ClassicalOp::kNoise: lo = 0; hi = 1; break;
    case ClassicalOp::kBlur: lo = 0; hi = 5; break;
    case ClassicalOp::kTranslate: lo = -shape[1]; hi = shape[1]; break;
    case ClassicalOp::kScale: lo = -0.9; hi = 3; break;
    case ClassicalOp::kShear: lo = -1; hi = 1; break;
    case ClassicalOp::kRotate: lo = -360; hi = 360; break;
  }
  const bool second_ok = op == ClassicalOp::kTranslate
                             ? std::abs(mag.m2) <= shape[0]
                             : mag.m2 == 0.0;
  if (!std::isfinite(mag.m) || !std::isfinite(mag.m2) || mag.m < lo || mag.m > hi || !second_ok) {
    throw Error(ErrorCode::kMagnitudeOutOfRange,
                fmt::format("{} magnitude ({}, {}) outside [{}, {}]", ClassicalOpName(op), mag.m,
                            mag.m2, lo, hi));
  }
}

// Bilinear read with zero outside the image.
double Sample(const Tensor& img, double y, double x, int c) {
  const int h = img.shape[0], w = img.shape[1], ch = img.shape[2];
  const double fy = std::floor(y), fx = std::floor(x);
  const int y0 = static_cast<int>(fy), x0 = static_cast<int>(fx);
  const double ay = y - fy, ax = x - fx;
  auto at = [&](int yy, int xx) {
    if (yy < 0 || yy >= h || xx < 0 || xx >= w) return 0.0;
    return img.data[(static_cast<std::size_t>(yy) * w + xx) * ch + c];
  };
  return (1 - ay) * ((1 - ax) * at(y0, x0) + ax * at(y0, x0 + 1)) +
         ay * ((1 - ax) * at(y0 + 1, x0) + ax * at(y0 + 1, x0 + 1));
}

// Resamples through an inverse map: output (y, x) reads source src(y, x).
template <typename InverseMap>
Tensor Warp(const Tensor& img, InverseMap src) {
  Tensor out(img.shape);
  const int h = img.shape[0], w = img.shape[1], ch = img.shape[2];
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto [sy, sx] = src(static_cast<double>(y), static_cast<double>(x));
      for (int c = 0; c < ch; ++c) {
        out.data[(static_cast<std::size_t>(y) * w + x) * ch + c] = Sample(img, sy, sx, c);
      }
    }
  }
  return out;
}

Tensor GaussianBlur(const Tensor& img, double sigma) {
  const int h = img.shape[0], w = img.shape[1], ch = img.shape[2];
  const int radius = std::max(1, static_cast<int>(std::ceil(3 * sigma)));
  std::vector<double> taps(2 * radius + 1);
  for (int k = -radius; k <= radius; ++k) taps[k + radius] = std::exp(-0.5 * k * k / (sigma * sigma));
  // Separable pass along one axis; out-of-image taps are dropped and the
  // remaining weights renormalized.
  auto pass = [&](const Tensor& src, bool horizontal) {
    Tensor dst(src.shape);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        for (int c = 0; c < ch; ++c) {
          double acc = 0, norm = 0;
          for (int k = -radius; k <= radius; ++k) {
            const int yy = horizontal ? y : y + k;
            const int xx = horizontal ? x + k : x;
            if (yy < 0 || yy >= h || xx < 0 || xx >= w) continue;
            acc += taps[k + radius] * src.data[(static_cast<std::size_t>(yy) * w + xx) * ch + c];
            norm += taps[k + radius];
          }
          dst.data[(static_cast<std::size_t>(y) * w + x) * ch + c] = acc / norm;
        }
      }
    }
    return dst;
  };
  return pass(pass(img, true), false);
}

}  // namespace

void CheckGeneratorShapes(const GeneratorPair& gens, const Shape& image_shape) {
  auto mismatch = [](std::string what, const Shape& a, const Shape& b) {
    return Error(ErrorCode::kShapeMismatch,
                 fmt::format("{}: {} vs {}", what, ShapeToString(a), ShapeToString(b)));
  };
  if (gens.forward.input_shape() != image_shape) {
    throw mismatch("forward generator input vs image", gens.forward.input_shape(), image_shape);
  }
  if (gens.forward.output_shape() != gens.backward.input_shape()) {
    throw mismatch("forward generator output vs backward input", gens.forward.output_shape(),
                   gens.backward.input_shape());
  }
  if (gens.backward.output_shape() != image_shape) {
    throw mismatch("backward generator output vs image", gens.backward.output_shape(), image_shape);
  }
}

Tensor AegMutate(const GeneratorPair& gens, const Tensor& parent, ValueRange range, Rng& rng,
                 double sigma) {
  CheckGeneratorShapes(gens, parent.shape);
  const ValueRange x_range = gens.forward.input_range();
  Tensor x = parent;
  for (double& v : x.data) {
    v = std::clamp(v + sigma * rng.Normal(), range.lo, range.hi);
    v = MapRange(v, range, x_range);
  }
  Tensor y = Forward(gens.forward, x).output;
  Tensor reconstructed = Forward(gens.backward, y).output;
  for (double& v : reconstructed.data) v = MapRange(v, x_range, range);
  ClipAndRound(reconstructed, range);
  return reconstructed;
}

std::string_view ClassicalOpName(ClassicalOp op) {
  for (const auto& [name, o] : kOpNames) {
    if (o == op) return name;
  }
  return "?";
}

ClassicalOp ParseClassicalOp(std::string_view name) {
  for (const auto& [n, o] : kOpNames) {
    if (n == name) return o;
  }
  throw Error(ErrorCode::kUnknownOp, fmt::format("unknown classical op \"{}\"", name));
}

Tensor ClassicalMutate(const Tensor& parent, ClassicalOp op, Magnitude mag, ValueRange range,
                       Rng& rng) {
  CheckImage(parent);
  CheckMagnitude(op, mag, parent.shape);
  const double cy = (parent.shape[0] - 1) / 2.0;
  const double cx = (parent.shape[1] - 1) / 2.0;
  Tensor out;
  if (op != ClassicalOp::kNoise && mag.m == 0.0 && mag.m2 == 0.0) {
    out = parent;
  } else {
    switch (op) {
      case ClassicalOp::kBrightness:
        out = parent;
        for (double& v : out.data) v += mag.m;
        break;
      case ClassicalOp::kContrast: {
        out = parent;
        double mean = 0;
        for (double v : out.data) mean += v;
        mean /= static_cast<double>(out.size());
        for (double& v : out.data) v = (v - mean) * (1.0 + mag.m) + mean;
        break;
      }
      case ClassicalOp::kNoise:
        out = parent;
        for (double& v : out.data) v += mag.m * rng.Normal();
        break;
      case ClassicalOp::kBlur:
        out = GaussianBlur(parent, mag.m);
        break;
      case ClassicalOp::kTranslate:
        out = Warp(parent, [&](double y, double x) { return std::pair{y - mag.m2, x - mag.m}; });
        break;
      case ClassicalOp::kScale: {
        const double s = 1.0 + mag.m;
        out = Warp(parent, [&](double y, double x) {
          return std::pair{cy + (y - cy) / s, cx + (x - cx) / s};
        });
        break;
      }
      case ClassicalOp::kShear:
        out = Warp(parent, [&](double y, double x) { return std::pair{y, x - mag.m * (y - cy)}; });
        break;
      case ClassicalOp::kRotate: {
        const double theta = mag.m * std::numbers::pi / 180.0;
        const double c = std::cos(theta), s = std::sin(theta);
        out = Warp(parent, [&](double y, double x) {
          const double dy = y - cy, dx = x - cx;
          return std::pair{cy - s * dx + c * dy, cx + c * dx + s * dy};
        });
        break;
      }
    }
  }
  ClipAndRound(out, range);
  return out;
}

std::string_view MutatorKindName(MutatorKind kind) {
  return kind == MutatorKind::kAeg ? "aeg" : "classical";
}

MutatorKind ParseMutatorKind(std::string_view name) {
  if (name == "aeg") return MutatorKind::kAeg;
  if (name == "classical") return MutatorKind::kClassical;
  throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown mutator \"{}\"", name));
}

std::vector<ClassicalOpRange> DefaultClassicalRanges() {
  return {{ClassicalOp::kBrightness, -0.2, 0.2}, {ClassicalOp::kContrast, -0.3, 0.3},
          {ClassicalOp::kNoise, 0.0, 0.05},      {ClassicalOp::kBlur, 0.0, 0.8},
          {ClassicalOp::kTranslate, -1.5, 1.5},  {ClassicalOp::kScale, -0.1, 0.1},
          {ClassicalOp::kShear, -0.15, 0.15},    {ClassicalOp::kRotate, -12.0, 12.0}};
}

void MutatorConfig::Validate() const {
  if (per_parent < 1) throw Error(ErrorCode::kInvalidArgument, "per_parent (N1) must be >= 1");
  if (!std::isfinite(sigma) || sigma < 0) {
    throw Error(ErrorCode::kInvalidArgument, "noise sigma must be finite and >= 0");
  }
  if (kind == MutatorKind::kClassical) {
    if (classical.empty()) throw Error(ErrorCode::kInvalidArgument, "no classical ops configured");
    for (const auto& r : classical) {
      if (!(r.lo <= r.hi)) {
        throw Error(ErrorCode::kInvalidArgument,
                    fmt::format("{} range [{}, {}] is empty", ClassicalOpName(r.op), r.lo, r.hi));
      }
    }
  }
}

std::vector<Tensor> BatchGenerate(const SeedEntry& parent, const MutatorConfig& cfg,
                                  const GeneratorPair* gens, ValueRange range, Rng& rng) {
  cfg.Validate();
  if (cfg.kind == MutatorKind::kAeg) {
    if (gens == nullptr) throw Error(ErrorCode::kInvalidArgument, "aeg mutator needs generators");
    CheckGeneratorShapes(*gens, parent.image.shape);
  }
  const std::uint64_t key = rng.NextU64();
  std::vector<Tensor> out(static_cast<std::size_t>(cfg.per_parent));
  ParallelFor(out.size(), [&](std::size_t i) {
    Rng sub(DeriveSeed(key, parent.id, i));
    if (cfg.kind == MutatorKind::kAeg) {
      out[i] = AegMutate(*gens, parent.image, range, sub, cfg.sigma);
      return;
    }
    const auto& r = cfg.classical[sub.NextU64() % cfg.classical.size()];
    Magnitude mag{sub.Uniform(r.lo, r.hi), 0.0};
    if (r.op == ClassicalOp::kTranslate) mag.m2 = sub.Uniform(r.lo, r.hi);
    out[i] = ClassicalMutate(parent.image, r.op, mag, range, sub);
  });
  return out;
}

}  // namespace nnfuzz
