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

// Candidate generation. The AEG mutator reconstructs a parent through a
// loaded generator pair, x' = Q(P(x + noise)); the classical mutators are
// the pixel-value and affine transformations used as a comparison baseline.

#ifndef NNFUZZ_MUTATION_H_
#define NNFUZZ_MUTATION_H_

#include <string_view>
#include <vector>

#include "nnfuzz/model.h"
#include "nnfuzz/rng.h"
#include "nnfuzz/seed_pool.h"
#include "nnfuzz/tensor.h"

namespace nnfuzz {

inline constexpr double kDefaultNoiseSigma = 0.02;  // engine default
inline constexpr int kDefaultPerParent = 10;        // engine default

// forward: X -> Y, backward: Y -> X. X lives in forward's input range and Y
// in backward's input range; backward's output is read in forward's range.
struct GeneratorPair {
  Model forward;
  Model backward;
};

// Throws ShapeMismatch unless forward.input = image_shape,
// forward.output = backward.input and backward.output = image_shape.
void CheckGeneratorShapes(const GeneratorPair& gens, const Shape& image_shape);

// Draws exactly parent.size() normals from `rng`, even when sigma is 0.
// Result is clipped to `range` and rounded to binary32.
Tensor AegMutate(const GeneratorPair& gens, const Tensor& parent, ValueRange range,
                 Rng& rng, double sigma);

enum class ClassicalOp {
  kBrightness,  // x + m                      m in [-1, 1]
  kContrast,    // (x - mean) * (1 + m) + mean m in [-1, 3]
  kNoise,       // x + N(0, m^2)               m in [0, 1]
  kBlur,        // gaussian blur, sigma = m px m in [0, 5]
  kTranslate,   // shift by (m, m2) px         |m| <= W, |m2| <= H
  kScale,       // zoom by 1 + m about center  m in [-0.9, 3]
  kShear,       // horizontal shear factor m   m in [-1, 1]
  kRotate,      // rotate m degrees            m in [-360, 360]
};

inline constexpr ClassicalOp kAllClassicalOps[] = {
    ClassicalOp::kBrightness, ClassicalOp::kContrast, ClassicalOp::kNoise,
    ClassicalOp::kBlur,       ClassicalOp::kTranslate, ClassicalOp::kScale,
    ClassicalOp::kShear,      ClassicalOp::kRotate};

std::string_view ClassicalOpName(ClassicalOp op);
ClassicalOp ParseClassicalOp(std::string_view name);  // throws UnknownOp

// m2 is only used by translate (vertical shift).
struct Magnitude {
  double m = 0.0;
  double m2 = 0.0;
};

// Affine ops sample bilinearly with zero fill outside the image. Result is
// clipped to `range` and rounded to binary32.
Tensor ClassicalMutate(const Tensor& parent, ClassicalOp op, Magnitude magnitude,
                       ValueRange range, Rng& rng);

enum class MutatorKind { kAeg, kClassical };

std::string_view MutatorKindName(MutatorKind kind);
MutatorKind ParseMutatorKind(std::string_view name);

// Magnitudes for one classical op are drawn uniformly from [lo, hi]
// (translate draws both axes from the same interval).
struct ClassicalOpRange {
  ClassicalOp op;
  double lo = 0.0;
  double hi = 0.0;
};

// Engine-default sampling ranges, deliberately mild.
std::vector<ClassicalOpRange> DefaultClassicalRanges();

struct MutatorConfig {
  MutatorKind kind = MutatorKind::kAeg;
  double sigma = kDefaultNoiseSigma;
  std::vector<ClassicalOpRange> classical = DefaultClassicalRanges();
  int per_parent = kDefaultPerParent;

  void Validate() const;
};

// Produces cfg.per_parent candidates. One value is drawn from `rng` as the
// stream key; candidate i then uses its own substream
// DeriveSeed(key, parent.id, i), so candidates are generated in parallel and
// the result is identical to a serial run.
std::vector<Tensor> BatchGenerate(const SeedEntry& parent, const MutatorConfig& cfg,
                                  const GeneratorPair* gens, ValueRange range,
                                  Rng& rng);

}  // namespace nnfuzz

#endif  // NNFUZZ_MUTATION_H_
