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

#ifndef NNFUZZ_INFERENCE_H_
#define NNFUZZ_INFERENCE_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "nnfuzz/model.h"
#include "nnfuzz/tensor.h"

namespace nnfuzz {

enum class Backend { kParallel, kReference };

// Post-activation neuron values for one input. Dense layers contribute one
// value per unit, conv layers the spatial mean of each output channel.
struct ActivationRecord {
  struct Slice {
    std::size_t layer = 0;   // index into Model::layers()
    std::size_t offset = 0;  // first entry in `values`
    std::size_t count = 0;
  };
  std::vector<double> values;
  std::vector<Slice> slices;

  std::size_t size() const { return values.size(); }
};

struct ForwardOptions {
  // Reject inputs outside the model's input_range instead of clipping them.
  bool strict = false;
  Backend backend = Backend::kParallel;
  // Stop after this layer and return its output (used for feature layers).
  std::optional<std::size_t> stop_after;
};

struct ForwardResult {
  Tensor output;
  ActivationRecord record;
  // Number of input elements clipped into range (non-strict mode only).
  std::size_t clipped = 0;
};

// Pure function of (model, input); reentrant.
ForwardResult Forward(const Model& model, const Tensor& input,
                      const ForwardOptions& options = {});

struct Classification {
  int label = 0;
  std::vector<double> probs;
};

// Index of the largest value; ties go to the lowest index.
int ArgMax(const std::vector<double>& values);

Classification Classify(const Model& model, const Tensor& input,
                        const ForwardOptions& options = {});

}  // namespace nnfuzz

#endif  // NNFUZZ_INFERENCE_H_
