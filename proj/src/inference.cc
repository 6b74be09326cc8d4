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

#include "nnfuzz/inference.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "nnfuzz/kernels.h"

namespace nnfuzz {
namespace {

kernels::MapDims Dims(const Shape& s) { return {s[0], s[1], s[2]}; }

}  // namespace

ForwardResult Forward(const Model& model, const Tensor& input, const ForwardOptions& options) {
  if (input.shape != model.input_shape()) {
    throw Error(ErrorCode::kShapeMismatch,
                fmt::format("input shape {} but model {} expects {}", ShapeToString(input.shape),
                            model.name(), ShapeToString(model.input_shape())));
  }
  const ValueRange range = model.input_range();
  const bool reference = options.backend == Backend::kReference;
  ForwardResult result;
  result.record.values.reserve(model.neuron_count());

  std::vector<double> cur = input.data;
  for (double& v : cur) {
    if (std::isnan(v)) throw Error(ErrorCode::kRangeViolation, "input contains NaN");
    if (v >= range.lo && v <= range.hi) continue;
    if (options.strict) {
      throw Error(ErrorCode::kRangeViolation,
                  fmt::format("input value {} outside [{}, {}]", v, range.lo, range.hi));
    }
    v = std::clamp(v, range.lo, range.hi);
    ++result.clipped;
  }

  std::vector<double> next;
  const auto& layers = model.layers();
  const std::size_t last = options.stop_after.value_or(layers.size() - 1);
  for (std::size_t li = 0; li <= last && li < layers.size(); ++li) {
    const auto& layer = layers[li];
    const LayerSpec& spec = layer.spec;
    next.assign(ShapeSize(layer.out_shape), 0.0);
    switch (spec.kind) {
      case LayerKind::kDense:
        (reference ? kernels::reference::Dense : kernels::Dense)(
            cur, model.kernel(li), model.bias(li), spec.activation, next);
        break;
      case LayerKind::kConv2d: {
        const auto g = kernels::MakeConvGeometry(spec, Dims(layer.in_shape));
        (reference ? kernels::reference::Conv2d : kernels::Conv2d)(
            cur, g, model.kernel(li), model.bias(li), spec.activation, next);
        break;
      }
      case LayerKind::kMaxPool2d:
        (reference ? kernels::reference::MaxPool2d : kernels::MaxPool2d)(
            cur, Dims(layer.in_shape), spec.kh, spec.kw, spec.stride, Dims(layer.out_shape),
            next);
        break;
      case LayerKind::kUpsample2d:
        (reference ? kernels::reference::Upsample2d : kernels::Upsample2d)(
            cur, Dims(layer.in_shape), spec.factor, next);
        break;
      case LayerKind::kFlatten:
        next = cur;
        break;
      case LayerKind::kSoftmax:
        kernels::Softmax(cur, next);
        break;
    }

    if (spec.NeuronCount() > 0) {
      ActivationRecord::Slice slice{li, result.record.values.size(), spec.NeuronCount()};
      if (spec.kind == LayerKind::kDense) {
        result.record.values.insert(result.record.values.end(), next.begin(), next.end());
      } else {
        result.record.values.resize(slice.offset + slice.count);
        std::span<double> dst(result.record.values.data() + slice.offset, slice.count);
        (reference ? kernels::reference::ChannelMeans : kernels::ChannelMeans)(
            next, Dims(layer.out_shape), dst);
      }
      result.record.slices.push_back(slice);
    }
    cur.swap(next);
    if (li == last) {
      result.output = Tensor(layer.out_shape, cur);
    }
  }
  return result;
}

int ArgMax(const std::vector<double>& values) {
  // max_element returns the first maximum.
  return static_cast<int>(std::max_element(values.begin(), values.end()) - values.begin());
}

Classification Classify(const Model& model, const Tensor& input, const ForwardOptions& options) {
  if (!model.is_classifier()) {
    throw Error(ErrorCode::kNotAClassifier,
                fmt::format("model {} does not end in softmax", model.name()));
  }
  ForwardOptions opts = options;
  opts.stop_after.reset();
  auto fwd = Forward(model, input, opts);
  Classification c;
  c.probs = std::move(fwd.output.data);
  c.label = ArgMax(c.probs);
  return c;
}

}  // namespace nnfuzz
