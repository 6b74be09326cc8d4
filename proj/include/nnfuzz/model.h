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

// Model interchange format: a JSON manifest describing the layer stack plus
// a flat blob of little-endian binary32 weights. Per layer the blob holds the
// kernel then the bias. Conv kernels are laid out [out_ch][in_ch][kh][kw],
// dense kernels [out][in]. Activations flow in [H, W, C] row-major order, so
// a dense layer applied to a 3-D map consumes it in that order.

#ifndef NNFUZZ_MODEL_H_
#define NNFUZZ_MODEL_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nnfuzz/error.h"
#include "nnfuzz/tensor.h"

namespace nnfuzz {

inline constexpr int kFormatVersion = 1;

enum class LayerKind { kDense, kConv2d, kMaxPool2d, kUpsample2d, kFlatten, kSoftmax };
enum class Activation { kNone, kRelu, kTanh, kSigmoid };
enum class Padding { kSame, kValid };

std::string_view LayerKindName(LayerKind kind);
std::string_view ActivationName(Activation act);
std::string_view PaddingName(Padding pad);

struct LayerSpec {
  LayerKind kind = LayerKind::kDense;
  // dense
  int in = 0;
  int out = 0;
  // conv2d
  int in_ch = 0;
  int out_ch = 0;
  // conv2d and maxpool2d
  int kh = 0;
  int kw = 0;
  int stride = 1;
  Padding padding = Padding::kValid;
  // upsample2d
  int factor = 1;
  // dense and conv2d
  Activation activation = Activation::kNone;

  static LayerSpec Dense(int in, int out, Activation act = Activation::kNone);
  static LayerSpec Conv2d(int in_ch, int out_ch, int kh, int kw, int stride,
                          Padding padding, Activation act = Activation::kNone);
  static LayerSpec MaxPool2d(int kh, int kw, int stride);
  static LayerSpec Upsample2d(int factor);
  static LayerSpec Flatten();
  static LayerSpec Softmax();

  std::size_t KernelCount() const;
  std::size_t BiasCount() const;
  std::size_t ParameterCount() const { return KernelCount() + BiasCount(); }
  // Neurons contributed under the coverage convention: one per dense unit,
  // one per conv output channel, none otherwise.
  std::size_t NeuronCount() const;

  bool operator==(const LayerSpec&) const = default;
};

struct Manifest {
  int format_version = kFormatVersion;
  std::string name;
  Shape input_shape;  // [H, W, C]
  ValueRange input_range;
  std::vector<LayerSpec> layers;
  std::optional<int> feature_layer;
  std::size_t declared_weight_count = 0;

  bool operator==(const Manifest&) const = default;
};

// A single reason a manifest/weights pair is invalid.
struct Violation {
  ErrorCode code;
  std::string message;
};

// Output shape of `spec` applied to `in`, or nullopt with `why` filled in.
std::optional<Shape> InferOutputShape(const LayerSpec& spec, const Shape& in,
                                      std::string* why);

// Sum of parameter counts implied by the layer specs.
std::size_t ImpliedWeightCount(const std::vector<LayerSpec>& layers);

// Structural validation of an in-memory manifest (shape chain, softmax
// placement, feature layer, declared count). Does not look at weights.
std::vector<Violation> ValidateManifest(const Manifest& manifest);

// Parses a manifest document; schema problems are appended to `violations`.
std::optional<Manifest> ParseManifest(std::string_view text,
                                      std::vector<Violation>* violations);
std::string SerializeManifest(const Manifest& manifest);

// Immutable after construction; safe to share across threads.
class Model {
 public:
  struct Layer {
    LayerSpec spec;
    Shape in_shape;
    Shape out_shape;
    std::size_t weight_offset = 0;
  };

  // Validates everything and throws Error on the first violation.
  Model(Manifest manifest, std::vector<float> weights);

  const Manifest& manifest() const { return manifest_; }
  const std::string& name() const { return manifest_.name; }
  const Shape& input_shape() const { return manifest_.input_shape; }
  const Shape& output_shape() const { return layers_.back().out_shape; }
  ValueRange input_range() const { return manifest_.input_range; }
  const std::vector<Layer>& layers() const { return layers_; }
  std::span<const float> weights() const { return weights_; }
  std::span<const float> kernel(std::size_t layer) const;
  std::span<const float> bias(std::size_t layer) const;

  std::size_t neuron_count() const { return neuron_count_; }
  bool is_classifier() const;
  // Width of the classifier output (number of classes).
  int class_count() const;

 private:
  Manifest manifest_;
  std::vector<Layer> layers_;
  std::vector<float> weights_;
  std::size_t neuron_count_ = 0;
};

std::size_t NeuronCount(const Model& model);

// Full validation of a manifest/weights file pair, collecting as many
// violations as can be determined. Empty result means the pair loads.
std::vector<Violation> ValidateModelFiles(const std::filesystem::path& manifest_path,
                                          const std::filesystem::path& weights_path);

Model LoadModel(const std::filesystem::path& manifest_path,
                const std::filesystem::path& weights_path);
void SaveModel(const Model& model, const std::filesystem::path& manifest_path,
               const std::filesystem::path& weights_path);

// Resolves a model argument: "dir/name.json" or "dir/name" both map to
// {"dir/name.json", "dir/name.bin"}.
struct ModelPaths {
  std::filesystem::path manifest;
  std::filesystem::path weights;
};
ModelPaths ResolveModelPaths(const std::filesystem::path& arg);
Model LoadModel(const std::filesystem::path& arg);

// Little-endian binary32 blob helpers shared with tensor files.
std::vector<float> DecodeFloatsLE(std::span<const unsigned char> bytes);
void AppendFloatLE(std::string& out, float v);

}  // namespace nnfuzz

#endif  // NNFUZZ_MODEL_H_
