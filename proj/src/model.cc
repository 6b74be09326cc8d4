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

#include "nnfuzz/model.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace nnfuzz {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

void Add(std::vector<Violation>* out, ErrorCode code, std::string msg) {
  out->push_back({code, std::move(msg)});
}

template <typename Enum, std::size_t N>
std::optional<Enum> LookupName(std::string_view name,
                               const std::pair<std::string_view, Enum> (&table)[N]) {
  for (const auto& [key, value] : table) {
    if (key == name) return value;
  }
  return std::nullopt;
}

constexpr std::pair<std::string_view, LayerKind> kKindNames[] = {
    {"dense", LayerKind::kDense},         {"conv2d", LayerKind::kConv2d},
    {"maxpool2d", LayerKind::kMaxPool2d}, {"upsample2d", LayerKind::kUpsample2d},
    {"flatten", LayerKind::kFlatten},     {"softmax", LayerKind::kSoftmax}};
constexpr std::pair<std::string_view, Activation> kActivationNames[] = {
    {"none", Activation::kNone},
    {"relu", Activation::kRelu},
    {"tanh", Activation::kTanh},
    {"sigmoid", Activation::kSigmoid}};
constexpr std::pair<std::string_view, Padding> kPaddingNames[] = {
    {"same", Padding::kSame}, {"valid", Padding::kValid}};

bool HasActivation(LayerKind kind) {
  return kind == LayerKind::kDense || kind == LayerKind::kConv2d;
}

// Schema reader for one JSON object; every problem becomes a violation.
class FieldReader {
 public:
  FieldReader(const Json& obj, std::string context, std::vector<Violation>* out)
      : obj_(obj), context_(std::move(context)), out_(out) {}

  std::optional<std::int64_t> Integer(const char* key, bool required = true) {
    auto it = obj_.find(key);
    if (it == obj_.end()) {
      if (required) Fail(fmt::format("missing field \"{}\"", key));
      return std::nullopt;
    }
    if (!it->is_number_integer()) {
      Fail(fmt::format("field \"{}\" must be an integer", key));
      return std::nullopt;
    }
    return it->get<std::int64_t>();
  }

  // Dimension parameter: integer >= 1 that fits in int.
  int Dim(const char* key, std::optional<int> fallback = std::nullopt) {
    auto v = Integer(key, !fallback.has_value());
    if (!v) return fallback.value_or(0);
    if (*v < 1 || *v > (1 << 24)) {
      Fail(fmt::format("field \"{}\" must be in [1, 2^24], got {}", key, *v));
      return 0;
    }
    return static_cast<int>(*v);
  }

  std::optional<std::string> String(const char* key, bool required = true) {
    auto it = obj_.find(key);
    if (it == obj_.end()) {
      if (required) Fail(fmt::format("missing field \"{}\"", key));
      return std::nullopt;
    }
    if (!it->is_string()) {
      Fail(fmt::format("field \"{}\" must be a string", key));
      return std::nullopt;
    }
    return it->get<std::string>();
  }

  void Fail(const std::string& msg) {
    Add(out_, ErrorCode::kMalformedManifest, context_ + ": " + msg);
  }

 private:
  const Json& obj_;
  std::string context_;
  std::vector<Violation>* out_;
};

std::optional<LayerSpec> ParseLayer(const Json& j, std::size_t index,
                                    std::vector<Violation>* out) {
  const std::string context = fmt::format("layers[{}]", index);
  if (!j.is_object()) {
    Add(out, ErrorCode::kMalformedManifest, context + ": must be an object");
    return std::nullopt;
  }
  const std::size_t before = out->size();
  FieldReader r(j, context, out);
  LayerSpec spec;
  auto kind_name = r.String("kind");
  if (!kind_name) return std::nullopt;
  auto kind = LookupName(*kind_name, kKindNames);
  if (!kind) {
    r.Fail(fmt::format("unknown layer kind \"{}\"", *kind_name));
    return std::nullopt;
  }
  spec.kind = *kind;
  switch (spec.kind) {
    case LayerKind::kDense:
      spec.in = r.Dim("in");
      spec.out = r.Dim("out");
      break;
    case LayerKind::kConv2d: {
      spec.in_ch = r.Dim("in_ch");
      spec.out_ch = r.Dim("out_ch");
      spec.kh = r.Dim("kh");
      spec.kw = r.Dim("kw");
      spec.stride = r.Dim("stride", 1);
      auto pad = r.String("padding", false);
      if (pad) {
        auto p = LookupName(*pad, kPaddingNames);
        if (!p) r.Fail(fmt::format("unknown padding \"{}\"", *pad));
        spec.padding = p.value_or(Padding::kValid);
      }
      break;
    }
    case LayerKind::kMaxPool2d:
      spec.kh = r.Dim("kh");
      spec.kw = r.Dim("kw");
      spec.stride = r.Dim("stride", spec.kh > 0 ? spec.kh : 1);
      break;
    case LayerKind::kUpsample2d:
      spec.factor = r.Dim("factor");
      break;
    case LayerKind::kFlatten:
    case LayerKind::kSoftmax:
      break;
  }
  auto act = r.String("activation", false);
  if (act) {
    auto a = LookupName(*act, kActivationNames);
    if (!a) {
      r.Fail(fmt::format("unknown activation \"{}\"", *act));
    } else if (!HasActivation(spec.kind) && *a != Activation::kNone) {
      r.Fail(fmt::format("{} layers take no activation", LayerKindName(spec.kind)));
    } else {
      spec.activation = *a;
    }
  }
  if (out->size() != before) return std::nullopt;
  return spec;
}

OrderedJson LayerToJson(const LayerSpec& s) {
  OrderedJson j;
  j["kind"] = LayerKindName(s.kind);
  switch (s.kind) {
    case LayerKind::kDense:
      j["in"] = s.in;
      j["out"] = s.out;
      break;
    case LayerKind::kConv2d:
      j["in_ch"] = s.in_ch;
      j["out_ch"] = s.out_ch;
      j["kh"] = s.kh;
      j["kw"] = s.kw;
      j["stride"] = s.stride;
      j["padding"] = PaddingName(s.padding);
      break;
    case LayerKind::kMaxPool2d:
      j["kh"] = s.kh;
      j["kw"] = s.kw;
      j["stride"] = s.stride;
      break;
    case LayerKind::kUpsample2d:
      j["factor"] = s.factor;
      break;
    case LayerKind::kFlatten:
    case LayerKind::kSoftmax:
      break;
  }
  if (HasActivation(s.kind)) j["activation"] = ActivationName(s.activation);
  return j;
}

bool DimsValid(const LayerSpec& s) {
  switch (s.kind) {
    case LayerKind::kDense:
      return s.in >= 1 && s.out >= 1;
    case LayerKind::kConv2d:
      return s.in_ch >= 1 && s.out_ch >= 1 && s.kh >= 1 && s.kw >= 1 && s.stride >= 1;
    case LayerKind::kMaxPool2d:
      return s.kh >= 1 && s.kw >= 1 && s.stride >= 1;
    case LayerKind::kUpsample2d:
      return s.factor >= 1;
    case LayerKind::kFlatten:
    case LayerKind::kSoftmax:
      return true;
  }
  return false;
}

std::vector<float> ReadFloatFile(const std::filesystem::path& path, std::size_t* bytes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  *bytes = buf.size();
  const auto* p = reinterpret_cast<const unsigned char*>(buf.data());
  return DecodeFloatsLE({p, buf.size() - buf.size() % 4});
}

std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string_view LayerKindName(LayerKind kind) {
  for (const auto& [name, k] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::string_view ActivationName(Activation act) {
  for (const auto& [name, a] : kActivationNames) {
    if (a == act) return name;
  }
  return "?";
}

std::string_view PaddingName(Padding pad) {
  return pad == Padding::kSame ? "same" : "valid";
}

LayerSpec LayerSpec::Dense(int in, int out, Activation act) {
  LayerSpec s;
  s.kind = LayerKind::kDense;
  s.in = in;
  s.out = out;
  s.activation = act;
  return s;
}

LayerSpec LayerSpec::Conv2d(int in_ch, int out_ch, int kh, int kw, int stride,
                            Padding padding, Activation act) {
  LayerSpec s;
  s.kind = LayerKind::kConv2d;
  s.in_ch = in_ch;
  s.out_ch = out_ch;
  s.kh = kh;
  s.kw = kw;
  s.stride = stride;
  s.padding = padding;
  s.activation = act;
  return s;
}

LayerSpec LayerSpec::MaxPool2d(int kh, int kw, int stride) {
  LayerSpec s;
  s.kind = LayerKind::kMaxPool2d;
  s.kh = kh;
  s.kw = kw;
  s.stride = stride;
  return s;
}

LayerSpec LayerSpec::Upsample2d(int factor) {
  LayerSpec s;
  s.kind = LayerKind::kUpsample2d;
  s.factor = factor;
  return s;
}

LayerSpec LayerSpec::Flatten() {
  LayerSpec s;
  s.kind = LayerKind::kFlatten;
  return s;
}

LayerSpec LayerSpec::Softmax() {
  LayerSpec s;
  s.kind = LayerKind::kSoftmax;
  return s;
}

std::size_t LayerSpec::KernelCount() const {
  switch (kind) {
    case LayerKind::kDense:
      return static_cast<std::size_t>(in) * out;
    case LayerKind::kConv2d:
      return static_cast<std::size_t>(out_ch) * in_ch * kh * kw;
    default:
      return 0;
  }
}

std::size_t LayerSpec::BiasCount() const {
  switch (kind) {
    case LayerKind::kDense:
      return static_cast<std::size_t>(out);
    case LayerKind::kConv2d:
      return static_cast<std::size_t>(out_ch);
    default:
      return 0;
  }
}

std::size_t LayerSpec::NeuronCount() const { return BiasCount(); }

std::optional<Shape> InferOutputShape(const LayerSpec& s, const Shape& in,
                                      std::string* why) {
  auto fail = [&](std::string msg) -> std::optional<Shape> {
    if (why) *why = std::move(msg);
    return std::nullopt;
  };
  const bool map = in.size() == 3;
  switch (s.kind) {
    case LayerKind::kDense:
      if (ShapeSize(in) != static_cast<std::size_t>(s.in)) {
        return fail(fmt::format("dense expects {} inputs, previous output {} has {}",
                                s.in, ShapeToString(in), ShapeSize(in)));
      }
      return Shape{s.out};
    case LayerKind::kConv2d: {
      if (!map) return fail("conv2d expects an [H, W, C] input, got " + ShapeToString(in));
      if (in[2] != s.in_ch) {
        return fail(fmt::format("conv2d in_ch {} but input has {} channels", s.in_ch, in[2]));
      }
      if (s.padding == Padding::kSame) {
        return Shape{(in[0] - 1) / s.stride + 1, (in[1] - 1) / s.stride + 1, s.out_ch};
      }
      if (in[0] < s.kh || in[1] < s.kw) {
        return fail(fmt::format("conv2d kernel {}x{} larger than input {}", s.kh, s.kw,
                                ShapeToString(in)));
      }
      return Shape{(in[0] - s.kh) / s.stride + 1, (in[1] - s.kw) / s.stride + 1, s.out_ch};
    }
    case LayerKind::kMaxPool2d:
      if (!map) return fail("maxpool2d expects an [H, W, C] input, got " + ShapeToString(in));
      if (in[0] < s.kh || in[1] < s.kw) {
        return fail(fmt::format("maxpool2d window {}x{} larger than input {}", s.kh, s.kw,
                                ShapeToString(in)));
      }
      return Shape{(in[0] - s.kh) / s.stride + 1, (in[1] - s.kw) / s.stride + 1, in[2]};
    case LayerKind::kUpsample2d:
      if (!map) return fail("upsample2d expects an [H, W, C] input, got " + ShapeToString(in));
      return Shape{in[0] * s.factor, in[1] * s.factor, in[2]};
    case LayerKind::kFlatten:
      return Shape{static_cast<int>(ShapeSize(in))};
    case LayerKind::kSoftmax:
      if (in.size() != 1) return fail("softmax expects a vector, got " + ShapeToString(in));
      return in;
  }
  return fail("unknown layer kind");
}

std::size_t ImpliedWeightCount(const std::vector<LayerSpec>& layers) {
  std::size_t n = 0;
  for (const auto& l : layers) n += l.ParameterCount();
  return n;
}

std::vector<Violation> ValidateManifest(const Manifest& m) {
  std::vector<Violation> out;
  auto malformed = [&](std::string msg) { Add(&out, ErrorCode::kMalformedManifest, std::move(msg)); };
  if (m.format_version != kFormatVersion) {
    malformed(fmt::format("format_version must be {}, got {}", kFormatVersion, m.format_version));
  }
  bool shape_ok = m.input_shape.size() == 3;
  for (int d : m.input_shape) shape_ok = shape_ok && d >= 1;
  if (!shape_ok) malformed("input_shape must be 3 positive integers, got " + ShapeToString(m.input_shape));
  if (!std::isfinite(m.input_range.lo) || !std::isfinite(m.input_range.hi) ||
      !(m.input_range.lo < m.input_range.hi)) {
    malformed(fmt::format("input_range must satisfy lo < hi, got [{}, {}]", m.input_range.lo,
                          m.input_range.hi));
  }
  if (m.layers.empty()) malformed("layers must not be empty");

  bool dims_ok = true;
  for (std::size_t i = 0; i < m.layers.size(); ++i) {
    const auto& l = m.layers[i];
    if (!DimsValid(l)) {
      dims_ok = false;
      malformed(fmt::format("layers[{}]: all dimension parameters must be >= 1", i));
    }
    if (!HasActivation(l.kind) && l.activation != Activation::kNone) {
      malformed(fmt::format("layers[{}]: {} layers take no activation", i, LayerKindName(l.kind)));
    }
    if (l.kind == LayerKind::kSoftmax && i + 1 != m.layers.size()) {
      malformed(fmt::format("layers[{}]: softmax is only allowed as the final layer", i));
    }
  }

  std::vector<Shape> outputs;
  if (shape_ok && dims_ok) {
    Shape cur = m.input_shape;
    for (std::size_t i = 0; i < m.layers.size(); ++i) {
      std::string why;
      auto next = InferOutputShape(m.layers[i], cur, &why);
      if (!next) {
        Add(&out, ErrorCode::kShapeChainError, fmt::format("layers[{}]: {}", i, why));
        break;
      }
      cur = *next;
      outputs.push_back(cur);
    }
  }

  if (m.feature_layer) {
    const int fl = *m.feature_layer;
    if (fl < 0 || static_cast<std::size_t>(fl) >= m.layers.size()) {
      malformed(fmt::format("feature_layer {} out of range [0, {})", fl, m.layers.size()));
    } else if (static_cast<std::size_t>(fl) < outputs.size() && outputs[fl].size() != 1) {
      malformed(fmt::format("feature_layer {} output {} is not a vector", fl,
                            ShapeToString(outputs[fl])));
    }
  }

  if (dims_ok) {
    const std::size_t implied = ImpliedWeightCount(m.layers);
    if (implied != m.declared_weight_count) {
      Add(&out, ErrorCode::kWeightCountMismatch,
          fmt::format("declared_weight_count {} but layers imply {}", m.declared_weight_count,
                      implied));
    }
  }
  return out;
}

std::optional<Manifest> ParseManifest(std::string_view text, std::vector<Violation>* out) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    Add(out, ErrorCode::kMalformedManifest,
        fmt::format("invalid JSON at byte {}: {}", e.byte, e.what()));
    return std::nullopt;
  }
  if (!j.is_object()) {
    Add(out, ErrorCode::kMalformedManifest, "manifest must be a JSON object");
    return std::nullopt;
  }
  const std::size_t before = out->size();
  FieldReader r(j, "manifest", out);
  Manifest m;
  if (auto v = r.Integer("format_version")) m.format_version = static_cast<int>(*v);
  if (auto v = r.String("name")) m.name = *v;

  auto shape = j.find("input_shape");
  if (shape == j.end() || !shape->is_array() || shape->size() != 3) {
    r.Fail("input_shape must be an array of 3 integers");
  } else {
    for (const auto& d : *shape) {
      if (!d.is_number_integer() || d.get<std::int64_t>() < 1 || d.get<std::int64_t>() > (1 << 24)) {
        r.Fail("input_shape entries must be positive integers");
        break;
      }
      m.input_shape.push_back(d.get<int>());
    }
  }

  auto range = j.find("input_range");
  if (range == j.end() || !range->is_array() || range->size() != 2 ||
      !(*range)[0].is_number() || !(*range)[1].is_number()) {
    r.Fail("input_range must be an array of 2 numbers");
  } else {
    m.input_range = {(*range)[0].get<double>(), (*range)[1].get<double>()};
  }

  auto layers = j.find("layers");
  if (layers == j.end() || !layers->is_array()) {
    r.Fail("layers must be an array");
  } else {
    for (std::size_t i = 0; i < layers->size(); ++i) {
      if (auto spec = ParseLayer((*layers)[i], i, out)) m.layers.push_back(*spec);
    }
  }

  if (auto it = j.find("feature_layer"); it != j.end() && !it->is_null()) {
    if (auto v = r.Integer("feature_layer")) m.feature_layer = static_cast<int>(*v);
  }
  if (auto v = r.Integer("declared_weight_count")) {
    if (*v < 0) {
      r.Fail("declared_weight_count must be non-negative");
    } else {
      m.declared_weight_count = static_cast<std::size_t>(*v);
    }
  }
  if (out->size() != before) return std::nullopt;
  return m;
}

std::string SerializeManifest(const Manifest& m) {
  OrderedJson j;
  j["format_version"] = m.format_version;
  j["name"] = m.name;
  j["input_shape"] = m.input_shape;
  j["input_range"] = {m.input_range.lo, m.input_range.hi};
  OrderedJson layers = OrderedJson::array();
  for (const auto& l : m.layers) layers.push_back(LayerToJson(l));
  j["layers"] = std::move(layers);
  if (m.feature_layer) j["feature_layer"] = *m.feature_layer;
  j["declared_weight_count"] = m.declared_weight_count;
  return j.dump(2) + "\n";
}

Model::Model(Manifest manifest, std::vector<float> weights)
    : manifest_(std::move(manifest)), weights_(std::move(weights)) {
  auto violations = ValidateManifest(manifest_);
  if (!violations.empty()) throw Error(violations[0].code, violations[0].message);
  if (weights_.size() != manifest_.declared_weight_count) {
    throw Error(ErrorCode::kWeightCountMismatch,
                fmt::format("{} weights but declared_weight_count is {}", weights_.size(),
                            manifest_.declared_weight_count));
  }
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i])) {
      throw Error(ErrorCode::kNonFiniteWeight, fmt::format("weight {} is not finite", i));
    }
  }
  Shape cur = manifest_.input_shape;
  std::size_t offset = 0;
  for (const auto& spec : manifest_.layers) {
    Layer layer{spec, cur, *InferOutputShape(spec, cur, nullptr), offset};
    offset += spec.ParameterCount();
    neuron_count_ += spec.NeuronCount();
    cur = layer.out_shape;
    layers_.push_back(std::move(layer));
  }
}

std::span<const float> Model::kernel(std::size_t layer) const {
  const auto& l = layers_.at(layer);
  return std::span<const float>(weights_).subspan(l.weight_offset, l.spec.KernelCount());
}

std::span<const float> Model::bias(std::size_t layer) const {
  const auto& l = layers_.at(layer);
  return std::span<const float>(weights_).subspan(l.weight_offset + l.spec.KernelCount(),
                                                  l.spec.BiasCount());
}

bool Model::is_classifier() const {
  return layers_.back().spec.kind == LayerKind::kSoftmax;
}

int Model::class_count() const { return static_cast<int>(ShapeSize(output_shape())); }

std::size_t NeuronCount(const Model& model) { return model.neuron_count(); }

std::vector<Violation> ValidateModelFiles(const std::filesystem::path& manifest_path,
                                          const std::filesystem::path& weights_path) {
  std::vector<Violation> out;
  std::string text;
  try {
    text = ReadText(manifest_path);
  } catch (const Error& e) {
    Add(&out, e.code(), e.what());
    return out;
  }
  auto manifest = ParseManifest(text, &out);
  if (!manifest) return out;
  auto structural = ValidateManifest(*manifest);
  out.insert(out.end(), structural.begin(), structural.end());

  std::size_t bytes = 0;
  std::vector<float> weights;
  try {
    weights = ReadFloatFile(weights_path, &bytes);
  } catch (const Error& e) {
    Add(&out, e.code(), e.what());
    return out;
  }
  if (bytes != 4 * manifest->declared_weight_count) {
    Add(&out, ErrorCode::kWeightCountMismatch,
        fmt::format("weights file has {} bytes, expected 4 x {} = {}", bytes,
                    manifest->declared_weight_count, 4 * manifest->declared_weight_count));
  }
  constexpr std::size_t kMaxReported = 8;
  std::size_t non_finite = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (std::isfinite(weights[i])) continue;
    if (non_finite++ < kMaxReported) {
      Add(&out, ErrorCode::kNonFiniteWeight, fmt::format("weight {} is {}", i, weights[i]));
    }
  }
  if (non_finite > kMaxReported) {
    Add(&out, ErrorCode::kNonFiniteWeight,
        fmt::format("{} more non-finite weights", non_finite - kMaxReported));
  }
  return out;
}

Model LoadModel(const std::filesystem::path& manifest_path,
                const std::filesystem::path& weights_path) {
  auto violations = ValidateModelFiles(manifest_path, weights_path);
  if (!violations.empty()) {
    throw Error(violations[0].code, manifest_path.string() + ": " + violations[0].message);
  }
  std::vector<Violation> unused;
  auto manifest = ParseManifest(ReadText(manifest_path), &unused);
  std::size_t bytes = 0;
  return Model(std::move(*manifest), ReadFloatFile(weights_path, &bytes));
}

void SaveModel(const Model& model, const std::filesystem::path& manifest_path,
               const std::filesystem::path& weights_path) {
  std::string blob;
  blob.reserve(model.weights().size() * 4);
  for (float w : model.weights()) AppendFloatLE(blob, w);
  const std::string text = SerializeManifest(model.manifest());
  const std::pair<const std::filesystem::path*, const std::string*> files[] = {
      {&manifest_path, &text}, {&weights_path, &blob}};
  for (const auto& [path, bytes] : files) {
    std::ofstream out(*path, std::ios::binary | std::ios::trunc);
    out.write(bytes->data(), static_cast<std::streamsize>(bytes->size()));
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path->string());
  }
}

ModelPaths ResolveModelPaths(const std::filesystem::path& arg) {
  std::filesystem::path stem = arg;
  if (stem.extension() == ".json" || stem.extension() == ".bin") stem.replace_extension();
  auto with = [&](const char* ext) {
    std::filesystem::path p = stem;
    p += ext;
    return p;
  };
  return {with(".json"), with(".bin")};
}

Model LoadModel(const std::filesystem::path& arg) {
  auto paths = ResolveModelPaths(arg);
  return LoadModel(paths.manifest, paths.weights);
}

std::vector<float> DecodeFloatsLE(std::span<const unsigned char> bytes) {
  std::vector<float> out(bytes.size() / 4);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const unsigned char* p = bytes.data() + 4 * i;
    const std::uint32_t u = std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) |
                            (std::uint32_t{p[2]} << 16) | (std::uint32_t{p[3]} << 24);
    out[i] = std::bit_cast<float>(u);
  }
  return out;
}

void AppendFloatLE(std::string& out, float v) {
  const auto u = std::bit_cast<std::uint32_t>(v);
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((u >> (8 * i)) & 0xFFu));
}

}  // namespace nnfuzz
