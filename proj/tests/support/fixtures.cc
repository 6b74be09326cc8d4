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

#include "fixtures.h"

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <cstdint>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "nnfuzz/rng.h"

namespace nnfuzz::fixtures {
namespace {

using Kernel3 = std::array<float, 9>;

constexpr Kernel3 kHorizontal = {-1, -1, -1, 2, 2, 2, -1, -1, -1};
constexpr Kernel3 kVertical = {-1, 2, -1, -1, 2, -1, -1, 2, -1};
constexpr Kernel3 kDiagonal = {2, -1, -1, -1, 2, -1, -1, -1, 2};
constexpr Kernel3 kAntiDiagonal = {-1, -1, 2, -1, 2, -1, 2, -1, -1};

void AppendKernel(std::vector<float>& w, const Kernel3& k, float scale) {
  for (float v : k) w.push_back(v * scale);
}


// 8-bit style quantization so pixel values survive range maps exactly.
double Quantize(double v) { return std::round(std::clamp(v, 0.0, 1.0) * 255.0) / 255.0; }

}  // namespace

Model BuildModel(std::string name, Shape input, ValueRange range, std::vector<LayerSpec> layers,
            std::vector<float> weights, std::optional<int> feature_layer) {
  Manifest m;
  m.name = std::move(name);
  m.input_shape = std::move(input);
  m.input_range = range;
  m.layers = std::move(layers);
  m.feature_layer = feature_layer;
  m.declared_weight_count = ImpliedWeightCount(m.layers);
  return Model(std::move(m), std::move(weights));
}

Model GoldenClassifier() {
  const Shape input{kImageSide, kImageSide, 1};
  std::vector<LayerSpec> layers = {
      LayerSpec::Conv2d(1, 6, 3, 3, 1, Padding::kSame, Activation::kRelu),
      LayerSpec::MaxPool2d(2, 2, 2),
      LayerSpec::Flatten(),
      LayerSpec::Dense(96, 12, Activation::kRelu),
      LayerSpec::Dense(12, kClasses),
      LayerSpec::Softmax(),
  };
  std::vector<float> w;
  // conv: oriented line detectors, a local-mean blob detector and a
  // center-surround dot detector.
  AppendKernel(w, kHorizontal, 2.0f / 3);
  AppendKernel(w, kVertical, 2.0f / 3);
  AppendKernel(w, kDiagonal, 2.0f / 3);
  AppendKernel(w, kAntiDiagonal, 2.0f / 3);
  AppendKernel(w, {1, 1, 1, 1, 1, 1, 1, 1, 1}, 1.0f / 4);
  AppendKernel(w, {-1, -1, -1, -1, 8, -1, -1, -1, -1}, 1.0f / 4);
  for (float b : {-0.2f, -0.2f, -0.2f, -0.2f, -0.3f, -0.5f}) w.push_back(b);

  // hidden: unit 2*ch + half pools channel ch over the top (half 0) or
  // bottom (half 1) two rows of the 4x4 pooled map.
  for (int unit = 0; unit < 12; ++unit) {
    const int ch = unit / 2, half = unit % 2;
    for (int y = 0; y < 4; ++y) {
      for (int x = 0; x < 4; ++x) {
        for (int c = 0; c < 6; ++c) {
          w.push_back(c == ch && y / 2 == half ? 0.25f : 0.0f);
        }
      }
    }
  }
  for (int unit = 0; unit < 12; ++unit) w.push_back(-0.05f);

  // output: class evidence minus competing evidence.
  const float gain = 2.0f;
  auto units_of = [](int ch) { return std::array<int, 2>{2 * ch, 2 * ch + 1}; };
  for (int cls = 0; cls < kClasses; ++cls) {
    std::array<float, 12> row{};
    auto add = [&](int ch, float v) {
      for (int u : units_of(ch)) row[u] += v;
    };
    if (cls == 0) {
      add(0, gain);
      add(1, -gain);
      add(2, -0.5f * gain);
      add(3, -0.5f * gain);
    } else if (cls == 1) {
      add(1, gain);
      add(0, -gain);
      add(2, -0.5f * gain);
      add(3, -0.5f * gain);
    } else {
      add(2, gain);
      add(3, gain);
      add(0, -0.75f * gain);
      add(1, -0.75f * gain);
    }
    add(5, 0.1f * gain);
    w.insert(w.end(), row.begin(), row.end());
  }
  for (float b : {0.0f, 0.0f, 0.0f}) w.push_back(b);
  return BuildModel("golden_classifier", input, {0.0, 1.0}, std::move(layers), std::move(w));
}

Model GoldenExtractor() {
  const Shape input{kImageSide, kImageSide, 1};
  std::vector<LayerSpec> layers = {
      LayerSpec::Conv2d(1, 5, 3, 3, 1, Padding::kSame, Activation::kRelu),
      LayerSpec::MaxPool2d(2, 2, 2),
      LayerSpec::Flatten(),
      LayerSpec::Dense(80, 16, Activation::kRelu),
  };
  std::vector<float> w;
  AppendKernel(w, kHorizontal, 1.0f / 3);
  AppendKernel(w, kVertical, 1.0f / 3);
  AppendKernel(w, kDiagonal, 1.0f / 3);
  AppendKernel(w, kAntiDiagonal, 1.0f / 3);
  AppendKernel(w, {-1, -1, -1, -1, 8, -1, -1, -1, -1}, 1.0f / 2);
  for (int c = 0; c < 5; ++c) w.push_back(-0.05f);
  // Fixed pseudo-random projection; the seed is part of the fixture.
  Rng rng(20260101);
  for (int i = 0; i < 80 * 16; ++i) {
    w.push_back(static_cast<float>(std::round(rng.Uniform(-1.0, 1.0) * 64.0) / 64.0));
  }
  for (int i = 0; i < 16; ++i) w.push_back(0.0f);
  return BuildModel("golden_extractor", input, {0.0, 1.0}, std::move(layers), std::move(w), 3);
}

Model NoisyForwardGenerator() {
  const Shape shape{kImageSide, kImageSide, 1};
  std::vector<float> w = {0.0f, 0.02f, 0.0f, 0.02f, 0.92f, 0.02f, 0.0f, 0.02f, 0.0f, 0.0f};
  return BuildModel("golden_gen_forward", shape, {-1.0, 1.0},
               {LayerSpec::Conv2d(1, 1, 3, 3, 1, Padding::kSame)}, std::move(w));
}

Model NoisyBackwardGenerator() {
  const Shape shape{kImageSide, kImageSide, 1};
  return BuildModel("golden_gen_backward", shape, {-1.0, 1.0},
               {LayerSpec::Conv2d(1, 1, 1, 1, 1, Padding::kValid)}, {1.0f, 0.0f});
}

Model IdentityGenerator(const std::string& name) {
  const Shape shape{kImageSide, kImageSide, 1};
  return BuildModel(name, shape, {-1.0, 1.0}, {LayerSpec::Conv2d(1, 1, 1, 1, 1, Padding::kValid)},
               {1.0f, 0.0f});
}

std::vector<LabeledImage> GoldenDataset() {
  Rng rng(7);
  std::vector<LabeledImage> out;
  const int n = kImageSide;
  for (int i = 0; i < 30; ++i) {
    const int label = i % kClasses;
    Tensor img({n, n, 1});
    for (double& v : img.data) v = rng.Uniform(0.0, 0.12);
    // Every fifth image is a short faint stroke: harder, and easier to flip.
    const bool faint = i % 5 == 4;
    const double intensity = faint ? rng.Uniform(0.3, 0.55) : rng.Uniform(0.55, 1.0);
    const int pos = 1 + static_cast<int>(rng.NextU64() % (n - 2));
    const int len = faint ? 3 : n;
    const int start = len == n ? 0 : static_cast<int>(rng.NextU64() % (n - len + 1));
    for (int k = start; k < start + len; ++k) {
      int y = 0, x = 0;
      if (label == 0) {
        y = pos, x = k;
      } else if (label == 1) {
        y = k, x = pos;
      } else {
        y = k;
        x = (i / kClasses) % 2 == 0 ? k : n - 1 - k;
      }
      img.data[static_cast<std::size_t>(y) * n + x] = intensity;
    }
    for (double& v : img.data) v = Quantize(v);
    RoundToFloat(img);
    out.push_back({fmt::format("img_{:03d}", i), std::move(img), label});
  }
  return out;
}

Model Nc52Model() {
  constexpr int kWidth = 52;
  std::vector<float> w;
  for (int o = 0; o < kWidth; ++o) {
    for (int i = 0; i < kWidth; ++i) w.push_back(o == i ? 1.0f : 0.0f);
  }
  w.insert(w.end(), kWidth, 0.0f);
  return BuildModel("nc52", {1, 1, kWidth}, {0.0, 1.0}, {LayerSpec::Dense(kWidth, kWidth)},
               std::move(w));
}

std::vector<LabeledImage> Nc52Dataset() {
  Tensor img({1, 1, 52});
  for (int i = 0; i < 20; ++i) img.data[static_cast<std::size_t>(i) * 2 + 1] = 1.0;
  return {{"img_000", std::move(img), 0}};
}

void WriteModel(const Model& model, const std::filesystem::path& dir, const std::string& stem) {
  std::filesystem::create_directories(dir);
  SaveModel(model, dir / (stem + ".json"), dir / (stem + ".bin"));
}

void WriteDataset(const std::vector<LabeledImage>& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& item : data) {
    nlohmann::ordered_json meta;
    meta["label"] = item.label;
    WriteFileBytes(dir / (item.name + ".meta.json"), meta.dump(2) + "\n");
    WriteTensorFile(dir / (item.name + ".tensor"), item.image);
  }
}

void WriteAllFixtures(const std::filesystem::path& root) {
  const auto golden = root / "golden";
  WriteModel(GoldenClassifier(), golden, "classifier");
  WriteModel(GoldenExtractor(), golden, "extractor");
  WriteModel(NoisyForwardGenerator(), golden, "gen_forward");
  WriteModel(NoisyBackwardGenerator(), golden, "gen_backward");
  WriteModel(IdentityGenerator("identity_forward"), golden, "identity_forward");
  WriteModel(IdentityGenerator("identity_backward"), golden, "identity_backward");
  WriteDataset(GoldenDataset(), golden / "dataset");
  const auto nc52 = root / "nc52";
  WriteModel(Nc52Model(), nc52, "model");
  WriteDataset(Nc52Dataset(), nc52 / "dataset");
}

std::filesystem::path CommittedFixtureDir() { return NNFUZZ_FIXTURE_DIR; }

Model RandomValidModel(Rng& rng, int index) {
  auto pick = [&rng](int lo, int hi) {
    return lo + static_cast<int>(rng.NextU64() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  const Activation acts[] = {Activation::kNone, Activation::kRelu, Activation::kTanh,
                             Activation::kSigmoid};
  for (;;) {
    Shape input{pick(3, 10), pick(3, 10), pick(1, 3)};
    std::vector<LayerSpec> layers;
    Shape cur = input;
    auto push = [&](const LayerSpec& spec) {
      std::string why;
      auto next = InferOutputShape(spec, cur, &why);
      if (!next) return false;
      layers.push_back(spec);
      cur = *next;
      return true;
    };
    bool ok = true;
    const int convs = pick(0, 2);
    for (int i = 0; i < convs && ok; ++i) {
      const int k = pick(1, 3);
      ok = push(LayerSpec::Conv2d(cur[2], pick(1, 4), k, pick(1, 3), pick(1, 2),
                                  pick(0, 1) ? Padding::kSame : Padding::kValid,
                                  acts[pick(0, 3)]));
      if (ok && pick(0, 2) == 0) ok = push(LayerSpec::MaxPool2d(2, 2, pick(1, 2)));
      if (ok && pick(0, 4) == 0) ok = push(LayerSpec::Upsample2d(2));
    }
    if (!ok) continue;
    if (pick(0, 1)) push(LayerSpec::Flatten());
    const int dense = pick(1, 2);
    for (int i = 0; i < dense; ++i) {
      push(LayerSpec::Dense(static_cast<int>(ShapeSize(cur)), pick(1, 12), acts[pick(0, 3)]));
    }
    if (pick(0, 1)) push(LayerSpec::Softmax());
    const std::size_t count = ImpliedWeightCount(layers);
    std::vector<float> w(count);
    for (auto& v : w) v = static_cast<float>(rng.Normal());
    return BuildModel(fmt::format("random_{:02d}", index), input, {-1.0, 1.0 + pick(0, 4)},
                      std::move(layers), std::move(w));
  }
}

TempDir::TempDir(const std::string& prefix) {
  static std::atomic<unsigned> counter{0};
  const auto base = std::filesystem::temp_directory_path();
  for (;;) {
    path_ = base / fmt::format("{}-{}-{}", prefix, ::getpid(), counter++);
    if (std::filesystem::create_directories(path_)) break;
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace nnfuzz::fixtures
