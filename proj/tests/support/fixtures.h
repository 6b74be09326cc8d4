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

// Hand-written fixture models and datasets. The committed files under
// tests/fixtures/golden are produced from these builders by
// make_fixtures; a unit test checks they still match byte-for-byte.

#ifndef NNFUZZ_TESTS_SUPPORT_FIXTURES_H_
#define NNFUZZ_TESTS_SUPPORT_FIXTURES_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nnfuzz/model.h"
#include "nnfuzz/rng.h"
#include "nnfuzz/tensor_io.h"

namespace nnfuzz::fixtures {

inline constexpr int kImageSide = 8;
inline constexpr int kClasses = 3;  // horizontal bar, vertical bar, diagonal

// Builds a model whose declared weight count is the implied one.
Model BuildModel(std::string name, Shape input, ValueRange range, std::vector<LayerSpec> layers,
                 std::vector<float> weights, std::optional<int> feature_layer = std::nullopt);

// A random model that passes validation: a few conv/pool/upsample layers,
// one or two dense layers, optional softmax.
Model RandomValidModel(Rng& rng, int index);

// Unique scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& prefix = "nnfuzz-test");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

Model GoldenClassifier();
Model GoldenExtractor();
// Slightly blurring near-identity pair over [-1, 1].
Model NoisyForwardGenerator();
Model NoisyBackwardGenerator();
// Exact identity (1x1 conv, weight 1) over [-1, 1].
Model IdentityGenerator(const std::string& name);
std::vector<LabeledImage> GoldenDataset();

// dense(52 -> 52) identity and a one-image dataset activating 20 neurons.
Model Nc52Model();
std::vector<LabeledImage> Nc52Dataset();

void WriteModel(const Model& model, const std::filesystem::path& dir, const std::string& stem);
void WriteDataset(const std::vector<LabeledImage>& data, const std::filesystem::path& dir);

// Writes the complete fixture tree (golden/ and nc52/) under `root`.
void WriteAllFixtures(const std::filesystem::path& root);

// Source-tree location of the committed fixtures.
std::filesystem::path CommittedFixtureDir();

}  // namespace nnfuzz::fixtures

#endif  // NNFUZZ_TESTS_SUPPORT_FIXTURES_H_
