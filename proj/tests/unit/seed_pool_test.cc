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

#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "nnfuzz/seed_pool.h"
#include "nnfuzz/tensor_io.h"

namespace nnfuzz {
namespace {

using fixtures::TempDir;

Tensor Pixel(double v) { return Tensor({1, 1, 1}, {v}); }

TEST(SeedPoolTest, EqualTimesAreUniform) {
  auto p = TimePriorities({3, 3}, 3);
  EXPECT_DOUBLE_EQ(p[0], 0.5);
  EXPECT_DOUBLE_EQ(p[1], 0.5);
}

TEST(SeedPoolTest, PrioritiesMatchHighPrecisionSoftmax) {
  auto p = TimePriorities({0, 5}, 5);
  EXPECT_NEAR(p[0], 0.00669285092428485556, 1e-15);
  EXPECT_NEAR(p[1], 0.99330714907571514444, 1e-15);
}

TEST(SeedPoolTest, SingleSeedHasProbabilityOne) {
  EXPECT_EQ(TimePriorities({4}, 9), (std::vector<double>{1.0}));
  SeedPool pool;
  pool.Add(Pixel(0.1), 0, std::nullopt, 0, 0);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(pool.Select(1000, rng).id, 0u);
}

TEST(SeedPoolTest, PrioritiesAreShiftInvariantAndStableForLargeTimes) {
  auto a = TimePriorities({0, 2, 3}, 3);
  auto b = TimePriorities({1000000, 1000002, 1000003}, 1000003);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(a[i], b[i], 1e-15);
  auto old = TimePriorities({0, 2000}, 2000);
  EXPECT_EQ(old[0], 0.0);
  EXPECT_EQ(old[1], 1.0);
}

TEST(SeedPoolTest, PriorityErrors) {
  EXPECT_THROW(TimePriorities({}, 0), Error);
  EXPECT_THROW(TimePriorities({5}, 4), Error);
}

TEST(SeedPoolTest, SelectionFrequencyTracksProbability) {
  SeedPool pool;
  pool.Add(Pixel(0.1), 0, std::nullopt, 0, 0);
  pool.Add(Pixel(0.2), 0, std::nullopt, 0, 5);
  Rng rng(42);
  int newer = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) newer += pool.Select(5, rng).id == 1 ? 1 : 0;
  EXPECT_NEAR(newer / static_cast<double>(draws), 0.993307, 0.003);
}

TEST(SeedPoolTest, SelectionIsReproducible) {
  SeedPool pool;
  for (int i = 0; i < 6; ++i) pool.Add(Pixel(i / 10.0), 0, std::nullopt, 0, i % 3);
  Rng a(77), b(77);
  for (int i = 0; i < 200; ++i) EXPECT_EQ(pool.Select(3, a).id, pool.Select(3, b).id);
}

TEST(SeedPoolTest, AddAssignsIdsAndTimes) {
  SeedPool pool(Shape{1, 1, 1});
  const auto& a = pool.Add(Pixel(0.1), 2, std::nullopt, 3, 7);
  EXPECT_EQ(a.time, 7u);
  const auto id_a = a.id;
  const auto& b = pool.Add(Pixel(0.2), 1, id_a, 4, 7);
  EXPECT_NE(b.id, id_a);
  EXPECT_EQ(b.time, 7u);
  EXPECT_EQ(b.parent_id, id_a);
  pool.Add(Pixel(0.3), 1, id_a, 4, 9);
  auto probs = pool.SelectionProbabilities(9);
  EXPECT_GT(probs[2], probs[0]);
  EXPECT_GT(probs[2], probs[1]);
  EXPECT_THROW(pool.Add(Tensor({2, 1, 1}, {0, 0}), 0, std::nullopt, 0, 9), Error);
}

TEST(SeedPoolTest, PersistAndLoadRoundTrip) {
  TempDir dir;
  SeedPool pool(Shape{2, 2, 1});
  pool.Add(Tensor({2, 2, 1}, {0.0, 0.25, 0.5, 1.0}), 1, std::nullopt, 2, 0);
  pool.Add(Tensor({2, 2, 1}, {0.125, 0.25, 0.5, 0.75}), 0, 0, 3, 4);
  pool.AdvanceTo(6);
  pool.Persist(dir.path());
  SeedPool loaded = SeedPool::Load(dir.path());
  ASSERT_EQ(loaded.size(), 2u);
  EXPECT_EQ(loaded.now(), 6u);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& a = pool.entries()[i];
    const auto& b = loaded.entries()[i];
    EXPECT_EQ(a.id, b.id);
    EXPECT_EQ(a.image, b.image);
    EXPECT_EQ(a.label, b.label);
    EXPECT_EQ(a.time, b.time);
    EXPECT_EQ(a.parent_id, b.parent_id);
    EXPECT_EQ(a.popcount, b.popcount);
  }
  // Ids continue after the loaded ones.
  EXPECT_EQ(loaded.Add(Tensor({2, 2, 1}, {0, 0, 0, 0}), 0, std::nullopt, 0, 6).id, 2u);
}

TEST(SeedPoolTest, EmptyDirectoryYieldsEmptyPool) {
  TempDir dir;
  SeedPool pool = SeedPool::Load(dir.path());
  EXPECT_TRUE(pool.empty());
  Rng rng(0);
  try {
    pool.Select(0, rng);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyPool);
  }
}

TEST(SeedPoolTest, TruncatedTensorIsCorruptCorpusNamingTheFile) {
  TempDir dir;
  SeedPool pool;
  pool.Add(Tensor({2, 2, 1}, {0.0, 0.25, 0.5, 1.0}), 1, std::nullopt, 0, 0);
  pool.Persist(dir.path());
  const auto file = dir.path() / "seeds" / (SeedFileStem(0) + ".tensor");
  std::string bytes = ReadFileBytes(file);
  WriteFileBytes(file, bytes.substr(0, bytes.size() - 2));
  try {
    SeedPool::Load(dir.path());
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorruptCorpus);
    EXPECT_NE(std::string(e.what()).find(SeedFileStem(0) + ".tensor"), std::string::npos);
  }
}

TEST(SeedPoolTest, TensorCodecRejectsBadInput) {
  Tensor t({1, 2, 3}, {0, 1, 2, 3, 4, 5});
  EXPECT_EQ(DecodeTensor(EncodeTensor(t), "x"), t);
  std::string bad = EncodeTensor(t);
  bad[0] = 'X';
  EXPECT_THROW(DecodeTensor(bad, "x"), Error);
  EXPECT_THROW(DecodeTensor(EncodeTensor(t) + "abcd", "x"), Error);
}

}  // namespace
}  // namespace nnfuzz
