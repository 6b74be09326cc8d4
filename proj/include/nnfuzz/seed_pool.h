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

#ifndef NNFUZZ_SEED_POOL_H_
#define NNFUZZ_SEED_POOL_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "nnfuzz/rng.h"
#include "nnfuzz/tensor.h"

namespace nnfuzz {

using SeedId = std::uint64_t;
using LogicalTime = std::uint64_t;

struct SeedEntry {
  SeedId id = 0;
  Tensor image;
  int label = 0;
  LogicalTime time = 0;  // logical time at insertion
  std::optional<SeedId> parent_id;
  std::size_t popcount = 0;
};

// Selection probabilities h(b_i, t) = exp(t_i - t) / sum_j exp(t_j - t),
// computed with max-exponent subtraction. Exposed separately from the pool
// so the formula can be checked against an independent oracle.
std::vector<double> TimePriorities(const std::vector<LogicalTime>& times,
                                   LogicalTime now);

// Processing pool. Entries are never retired; selection samples with
// replacement.
class SeedPool {
 public:
  SeedPool() = default;
  // When set, Add() rejects images of any other shape.
  explicit SeedPool(Shape image_shape) : image_shape_(std::move(image_shape)) {}

  const SeedEntry& Add(Tensor image, int label, std::optional<SeedId> parent_id,
                       std::size_t popcount, LogicalTime now);

  std::vector<double> SelectionProbabilities(LogicalTime now) const;
  // Consumes exactly one rng output.
  const SeedEntry& Select(LogicalTime now, Rng& rng) const;

  const std::vector<SeedEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const SeedEntry* Find(SeedId id) const;

  LogicalTime now() const { return now_; }
  void AdvanceTo(LogicalTime now);

  // Writes `dir`/seeds/<id>.meta.json + <id>.tensor and `dir`/pool.json,
  // replacing any previous seeds directory.
  void Persist(const std::filesystem::path& dir) const;
  static SeedPool Load(const std::filesystem::path& dir);

 private:
  std::optional<Shape> image_shape_;
  std::vector<SeedEntry> entries_;
  SeedId next_id_ = 0;
  LogicalTime now_ = 0;
};

std::string SeedFileStem(SeedId id);

}  // namespace nnfuzz

#endif  // NNFUZZ_SEED_POOL_H_
