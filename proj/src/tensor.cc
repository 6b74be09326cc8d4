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

#include "nnfuzz/tensor.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <functional>
#include <numeric>

#include <fmt/format.h>

#include "nnfuzz/error.h"

namespace nnfuzz {

std::size_t ShapeSize(const Shape& shape) {
  if (shape.empty()) return 0;
  std::size_t n = 1;
  for (int d : shape) n *= static_cast<std::size_t>(d < 0 ? 0 : d);
  return n;
}

std::string ShapeToString(const Shape& shape) {
  return fmt::format("[{}]", fmt::join(shape, ", "));
}

double MapRange(double v, ValueRange from, ValueRange to) {
  if (from == to) return v;
  return to.lo + (v - from.lo) / from.width() * to.width();
}

Tensor::Tensor(Shape s) : shape(std::move(s)), data(ShapeSize(shape), 0.0) {}

Tensor::Tensor(Shape s, std::vector<double> values)
    : shape(std::move(s)), data(std::move(values)) {
  if (data.size() != ShapeSize(shape)) {
    throw Error(ErrorCode::kShapeMismatch,
                fmt::format("{} values for shape {}", data.size(), ShapeToString(shape)));
  }
}

bool Tensor::AllFinite() const {
  for (double v : data) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void RoundToFloat(Tensor& t) {
  for (double& v : t.data) v = static_cast<double>(static_cast<float>(v));
}

namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void HashBytes(std::uint64_t& h, std::uint32_t word) {
  for (int i = 0; i < 4; ++i) {
    h ^= (word >> (8 * i)) & 0xFFu;
    h *= kFnvPrime;
  }
}

}  // namespace

std::uint64_t ContentHash(const Tensor& t) {
  std::uint64_t h = kFnvOffset;
  HashBytes(h, static_cast<std::uint32_t>(t.shape.size()));
  for (int d : t.shape) HashBytes(h, static_cast<std::uint32_t>(d));
  for (double v : t.data) HashBytes(h, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  return h;
}

std::string HashToHex(std::uint64_t hash) { return fmt::format("{:016x}", hash); }

}  // namespace nnfuzz
