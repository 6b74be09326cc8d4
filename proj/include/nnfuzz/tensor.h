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

#ifndef NNFUZZ_TENSOR_H_
#define NNFUZZ_TENSOR_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace nnfuzz {

using Shape = std::vector<int>;

std::size_t ShapeSize(const Shape& shape);
std::string ShapeToString(const Shape& shape);

// Closed interval of admissible input values for a model.
struct ValueRange {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  bool operator==(const ValueRange&) const = default;
};

// Affine map from one range onto another; identity when the ranges match.
double MapRange(double v, ValueRange from, ValueRange to);

// Dense row-major tensor. Images use [H, W, C] layout. Values are kept in
// double during computation; anything persisted is rounded to binary32 first
// (see RoundToFloat) so in-memory and on-disk contents agree bit-for-bit.
struct Tensor {
  Shape shape;
  std::vector<double> data;

  Tensor() = default;
  explicit Tensor(Shape s);
  Tensor(Shape s, std::vector<double> values);

  std::size_t size() const { return data.size(); }
  int rank() const { return static_cast<int>(shape.size()); }
  bool AllFinite() const;

  bool operator==(const Tensor&) const = default;
};

// Rounds every element to the nearest binary32 value.
void RoundToFloat(Tensor& t);

// FNV-1a over the shape and the binary32 little-endian bytes of the data.
std::uint64_t ContentHash(const Tensor& t);
std::string HashToHex(std::uint64_t hash);

}  // namespace nnfuzz

#endif  // NNFUZZ_TENSOR_H_
