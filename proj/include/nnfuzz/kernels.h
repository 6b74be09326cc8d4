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

// Layer kernels over [H, W, C] activations held in double.
//
// Every kernel exists twice: an OpenMP version used by the engine and a plain
// serial version in `reference` kept as the test oracle. Each output element
// is accumulated by exactly one thread in the same order as the reference
// (bias first, then ky, kx, ic), so the two agree bit-for-bit regardless of
// thread count.

#ifndef NNFUZZ_KERNELS_H_
#define NNFUZZ_KERNELS_H_

#include <span>

#include "nnfuzz/model.h"

namespace nnfuzz::kernels {

struct MapDims {
  int h = 0;
  int w = 0;
  int c = 0;
};

struct ConvGeometry {
  MapDims in;
  MapDims out;
  int kh = 1;
  int kw = 1;
  int stride = 1;
  int pad_top = 0;
  int pad_left = 0;
};

// Output geometry for a conv2d layer; `same` follows the zero-fill
// convention out = ceil(in / stride) with the extra pad on the bottom/right.
ConvGeometry MakeConvGeometry(const LayerSpec& spec, MapDims in);

double Activate(Activation act, double x);

void Dense(std::span<const double> in, std::span<const float> kernel,
           std::span<const float> bias, Activation act, std::span<double> out);
void Conv2d(std::span<const double> in, const ConvGeometry& g,
            std::span<const float> kernel, std::span<const float> bias,
            Activation act, std::span<double> out);
void MaxPool2d(std::span<const double> in, MapDims in_dims, int kh, int kw,
               int stride, MapDims out_dims, std::span<double> out);
void Upsample2d(std::span<const double> in, MapDims in_dims, int factor,
                std::span<double> out);
// Max-subtracted softmax over the whole buffer.
void Softmax(std::span<const double> in, std::span<double> out);
// Per-channel spatial mean of an [H, W, C] map.
void ChannelMeans(std::span<const double> in, MapDims dims, std::span<double> out);

namespace reference {

void Dense(std::span<const double> in, std::span<const float> kernel,
           std::span<const float> bias, Activation act, std::span<double> out);
void Conv2d(std::span<const double> in, const ConvGeometry& g,
            std::span<const float> kernel, std::span<const float> bias,
            Activation act, std::span<double> out);
void MaxPool2d(std::span<const double> in, MapDims in_dims, int kh, int kw,
               int stride, MapDims out_dims, std::span<double> out);
void Upsample2d(std::span<const double> in, MapDims in_dims, int factor,
                std::span<double> out);
void ChannelMeans(std::span<const double> in, MapDims dims, std::span<double> out);

}  // namespace reference
}  // namespace nnfuzz::kernels

#endif  // NNFUZZ_KERNELS_H_
