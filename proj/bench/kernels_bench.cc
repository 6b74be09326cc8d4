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

// Serial reference kernels against their OpenMP counterparts.

#include <vector>

#include <benchmark/benchmark.h>

#include "nnfuzz/inference.h"
#include "nnfuzz/kernels.h"
#include "nnfuzz/rng.h"

namespace nnfuzz {
namespace {

struct ConvCase {
  kernels::ConvGeometry geometry;
  LayerSpec spec;
  std::vector<double> input;
  std::vector<float> kernel;
  std::vector<float> bias;
  std::vector<double> output;
};

ConvCase MakeConv(int side, int channels) {
  ConvCase c;
  c.spec = LayerSpec::Conv2d(channels, channels, 3, 3, 1, Padding::kSame, Activation::kRelu);
  c.geometry = kernels::MakeConvGeometry(c.spec, {side, side, channels});
  Rng rng(1);
  c.input.resize(static_cast<std::size_t>(side) * side * channels);
  for (auto& v : c.input) v = rng.Uniform(-1, 1);
  c.kernel.resize(c.spec.KernelCount());
  for (auto& v : c.kernel) v = static_cast<float>(rng.Normal() * 0.1);
  c.bias.assign(c.spec.BiasCount(), 0.01f);
  c.output.resize(static_cast<std::size_t>(c.geometry.out.h) * c.geometry.out.w *
                  c.geometry.out.c);
  return c;
}

void BM_Conv2dReference(benchmark::State& state) {
  auto c = MakeConv(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    kernels::reference::Conv2d(c.input, c.geometry, c.kernel, c.bias, c.spec.activation,
                               c.output);
    benchmark::DoNotOptimize(c.output.data());
  }
}

void BM_Conv2dParallel(benchmark::State& state) {
  auto c = MakeConv(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    kernels::Conv2d(c.input, c.geometry, c.kernel, c.bias, c.spec.activation, c.output);
    benchmark::DoNotOptimize(c.output.data());
  }
}

struct DenseCase {
  std::vector<double> input;
  std::vector<float> kernel;
  std::vector<float> bias;
  std::vector<double> output;
};

DenseCase MakeDense(int in, int out) {
  DenseCase d;
  Rng rng(2);
  d.input.resize(in);
  for (auto& v : d.input) v = rng.Uniform(-1, 1);
  d.kernel.resize(static_cast<std::size_t>(in) * out);
  for (auto& v : d.kernel) v = static_cast<float>(rng.Normal() * 0.05);
  d.bias.assign(out, 0.0f);
  d.output.resize(out);
  return d;
}

void BM_DenseReference(benchmark::State& state) {
  auto d = MakeDense(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    kernels::reference::Dense(d.input, d.kernel, d.bias, Activation::kRelu, d.output);
    benchmark::DoNotOptimize(d.output.data());
  }
}

void BM_DenseParallel(benchmark::State& state) {
  auto d = MakeDense(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    kernels::Dense(d.input, d.kernel, d.bias, Activation::kRelu, d.output);
    benchmark::DoNotOptimize(d.output.data());
  }
}

BENCHMARK(BM_Conv2dReference)->Args({32, 16})->Args({64, 32})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Conv2dParallel)->Args({32, 16})->Args({64, 32})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DenseReference)->Args({1024, 256})->Args({4096, 1024})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DenseParallel)->Args({1024, 256})->Args({4096, 1024})->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace nnfuzz

BENCHMARK_MAIN();
