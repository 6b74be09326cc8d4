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

#ifndef NNFUZZ_RNG_H_
#define NNFUZZ_RNG_H_

#include <cstdint>
#include <random>

namespace nnfuzz {

// Seeded generator with a platform-independent output sequence.
// mt19937_64's raw output is fixed by the standard; the distribution helpers
// below are written out here because std:: distributions are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) from exactly one engine output.
  double Uniform();
  // Uniform in [lo, hi).
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Standard normal via Box-Muller; exactly two engine outputs, no caching.
  double Normal();

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer; used to derive independent substream seeds.
std::uint64_t Mix64(std::uint64_t x);

// Seed for substream (key, a, b). Substream i of parent p uses
// DeriveSeed(stream_key, p, i).
std::uint64_t DeriveSeed(std::uint64_t key, std::uint64_t a, std::uint64_t b);

}  // namespace nnfuzz

#endif  // NNFUZZ_RNG_H_
