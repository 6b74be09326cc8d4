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

#ifndef NNFUZZ_PARALLEL_H_
#define NNFUZZ_PARALLEL_H_

#include <cstddef>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nnfuzz {

// Runs body(i) for i in [0, n) on OpenMP threads (serially without OpenMP).
// The first exception thrown by any iteration is rethrown on the caller's
// thread once the loop finishes. Iterations must write disjoint state.
template <typename Body>
void ParallelFor(std::size_t n, Body&& body) {
  std::exception_ptr error;
  std::mutex error_mu;
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic) if (count > 1)
  for (long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

inline int MaxThreads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace nnfuzz

#endif  // NNFUZZ_PARALLEL_H_
