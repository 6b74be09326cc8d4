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

#ifndef NNFUZZ_LOG_H_
#define NNFUZZ_LOG_H_

#include <spdlog/spdlog.h>

namespace nnfuzz {

// Applies NNFUZZ_LOG={error,info,debug} (default: info) to the stderr logger.
void InitLogging();

}  // namespace nnfuzz

#endif  // NNFUZZ_LOG_H_
