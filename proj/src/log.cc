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

#include "nnfuzz/log.h"

#include <cstdlib>
#include <string_view>

#include <spdlog/sinks/stdout_color_sinks.h>

namespace nnfuzz {

void InitLogging() {
  auto logger = spdlog::get("nnfuzz");
  if (!logger) {
    logger = spdlog::stderr_color_mt("nnfuzz");
    logger->set_pattern("[%l] %v");
  }
  spdlog::level::level_enum level = spdlog::level::info;
  if (const char* env = std::getenv("NNFUZZ_LOG")) {
    const std::string_view v(env);
    if (v == "error") level = spdlog::level::err;
    if (v == "debug") level = spdlog::level::debug;
  }
  logger->set_level(level);
  spdlog::set_default_logger(logger);
}

}  // namespace nnfuzz
