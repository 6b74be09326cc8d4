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

// Tensor files: "NNFT" magic, u32 rank, u32 dims[rank], then binary32 data,
// all little-endian.

#ifndef NNFUZZ_TENSOR_IO_H_
#define NNFUZZ_TENSOR_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "nnfuzz/tensor.h"

namespace nnfuzz {

std::string EncodeTensor(const Tensor& t);
// Throws CorruptCorpus naming `source` on any framing problem.
Tensor DecodeTensor(const std::string& bytes, const std::string& source);

void WriteTensorFile(const std::filesystem::path& path, const Tensor& t);
Tensor ReadTensorFile(const std::filesystem::path& path);

std::string ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path, const std::string& bytes);

// A labeled image from a dataset directory.
struct LabeledImage {
  std::string name;
  Tensor image;
  int label = 0;
};

// Loads every "<name>.meta.json" + "<name>.tensor" pair from `dir` (or from
// `dir`/seeds when `dir` holds none), sorted by name.
std::vector<LabeledImage> LoadDataset(const std::filesystem::path& dir);

}  // namespace nnfuzz

#endif  // NNFUZZ_TENSOR_IO_H_
