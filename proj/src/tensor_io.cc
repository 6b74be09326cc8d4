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

#include "nnfuzz/tensor_io.h"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "nnfuzz/error.h"
#include "nnfuzz/model.h"

namespace nnfuzz {
namespace {

constexpr char kMagic[4] = {'N', 'N', 'F', 'T'};
constexpr std::uint32_t kMaxRank = 8;

void AppendU32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
}

std::uint32_t ReadU32(const std::string& bytes, std::size_t pos) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= std::uint32_t{static_cast<unsigned char>(bytes[pos + i])} << (8 * i);
  }
  return v;
}

}  // namespace

std::string EncodeTensor(const Tensor& t) {
  std::string out(kMagic, 4);
  AppendU32(out, static_cast<std::uint32_t>(t.shape.size()));
  for (int d : t.shape) AppendU32(out, static_cast<std::uint32_t>(d));
  for (double v : t.data) AppendFloatLE(out, static_cast<float>(v));
  return out;
}

Tensor DecodeTensor(const std::string& bytes, const std::string& source) {
  auto corrupt = [&](const std::string& why) {
    return Error(ErrorCode::kCorruptCorpus, source + ": " + why);
  };
  if (bytes.size() < 8 || !std::equal(kMagic, kMagic + 4, bytes.begin())) {
    throw corrupt("not a tensor file (bad magic or header)");
  }
  const std::uint32_t rank = ReadU32(bytes, 4);
  if (rank == 0 || rank > kMaxRank) throw corrupt(fmt::format("bad rank {}", rank));
  if (bytes.size() < 8 + 4 * static_cast<std::size_t>(rank)) throw corrupt("truncated header");
  Shape shape;
  for (std::uint32_t i = 0; i < rank; ++i) {
    const std::uint32_t d = ReadU32(bytes, 8 + 4 * i);
    if (d == 0 || d > (1u << 24)) throw corrupt(fmt::format("bad dimension {}", d));
    shape.push_back(static_cast<int>(d));
  }
  const std::size_t header = 8 + 4 * static_cast<std::size_t>(rank);
  const std::size_t expected = header + 4 * ShapeSize(shape);
  if (bytes.size() != expected) {
    throw corrupt(fmt::format("{} bytes, expected {} for shape {}", bytes.size(), expected,
                              ShapeToString(shape)));
  }
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data()) + header;
  auto floats = DecodeFloatsLE({p, bytes.size() - header});
  Tensor t(shape, std::vector<double>(floats.begin(), floats.end()));
  if (!t.AllFinite()) throw corrupt("non-finite value");
  return t;
}

std::string ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileBytes(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

void WriteTensorFile(const std::filesystem::path& path, const Tensor& t) {
  WriteFileBytes(path, EncodeTensor(t));
}

Tensor ReadTensorFile(const std::filesystem::path& path) {
  return DecodeTensor(ReadFileBytes(path), path.string());
}

std::vector<LabeledImage> LoadDataset(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  constexpr std::string_view kMetaSuffix = ".meta.json";
  auto list_meta = [&](const fs::path& d) {
    std::vector<fs::path> metas;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(d, ec)) {
      const std::string name = entry.path().filename().string();
      if (entry.is_regular_file() && name.size() > kMetaSuffix.size() &&
          name.ends_with(kMetaSuffix)) {
        metas.push_back(entry.path());
      }
    }
    if (ec) throw Error(ErrorCode::kIoError, "cannot list " + d.string() + ": " + ec.message());
    std::sort(metas.begin(), metas.end());
    return metas;
  };

  if (!fs::is_directory(dir)) throw Error(ErrorCode::kIoError, dir.string() + " is not a directory");
  auto metas = list_meta(dir);
  if (metas.empty() && fs::is_directory(dir / "seeds")) metas = list_meta(dir / "seeds");

  std::vector<LabeledImage> out;
  for (const auto& meta_path : metas) {
    const std::string file = meta_path.filename().string();
    const std::string stem = file.substr(0, file.size() - kMetaSuffix.size());
    nlohmann::json meta;
    try {
      meta = nlohmann::json::parse(ReadFileBytes(meta_path));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kCorruptCorpus, meta_path.string() + ": " + e.what());
    }
    if (!meta.is_object() || !meta.contains("label") || !meta["label"].is_number_integer()) {
      throw Error(ErrorCode::kCorruptCorpus, meta_path.string() + ": missing integer label");
    }
    out.push_back({stem, ReadTensorFile(meta_path.parent_path() / (stem + ".tensor")),
                   meta["label"].get<int>()});
  }
  return out;
}

}  // namespace nnfuzz
