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

#include "nnfuzz/seed_pool.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "nnfuzz/error.h"
#include "nnfuzz/tensor_io.h"

namespace nnfuzz {

namespace fs = std::filesystem;

std::string SeedFileStem(SeedId id) { return fmt::format("{:08d}", id); }

std::vector<double> TimePriorities(const std::vector<LogicalTime>& times, LogicalTime now) {
  if (times.empty()) throw Error(ErrorCode::kEmptyPool, "no seeds to select from");
  const LogicalTime newest = *std::max_element(times.begin(), times.end());
  if (newest > now) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("seed time {} is after now = {}", newest, now));
  }
  // exp(t_i - t) / sum exp(t_j - t) == exp(t_i - max) / sum exp(t_j - max):
  // subtracting the newest time keeps every exponent <= 0.
  std::vector<double> p(times.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    p[i] = std::exp(-static_cast<double>(newest - times[i]));
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

const SeedEntry& SeedPool::Add(Tensor image, int label, std::optional<SeedId> parent_id,
                               std::size_t popcount, LogicalTime now) {
  if (image_shape_ && image.shape != *image_shape_) {
    throw Error(ErrorCode::kShapeMismatch,
                fmt::format("seed shape {} but pool holds {}", ShapeToString(image.shape),
                            ShapeToString(*image_shape_)));
  }
  entries_.push_back({next_id_++, std::move(image), label, now, parent_id, popcount});
  return entries_.back();
}

std::vector<double> SeedPool::SelectionProbabilities(LogicalTime now) const {
  std::vector<LogicalTime> times;
  times.reserve(entries_.size());
  for (const auto& e : entries_) times.push_back(e.time);
  return TimePriorities(times, now);
}

const SeedEntry& SeedPool::Select(LogicalTime now, Rng& rng) const {
  const auto p = SelectionProbabilities(now);
  const double u = rng.Uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    if (u < acc) return entries_[i];
  }
  // Rounding left the cumulative sum just below u; take the last seed with
  // nonzero mass.
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] > 0.0) return entries_[i];
  }
  return entries_.back();
}

const SeedEntry* SeedPool::Find(SeedId id) const {
  for (const auto& e : entries_) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

void SeedPool::AdvanceTo(LogicalTime now) {
  if (now < now_) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("logical time cannot go back from {} to {}", now_, now));
  }
  now_ = now;
}

void SeedPool::Persist(const fs::path& dir) const {
  std::error_code ec;
  const fs::path seeds = dir / "seeds";
  fs::remove_all(seeds, ec);
  fs::create_directories(seeds, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + seeds.string() + ": " + ec.message());
  for (const auto& e : entries_) {
    nlohmann::ordered_json meta;
    meta["id"] = e.id;
    meta["label"] = e.label;
    meta["t"] = e.time;
    meta["parent_id"] = e.parent_id ? nlohmann::ordered_json(*e.parent_id) : nlohmann::ordered_json(nullptr);
    meta["popcount"] = e.popcount;
    meta["shape"] = e.image.shape;
    const std::string stem = SeedFileStem(e.id);
    WriteFileBytes(seeds / (stem + ".meta.json"), meta.dump(2) + "\n");
    WriteTensorFile(seeds / (stem + ".tensor"), e.image);
  }
  nlohmann::ordered_json state;
  state["now"] = now_;
  state["next_id"] = next_id_;
  state["size"] = entries_.size();
  WriteFileBytes(dir / "pool.json", state.dump(2) + "\n");
}

SeedPool SeedPool::Load(const fs::path& dir) {
  SeedPool pool;
  const fs::path seeds = dir / "seeds";
  std::vector<fs::path> metas;
  std::error_code ec;
  if (fs::is_directory(seeds)) {
    for (const auto& entry : fs::directory_iterator(seeds, ec)) {
      const std::string name = entry.path().filename().string();
      if (name.ends_with(".meta.json")) metas.push_back(entry.path());
    }
  }
  if (ec) throw Error(ErrorCode::kIoError, "cannot list " + seeds.string());
  std::sort(metas.begin(), metas.end());

  for (const auto& path : metas) {
    nlohmann::json meta;
    try {
      meta = nlohmann::json::parse(ReadFileBytes(path));
      SeedEntry e;
      e.id = meta.at("id").get<SeedId>();
      e.label = meta.at("label").get<int>();
      e.time = meta.at("t").get<LogicalTime>();
      if (!meta.at("parent_id").is_null()) e.parent_id = meta["parent_id"].get<SeedId>();
      e.popcount = meta.at("popcount").get<std::size_t>();
      e.image = ReadTensorFile(seeds / (SeedFileStem(e.id) + ".tensor"));
      pool.next_id_ = std::max(pool.next_id_, e.id + 1);
      pool.now_ = std::max(pool.now_, e.time);
      pool.entries_.push_back(std::move(e));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kCorruptCorpus, path.string() + ": " + e.what());
    }
  }
  if (fs::exists(dir / "pool.json")) {
    try {
      auto state = nlohmann::json::parse(ReadFileBytes(dir / "pool.json"));
      pool.now_ = std::max(pool.now_, state.at("now").get<LogicalTime>());
      pool.next_id_ = std::max(pool.next_id_, state.at("next_id").get<SeedId>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kCorruptCorpus, (dir / "pool.json").string() + ": " + e.what());
    }
  }
  return pool;
}

}  // namespace nnfuzz
