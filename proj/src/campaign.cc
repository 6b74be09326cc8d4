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

#include "nnfuzz/campaign.h"

#include <chrono>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "nnfuzz/inference.h"
#include "nnfuzz/log.h"
#include "nnfuzz/parallel.h"
#include "nnfuzz/report.h"

namespace nnfuzz {

namespace fs = std::filesystem;

void CampaignParams::Validate() const {
  auto bad = [](std::string msg) { return Error(ErrorCode::kInvalidArgument, std::move(msg)); };
  if (iterations < 1) throw bad("iterations (N) must be >= 1");
  if (per_parent < 1) throw bad("per-parent (N1) must be >= 1");
  if (top_k < 1) throw bad("top-k (K) must be >= 1");
  if (!(sim_threshold >= -1.0 && sim_threshold <= 1.0)) throw bad("sim-threshold must be in [-1, 1]");
  if (!std::isfinite(act_threshold)) throw bad("act-threshold must be finite");
  if (!std::isfinite(sigma) || sigma < 0) throw bad("sigma must be finite and >= 0");
}

MutatorConfig CampaignParams::mutator_config() const {
  MutatorConfig cfg;
  cfg.kind = mutator;
  cfg.sigma = sigma;
  cfg.per_parent = per_parent;
  return cfg;
}

fs::path CampaignConfig::report_path() const {
  return report.empty() ? corpus / "report.json" : report;
}

fs::path CampaignConfig::log_path() const {
  fs::path p = report_path();
  p.replace_extension(".jsonl");
  return p;
}

std::optional<Finding> CheckErrorBehavior(const Model& classifier, const Tensor& candidate,
                                          int truth) {
  const auto c = Classify(classifier, candidate);
  if (c.label == truth) return std::nullopt;
  Finding f;
  f.image = candidate;
  f.truth = truth;
  f.predicted = c.label;
  f.confidence = c.probs[c.label];
  f.hash = ContentHash(candidate);
  return f;
}

bool FindingLog::Record(Finding finding) {
  if (!seen_.insert(finding.hash).second) {
    ++duplicates_;
    return false;
  }
  finding.index = findings_.size();
  findings_.push_back(std::move(finding));
  return true;
}

Campaign::Campaign(const Model& classifier, const GeneratorPair* gens, const Model& extractor,
                   CampaignParams params)
    : classifier_(classifier),
      gens_(gens),
      extractor_(extractor),
      params_(params),
      mutator_(params.mutator_config()),
      pool_(classifier.input_shape()),
      tracker_(classifier.neuron_count(), params.act_threshold, params.scaling),
      rng_(params.seed) {
  params_.Validate();
  mutator_.Validate();
  if (!classifier_.is_classifier()) {
    throw Error(ErrorCode::kNotAClassifier,
                fmt::format("model {} does not end in softmax", classifier_.name()));
  }
  if (!extractor_.manifest().feature_layer) {
    throw Error(ErrorCode::kNoFeatureLayer,
                fmt::format("extractor {} declares no feature_layer", extractor_.name()));
  }
  if (params_.mutator == MutatorKind::kAeg) {
    if (gens_ == nullptr) throw Error(ErrorCode::kInvalidArgument, "aeg mutator needs generators");
    CheckGeneratorShapes(*gens_, classifier_.input_shape());
  }
}

InitStats Campaign::InitPool(const std::vector<LabeledImage>& dataset) {
  std::vector<ForwardResult> results(dataset.size());
  for (const auto& item : dataset) {
    if (item.image.shape != classifier_.input_shape()) {
      throw Error(ErrorCode::kShapeMismatch,
                  fmt::format("dataset image {} has shape {}, classifier expects {}", item.name,
                              ShapeToString(item.image.shape),
                              ShapeToString(classifier_.input_shape())));
    }
  }
  ParallelFor(dataset.size(), [&](std::size_t i) {
    results[i] = Forward(classifier_, dataset[i].image);
  });

  InitStats stats;
  stats.dataset_size = dataset.size();
  const int classes = classifier_.class_count();
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const int truth = dataset[i].label;
    if (truth < 0 || truth >= classes || ArgMax(results[i].output.data) != truth) {
      ++stats.skipped;
      continue;
    }
    auto profile = ComputeProfile(results[i].record, params_.act_threshold, params_.scaling);
    const auto& entry =
        pool_.Add(dataset[i].image, truth, std::nullopt, profile.popcount(), pool_.now());
    tracker_.Update(profile);
    profiles_.emplace(entry.id, std::move(profile));
  }
  if (pool_.empty()) {
    throw Error(ErrorCode::kEmptyPool,
                fmt::format("classifier labels none of the {} dataset images correctly",
                            dataset.size()));
  }
  stats.pool_size = pool_.size();
  stats.covered = tracker_.covered();
  stats.nc_ratio = tracker_.NcRatio();
  spdlog::info("initial pool: {} seeds ({} skipped), NC {}%", stats.pool_size, stats.skipped,
               FormatPercent(stats.nc_ratio));
  return stats;
}

const FeatureVector& Campaign::ParentFeatures(const SeedEntry& parent) {
  auto it = feature_cache_.find(parent.id);
  if (it == feature_cache_.end()) {
    it = feature_cache_
             .emplace(parent.id, ExtractFeatures(extractor_, parent.image, image_range()))
             .first;
  }
  return it->second;
}

IterationRecord Campaign::RunIteration() {
  if (pool_.empty()) throw Error(ErrorCode::kEmptyPool, "InitPool must succeed first");
  ++iteration_;
  const LogicalTime now = static_cast<LogicalTime>(iteration_);
  pool_.AdvanceTo(now);

  IterationRecord rec;
  rec.iteration = iteration_;
  // Copy: Add() below may reallocate the pool.
  const SeedEntry parent = pool_.Select(now, rng_);
  rec.parent_id = parent.id;
  rec.parent_popcount = parent.popcount;
  rec.covered_before = tracker_.covered();

  std::vector<Tensor> candidates =
      BatchGenerate(parent, mutator_, gens_, image_range(), rng_);
  rec.generated = candidates.size();

  const bool cached = feature_cache_.contains(parent.id);
  const FeatureVector& parent_features = ParentFeatures(parent);
  std::vector<FeatureVector> features(candidates.size());
  ParallelFor(candidates.size(), [&](std::size_t i) {
    features[i] = ExtractFeatures(extractor_, candidates[i], image_range());
  });
  rec.feature_extractions = candidates.size() + (cached ? 0 : 1);

  std::vector<std::uint64_t> hashes(candidates.size());
  std::vector<GateCandidate> gate_input;
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    hashes[i] = ContentHash(candidates[i]);
    if (!seen.insert(hashes[i]).second) {
      ++rec.duplicates;
      continue;
    }
    gate_input.push_back({i, std::move(features[i])});
  }
  rec.decisions =
      GateAndRank(parent_features, gate_input, params_.sim_threshold, params_.top_k);

  std::vector<const GateDecision*> kept;
  for (const auto& d : rec.decisions) {
    if (d.kept) kept.push_back(&d);
  }
  rec.kept = kept.size();

  std::vector<ForwardResult> fed(kept.size());
  ParallelFor(kept.size(), [&](std::size_t j) {
    fed[j] = Forward(classifier_, candidates[kept[j]->id]);
  });
  rec.classifications = kept.size();

  const ActivationProfile parent_profile = profiles_.at(parent.id);
  for (std::size_t j = 0; j < kept.size(); ++j) {
    const GateDecision& d = *kept[j];
    CandidateOutcome out;
    out.candidate = d.id;
    out.rank = d.rank.value_or(0);
    out.similarity = d.similarity;
    const auto& probs = fed[j].output.data;
    out.predicted = ArgMax(probs);
    out.confidence = probs[out.predicted];

    bool recorded_finding = false;
    if (out.predicted != parent.label) {
      Finding f;
      f.image = candidates[d.id];
      f.parent_id = parent.id;
      f.truth = parent.label;
      f.predicted = out.predicted;
      f.confidence = out.confidence;
      f.iteration = iteration_;
      f.hash = hashes[d.id];
      f.similarity = d.similarity;
      recorded_finding = findings_.Record(std::move(f));
      out.finding = recorded_finding;
      out.duplicate_finding = !recorded_finding;
    }

    auto profile = ComputeProfile(fed[j].record, params_.act_threshold, params_.scaling);
    out.popcount = profile.popcount();
    out.new_coverage = IsNewCoverage(parent_profile, profile, tracker_, params_.feedback);
    if (out.new_coverage) {
      const auto& entry =
          pool_.Add(candidates[d.id], parent.label, parent.id, profile.popcount(), now);
      out.added_id = entry.id;
      tracker_.Update(profile);
      profiles_.emplace(entry.id, std::move(profile));
      ++rec.added;
      if (recorded_finding) findings_.mutable_findings().back().pooled = true;
    }
    rec.outcomes.push_back(out);
  }

  rec.covered_after = tracker_.covered();
  rec.nc_ratio = tracker_.NcRatio();
  rec.findings_total = findings_.findings().size();
  rec.pool_size = pool_.size();
  spdlog::debug("iter {}: parent {} kept {} added {} NC {}% findings {}", iteration_, parent.id,
                rec.kept, rec.added, FormatPercent(rec.nc_ratio), rec.findings_total);
  return rec;
}

void PersistFindings(const std::vector<Finding>& findings, const fs::path& dir) {
  std::error_code ec;
  const fs::path out_dir = dir / "findings";
  fs::remove_all(out_dir, ec);
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + out_dir.string() + ": " + ec.message());
  for (const auto& f : findings) {
    OrderedJson meta;
    meta["index"] = f.index;
    meta["parent_id"] = f.parent_id;
    meta["label"] = f.truth;
    meta["predicted"] = f.predicted;
    meta["confidence"] = f.confidence;
    meta["iteration"] = f.iteration;
    meta["hash"] = HashToHex(f.hash);
    meta["similarity"] = f.similarity;
    meta["pooled"] = f.pooled;
    const std::string stem = SeedFileStem(f.index);
    WriteFileBytes(out_dir / (stem + ".meta.json"), meta.dump(2) + "\n");
    WriteTensorFile(out_dir / (stem + ".tensor"), f.image);
  }
}

CampaignReport RunCampaign(const CampaignConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  cfg.params.Validate();
  if (cfg.corpus.empty()) throw Error(ErrorCode::kInvalidArgument, "corpus directory required");

  const Model classifier = LoadModel(cfg.classifier);
  const Model extractor = LoadModel(cfg.extractor);
  std::optional<GeneratorPair> gens;
  if (cfg.params.mutator == MutatorKind::kAeg || !cfg.gen_forward.empty()) {
    gens.emplace(GeneratorPair{LoadModel(cfg.gen_forward), LoadModel(cfg.gen_backward)});
  }
  const auto dataset = LoadDataset(cfg.dataset);

  Campaign campaign(classifier, gens ? &*gens : nullptr, extractor, cfg.params);
  CampaignReport report;
  report.config = cfg;
  report.classifier_name = classifier.name();
  report.neuron_count = classifier.neuron_count();
  report.init = campaign.InitPool(dataset);

  std::error_code ec;
  fs::create_directories(cfg.corpus, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + cfg.corpus.string());
  std::ofstream log(cfg.log_path(), std::ios::binary | std::ios::trunc);
  if (!log) throw Error(ErrorCode::kIoError, "cannot write " + cfg.log_path().string());

  auto abort_run = [&](const std::string& why) {
    report.complete = false;
    report.error = why;
    spdlog::error("campaign aborted: {}", why);
  };

  report.complete = true;
  for (int i = 0; i < cfg.params.iterations; ++i) {
    auto rec = campaign.RunIteration();
    log << RenderIterationLine(rec);
    log.flush();
    report.iterations.push_back(std::move(rec));
    if (!log) {
      abort_run("write failed: " + cfg.log_path().string());
      break;
    }
  }

  const auto& tracker = campaign.tracker();
  report.findings = campaign.findings().findings();
  report.duplicate_findings = campaign.findings().duplicates();
  report.pool_size = campaign.pool().size();
  report.final_covered = tracker.covered();
  report.final_nc = tracker.NcRatio();
  report.covered_neurons = tracker.CoveredIndices();

  try {
    campaign.pool().Persist(cfg.corpus);
    PersistFindings(report.findings, cfg.corpus);
  } catch (const Error& e) {
    abort_run(e.what());
  }

  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    WriteFileBytes(cfg.report_path(), RenderReport(report));
  } catch (const Error& e) {
    abort_run(e.what());
  }
  return report;
}

}  // namespace nnfuzz
