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

// The fuzzing campaign loop: select a parent by time priority, generate N1
// candidates, gate them by deep-feature similarity and keep the top K, then
// feed the survivors to the classifier and pool those that bring new
// coverage. Misclassified survivors are recorded as findings.

#ifndef NNFUZZ_CAMPAIGN_H_
#define NNFUZZ_CAMPAIGN_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "nnfuzz/coverage.h"
#include "nnfuzz/feature_gate.h"
#include "nnfuzz/model.h"
#include "nnfuzz/mutation.h"
#include "nnfuzz/seed_pool.h"
#include "nnfuzz/tensor_io.h"

namespace nnfuzz {

struct CampaignParams {
  int iterations = 1;
  int per_parent = kDefaultPerParent;
  int top_k = kDefaultTopK;
  double sim_threshold = kDefaultSimThreshold;
  double act_threshold = kDefaultActThreshold;
  Scaling scaling = Scaling::kRaw;
  Feedback feedback = Feedback::kParentRelative;
  std::uint64_t seed = 0;
  MutatorKind mutator = MutatorKind::kAeg;
  double sigma = kDefaultNoiseSigma;

  void Validate() const;
  MutatorConfig mutator_config() const;
};

struct CampaignConfig {
  CampaignParams params;
  std::filesystem::path classifier;
  std::filesystem::path gen_forward;
  std::filesystem::path gen_backward;
  std::filesystem::path extractor;
  std::filesystem::path dataset;
  std::filesystem::path corpus;
  std::filesystem::path report;  // defaults to <corpus>/report.json

  std::filesystem::path report_path() const;
  std::filesystem::path log_path() const;  // report path with .jsonl
};

struct Finding {
  std::size_t index = 0;  // order of discovery
  Tensor image;
  SeedId parent_id = 0;
  int truth = 0;
  int predicted = 0;
  double confidence = 0.0;
  int iteration = 0;
  std::uint64_t hash = 0;
  double similarity = 0.0;
  bool pooled = false;  // also added to the pool for new coverage
};

// Finding iff the classifier's argmax differs from `truth`. Index,
// iteration, parent and similarity are left for the caller.
std::optional<Finding> CheckErrorBehavior(const Model& classifier,
                                          const Tensor& candidate, int truth);

// Campaign-wide finding deduplication by content hash.
class FindingLog {
 public:
  // Returns false (and counts a duplicate) if the hash was seen before.
  bool Record(Finding finding);
  const std::vector<Finding>& findings() const { return findings_; }
  std::vector<Finding>& mutable_findings() { return findings_; }
  std::size_t duplicates() const { return duplicates_; }

 private:
  std::vector<Finding> findings_;
  std::unordered_set<std::uint64_t> seen_;
  std::size_t duplicates_ = 0;
};

struct CandidateOutcome {
  std::uint64_t candidate = 0;  // index within the iteration's batch
  int rank = 0;
  double similarity = 0.0;
  int predicted = 0;
  double confidence = 0.0;
  std::size_t popcount = 0;
  bool new_coverage = false;
  std::optional<SeedId> added_id;
  bool finding = false;
  bool duplicate_finding = false;
};

struct IterationRecord {
  int iteration = 0;
  SeedId parent_id = 0;
  std::size_t parent_popcount = 0;
  std::size_t generated = 0;
  std::size_t duplicates = 0;  // candidates identical to an earlier one
  std::size_t feature_extractions = 0;
  std::size_t kept = 0;
  std::size_t classifications = 0;
  std::size_t added = 0;
  std::size_t covered_before = 0;
  std::size_t covered_after = 0;
  double nc_ratio = 0.0;
  std::size_t findings_total = 0;
  std::size_t pool_size = 0;
  std::vector<GateDecision> decisions;
  std::vector<CandidateOutcome> outcomes;
};

struct InitStats {
  std::size_t dataset_size = 0;
  std::size_t pool_size = 0;
  std::size_t skipped = 0;  // misclassified or out-of-range labels
  std::size_t covered = 0;
  double nc_ratio = 0.0;
};

// In-memory campaign over loaded models. The loop is sequential; work on
// the candidates of one iteration fans out to OpenMP threads and is merged in
// candidate order, so results do not depend on the thread count.
class Campaign {
 public:
  // `gens` may be null for the classical mutator. Throws on incompatible
  // shapes or invalid params. The models must outlive the campaign.
  Campaign(const Model& classifier, const GeneratorPair* gens, const Model& extractor,
           CampaignParams params);

  // Pools the dataset images the classifier labels correctly (t_i = 0) and
  // folds their profiles into the tracker. Throws EmptyPool if none are.
  InitStats InitPool(const std::vector<LabeledImage>& dataset);

  IterationRecord RunIteration();

  int iteration() const { return iteration_; }
  const SeedPool& pool() const { return pool_; }
  const CoverageTracker& tracker() const { return tracker_; }
  const FindingLog& findings() const { return findings_; }
  const CampaignParams& params() const { return params_; }
  ValueRange image_range() const { return classifier_.input_range(); }

 private:
  const FeatureVector& ParentFeatures(const SeedEntry& parent);

  const Model& classifier_;
  const GeneratorPair* gens_;
  const Model& extractor_;
  CampaignParams params_;
  MutatorConfig mutator_;
  SeedPool pool_;
  CoverageTracker tracker_;
  FindingLog findings_;
  Rng rng_;
  int iteration_ = 0;
  std::unordered_map<SeedId, FeatureVector> feature_cache_;
  std::unordered_map<SeedId, ActivationProfile> profiles_;
};

struct CampaignReport {
  CampaignConfig config;
  std::string classifier_name;
  std::size_t neuron_count = 0;
  InitStats init;
  std::vector<IterationRecord> iterations;
  std::vector<Finding> findings;
  std::size_t duplicate_findings = 0;
  std::size_t pool_size = 0;
  std::size_t final_covered = 0;
  double final_nc = 0.0;
  std::vector<std::size_t> covered_neurons;
  bool complete = false;
  std::string error;
  double wall_time_s = 0.0;
};

// Loads the models named in `cfg`, runs cfg.params.iterations iterations,
// persists the pool and findings under cfg.corpus and writes the report and
// iteration log. Config/model problems throw before the first iteration; an
// I/O failure during the run returns a report with complete = false.
CampaignReport RunCampaign(const CampaignConfig& cfg);

// Writes `dir`/findings/<index>.meta.json + .tensor, replacing the directory.
void PersistFindings(const std::vector<Finding>& findings,
                     const std::filesystem::path& dir);

}  // namespace nnfuzz

#endif  // NNFUZZ_CAMPAIGN_H_
