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

#include <filesystem>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "fixtures.h"
#include "nnfuzz/campaign.h"
#include "nnfuzz/report.h"

namespace nnfuzz {
namespace {

using fixtures::kImageSide;
using fixtures::TempDir;

// Always predicts `label` for 8x8x1 inputs.
Model ConstantClassifier(int label) {
  std::vector<float> w(64 * 3 + 3, 0.0f);
  w[64 * 3 + label] = 1.0f;
  return fixtures::BuildModel("constant", {kImageSide, kImageSide, 1}, {0.0, 1.0},
                              {LayerSpec::Flatten(), LayerSpec::Dense(64, 3), LayerSpec::Softmax()},
                              w);
}

struct Models {
  Model classifier = fixtures::GoldenClassifier();
  Model extractor = fixtures::GoldenExtractor();
  GeneratorPair noisy{fixtures::NoisyForwardGenerator(), fixtures::NoisyBackwardGenerator()};
  GeneratorPair identity{fixtures::IdentityGenerator("id_f"), fixtures::IdentityGenerator("id_b")};
};

CampaignParams GoldenParams() {
  CampaignParams p;
  p.iterations = 50;
  p.sigma = 0.05;
  p.seed = 2026;
  return p;
}

TEST(CampaignTest, InitPoolPartitionsTheDataset) {
  Models m;
  auto data = fixtures::GoldenDataset();
  Model all_zero = ConstantClassifier(0);
  Campaign mixed(all_zero, &m.noisy, m.extractor, GoldenParams());
  auto stats = mixed.InitPool(data);
  std::size_t zeros = 0;
  for (const auto& d : data) zeros += d.label == 0 ? 1 : 0;
  EXPECT_EQ(stats.pool_size, zeros);
  EXPECT_EQ(stats.skipped, data.size() - zeros);
  EXPECT_EQ(stats.pool_size + stats.skipped, stats.dataset_size);
  for (const auto& e : mixed.pool().entries()) EXPECT_EQ(e.time, 0u);

  Campaign golden(m.classifier, &m.noisy, m.extractor, GoldenParams());
  EXPECT_EQ(golden.InitPool(data).pool_size, data.size());

  std::vector<LabeledImage> ones;
  for (const auto& d : data) {
    if (d.label != 0) ones.push_back(d);
  }
  Campaign none(all_zero, &m.noisy, m.extractor, GoldenParams());
  try {
    none.InitPool(ones);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyPool);
  }
}

TEST(CampaignTest, IdentityGeneratorsGiveFixedPoint) {
  Models m;
  for (Feedback feedback : {Feedback::kParentRelative, Feedback::kGlobalCumulative}) {
    CampaignParams p;
    p.iterations = 1;
    p.per_parent = 1;
    p.sigma = 0.0;
    p.feedback = feedback;
    Campaign campaign(m.classifier, &m.identity, m.extractor, p);
    campaign.InitPool({fixtures::GoldenDataset()[0]});
    auto rec = campaign.RunIteration();
    ASSERT_EQ(rec.decisions.size(), 1u);
    EXPECT_EQ(rec.decisions[0].similarity, 1.0);
    EXPECT_TRUE(rec.decisions[0].kept);
    ASSERT_EQ(rec.outcomes.size(), 1u);
    EXPECT_FALSE(rec.outcomes[0].new_coverage);
    EXPECT_FALSE(rec.outcomes[0].finding);
    EXPECT_EQ(campaign.pool().size(), 1u);
  }
}

TEST(CampaignTest, IterationCountersHaveTheLoopShape) {
  Models m;
  CampaignParams p = GoldenParams();
  Campaign campaign(m.classifier, &m.noisy, m.extractor, p);
  auto init = campaign.InitPool(fixtures::GoldenDataset());
  std::size_t covered = init.covered;
  std::size_t pool = init.pool_size;
  for (int i = 0; i < p.iterations; ++i) {
    auto rec = campaign.RunIteration();
    EXPECT_EQ(rec.iteration, i + 1);
    EXPECT_EQ(rec.generated, static_cast<std::size_t>(p.per_parent));
    EXPECT_EQ(rec.decisions.size() + rec.duplicates, rec.generated);
    EXPECT_LE(rec.kept, static_cast<std::size_t>(p.top_k));
    EXPECT_EQ(rec.classifications, rec.kept);
    EXPECT_EQ(rec.outcomes.size(), rec.kept);
    EXPECT_EQ(rec.covered_before, covered);
    EXPECT_GE(rec.covered_after, rec.covered_before);
    EXPECT_EQ(rec.pool_size, pool + rec.added);
    for (const auto& o : rec.outcomes) {
      EXPECT_GT(o.similarity, p.sim_threshold);
      EXPECT_EQ(o.added_id.has_value(), o.new_coverage);
    }
    covered = rec.covered_after;
    pool = rec.pool_size;
  }
}

TEST(CampaignTest, CoverageEqualsReplayOverPoolMembers) {
  Models m;
  for (Feedback feedback : {Feedback::kParentRelative, Feedback::kGlobalCumulative}) {
    CampaignParams p = GoldenParams();
    p.feedback = feedback;
    p.sigma = 0.1;
    Campaign campaign(m.classifier, &m.noisy, m.extractor, p);
    campaign.InitPool(fixtures::GoldenDataset());
    for (int i = 0; i < p.iterations; ++i) campaign.RunIteration();

    CoverageTracker replay(m.classifier.neuron_count(), p.act_threshold, p.scaling);
    for (const auto& e : campaign.pool().entries()) {
      auto profile = ComputeProfile(Forward(m.classifier, e.image).record, p.act_threshold,
                                    p.scaling);
      EXPECT_EQ(profile.popcount(), e.popcount);
      replay.Update(profile);
    }
    EXPECT_EQ(replay.cumulative(), campaign.tracker().cumulative());
  }
}

TEST(CampaignTest, ParentRelativeNeverPoolsAnIdenticalCandidate) {
  Models m;
  CampaignParams p = GoldenParams();
  p.sigma = 0.0;
  p.per_parent = 4;
  Campaign campaign(m.classifier, &m.identity, m.extractor, p);
  auto init = campaign.InitPool(fixtures::GoldenDataset());
  for (int i = 0; i < 20; ++i) {
    auto rec = campaign.RunIteration();
    EXPECT_EQ(rec.added, 0u);
    EXPECT_EQ(rec.duplicates, 3u);
  }
  EXPECT_EQ(campaign.pool().size(), init.pool_size);
}

TEST(CampaignTest, FindingsAreDedupedByContent) {
  Model classifier = ConstantClassifier(2);
  Tensor x = fixtures::GoldenDataset()[0].image;
  EXPECT_FALSE(CheckErrorBehavior(classifier, x, 2));
  auto f = CheckErrorBehavior(classifier, x, 0);
  ASSERT_TRUE(f);
  EXPECT_EQ(f->truth, 0);
  EXPECT_EQ(f->predicted, 2);
  FindingLog log;
  EXPECT_TRUE(log.Record(*f));
  EXPECT_FALSE(log.Record(*f));
  EXPECT_EQ(log.findings().size(), 1u);
  EXPECT_EQ(log.duplicates(), 1u);
}

TEST(CampaignTest, InvalidParamsAreRejected) {
  CampaignParams p;
  p.iterations = 0;
  EXPECT_THROW(p.Validate(), Error);
  p = CampaignParams{};
  p.top_k = 0;
  EXPECT_THROW(p.Validate(), Error);
  p = CampaignParams{};
  p.sim_threshold = 1.5;
  EXPECT_THROW(p.Validate(), Error);
}

CampaignConfig GoldenConfig(const std::filesystem::path& corpus, int iterations) {
  const auto dir = fixtures::CommittedFixtureDir() / "golden";
  CampaignConfig cfg;
  cfg.params = GoldenParams();
  cfg.params.iterations = iterations;
  cfg.classifier = dir / "classifier";
  cfg.gen_forward = dir / "gen_forward";
  cfg.gen_backward = dir / "gen_backward";
  cfg.extractor = dir / "extractor";
  cfg.dataset = dir / "dataset";
  cfg.corpus = corpus;
  return cfg;
}

TEST(CampaignTest, RunCampaignWritesReportAndCorpus) {
  TempDir dir;
  auto cfg = GoldenConfig(dir / "corpus", 50);
  auto report = RunCampaign(cfg);
  EXPECT_TRUE(report.complete) << report.error;
  EXPECT_EQ(report.iterations.size(), 50u);
  EXPECT_TRUE(std::filesystem::exists(cfg.report_path()));
  EXPECT_TRUE(std::filesystem::exists(cfg.log_path()));
  EXPECT_TRUE(std::filesystem::exists(cfg.corpus / "pool.json"));
  EXPECT_EQ(SeedPool::Load(cfg.corpus).size(), report.pool_size);
  double prev = report.init.nc_ratio;
  for (const auto& rec : report.iterations) {
    EXPECT_GE(rec.nc_ratio, prev);
    prev = rec.nc_ratio;
  }
  auto json = LoadReportJson(cfg.report_path());
  EXPECT_EQ(json["config"]["top_k"], 5);
  EXPECT_EQ(json["summary"]["iterations_run"], 50);
}

TEST(CampaignTest, ReportIsIdenticalAcrossRuns) {
  TempDir dir;
  auto a = GoldenConfig(dir / "a", 30);
  auto b = GoldenConfig(dir / "b", 30);
  RunCampaign(a);
  RunCampaign(b);
  EXPECT_EQ(ReadFileBytes(a.log_path()), ReadFileBytes(b.log_path()));
}

#ifdef _OPENMP
TEST(CampaignTest, LogDoesNotDependOnThreadCount) {
  TempDir dir;
  auto one = GoldenConfig(dir / "one", 30);
  auto four = GoldenConfig(dir / "four", 30);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  RunCampaign(one);
  omp_set_num_threads(4);
  RunCampaign(four);
  omp_set_num_threads(saved);
  EXPECT_EQ(ReadFileBytes(one.log_path()), ReadFileBytes(four.log_path()));
}
#endif

}  // namespace
}  // namespace nnfuzz
