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

#include "cli.h"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "nnfuzz/campaign.h"
#include "nnfuzz/coverage.h"
#include "nnfuzz/inference.h"
#include "nnfuzz/log.h"
#include "nnfuzz/model.h"
#include "nnfuzz/mutation.h"
#include "nnfuzz/report.h"
#include "nnfuzz/tensor_io.h"

namespace nnfuzz {
namespace {

namespace fs = std::filesystem;

struct FuzzFlags {
  CampaignConfig cfg;
  std::string scaling = "raw";
  std::string feedback = "parent-relative";
  std::string mutator = "aeg";
};

struct MutateFlags {
  std::string input;
  std::string out_dir;
  std::string gen_forward;
  std::string gen_backward;
  std::string mutator = "aeg";
  std::vector<std::string> ops;
  int per_parent = kDefaultPerParent;
  double sigma = kDefaultNoiseSigma;
  std::uint64_t seed = 0;
  std::vector<double> range = {0.0, 1.0};
};

struct CoverageFlags {
  std::string classifier;
  std::string dataset;
  double act_threshold = kDefaultActThreshold;
  std::string scaling = "raw";
};

int CmdFuzz(FuzzFlags& f, std::ostream& out) {
  f.cfg.params.scaling = ParseScaling(f.scaling);
  f.cfg.params.feedback = ParseFeedback(f.feedback);
  f.cfg.params.mutator = ParseMutatorKind(f.mutator);
  const CampaignReport report = RunCampaign(f.cfg);
  fmt::print(out, "NC: {}% findings: {} pool: {}\n", FormatPercent(report.final_nc),
             report.findings.size(), report.pool_size);
  if (!report.complete) {
    spdlog::error("campaign incomplete: {}", report.error);
    return kExitAborted;
  }
  return kExitOk;
}

int CmdValidate(const std::string& manifest, const std::string& weights, std::ostream& out) {
  const auto violations = ValidateModelFiles(manifest, weights);
  if (violations.empty()) {
    const Model model = LoadModel(manifest, weights);
    fmt::print(out, "ok: {} ({} layers, {} weights, {} neurons)\n", model.name(),
               model.layers().size(), model.weights().size(), model.neuron_count());
    return kExitOk;
  }
  for (const auto& v : violations) fmt::print(out, "{}: {}\n", ErrorCodeName(v.code), v.message);
  return kExitInvalidModel;
}

int CmdMutate(const MutateFlags& f, std::ostream& out) {
  if (f.range.size() != 2 || !(f.range[0] < f.range[1])) {
    throw Error(ErrorCode::kInvalidArgument, "--range needs lo < hi");
  }
  const ValueRange range{f.range[0], f.range[1]};
  MutatorConfig cfg;
  cfg.kind = ParseMutatorKind(f.mutator);
  cfg.per_parent = f.per_parent;
  cfg.sigma = f.sigma;
  if (!f.ops.empty()) {
    const auto defaults = DefaultClassicalRanges();
    cfg.classical.clear();
    for (const auto& name : f.ops) {
      const ClassicalOp op = ParseClassicalOp(name);
      cfg.classical.push_back(*std::find_if(defaults.begin(), defaults.end(),
                                            [&](const auto& r) { return r.op == op; }));
    }
  }
  std::optional<GeneratorPair> gens;
  if (cfg.kind == MutatorKind::kAeg) {
    if (f.gen_forward.empty() || f.gen_backward.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "aeg mutation needs --gen-forward and --gen-backward");
    }
    gens.emplace(GeneratorPair{LoadModel(f.gen_forward), LoadModel(f.gen_backward)});
  }
  SeedEntry parent;
  parent.image = ReadTensorFile(f.input);
  Rng rng(f.seed);
  const auto candidates = BatchGenerate(parent, cfg, gens ? &*gens : nullptr, range, rng);
  fs::create_directories(f.out_dir);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const fs::path path = fs::path(f.out_dir) / fmt::format("candidate_{:03d}.tensor", i);
    WriteTensorFile(path, candidates[i]);
    fmt::print(out, "{} {}\n", path.string(), HashToHex(ContentHash(candidates[i])));
  }
  return kExitOk;
}

int CmdCoverage(const CoverageFlags& f, std::ostream& out) {
  const Model classifier = LoadModel(f.classifier);
  const auto dataset = LoadDataset(f.dataset);
  CoverageTracker tracker(classifier.neuron_count(), f.act_threshold, ParseScaling(f.scaling));
  for (const auto& item : dataset) {
    const auto fwd = Forward(classifier, item.image);
    tracker.Update(ComputeProfile(fwd.record, f.act_threshold, tracker.scaling()));
  }
  fmt::print(out, "{}\n", FormatPercent(tracker.NcRatio()));
  return kExitOk;
}

int CmdReport(const std::string& path, const std::string& format, std::ostream& out) {
  const auto report = LoadReportJson(path);
  if (format == "csv") {
    WriteReportCsv(report, out);
  } else {
    WriteReportText(report, out);
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  InitLogging();
  CLI::App app{"coverage-guided fuzzing of feed-forward image classifiers", "nnfuzz"};
  app.require_subcommand(1);

  FuzzFlags fuzz;
  auto* cmd_fuzz = app.add_subcommand("fuzz", "Run a fuzzing campaign");
  auto& p = fuzz.cfg.params;
  cmd_fuzz->add_option("--classifier", fuzz.cfg.classifier, "Classifier model (.json/.bin stem)")->required();
  cmd_fuzz->add_option("--gen-forward", fuzz.cfg.gen_forward, "Forward generator model")->required();
  cmd_fuzz->add_option("--gen-backward", fuzz.cfg.gen_backward, "Backward generator model")->required();
  cmd_fuzz->add_option("--extractor", fuzz.cfg.extractor, "Feature extractor model")->required();
  cmd_fuzz->add_option("--dataset", fuzz.cfg.dataset, "Labeled seed directory")->required();
  cmd_fuzz->add_option("--corpus", fuzz.cfg.corpus, "Output corpus directory")->required();
  cmd_fuzz->add_option("--iterations", p.iterations, "Iteration budget N")->required();
  cmd_fuzz->add_option("--per-parent", p.per_parent, "Candidates per parent N1 (engine default)")
      ->capture_default_str();
  cmd_fuzz->add_option("--top-k", p.top_k, "Top-k candidates kept per parent")->capture_default_str();
  cmd_fuzz->add_option("--sim-threshold", p.sim_threshold, "Feature cosine similarity gate")
      ->capture_default_str();
  cmd_fuzz->add_option("--act-threshold", p.act_threshold, "Neuron activation threshold t (engine default)")
      ->capture_default_str();
  cmd_fuzz->add_option("--scaling", fuzz.scaling, "Activation scaling")
      ->check(CLI::IsMember({"raw", "layer_minmax"}))
      ->capture_default_str();
  cmd_fuzz->add_option("--feedback", fuzz.feedback, "Coverage feedback mode")
      ->check(CLI::IsMember({"parent-relative", "global"}))
      ->capture_default_str();
  cmd_fuzz->add_option("--seed", p.seed, "RNG seed")->capture_default_str();
  cmd_fuzz->add_option("--sigma", p.sigma, "Pre-generator noise std (engine default)")
      ->capture_default_str();
  cmd_fuzz->add_option("--mutator", fuzz.mutator, "Mutation strategy")
      ->check(CLI::IsMember({"aeg", "classical"}))
      ->capture_default_str();
  cmd_fuzz->add_option("--report", fuzz.cfg.report, "Report path (default <corpus>/report.json)");

  std::string manifest, weights;
  auto* cmd_validate = app.add_subcommand("validate-model", "Validate a model file pair");
  cmd_validate->add_option("--manifest", manifest, "Manifest JSON")->required();
  cmd_validate->add_option("--weights", weights, "Weight blob")->required();

  MutateFlags mutate;
  auto* cmd_mutate = app.add_subcommand("mutate", "Write N1 mutants of one tensor file");
  cmd_mutate->add_option("--input", mutate.input, "Parent tensor file")->required();
  cmd_mutate->add_option("--out-dir", mutate.out_dir, "Output directory")->required();
  cmd_mutate->add_option("--gen-forward", mutate.gen_forward, "Forward generator model");
  cmd_mutate->add_option("--gen-backward", mutate.gen_backward, "Backward generator model");
  cmd_mutate->add_option("--mutator", mutate.mutator, "Mutation strategy")
      ->check(CLI::IsMember({"aeg", "classical"}))
      ->capture_default_str();
  cmd_mutate->add_option("--ops", mutate.ops, "Classical ops to sample from")->delimiter(',');
  cmd_mutate->add_option("--per-parent", mutate.per_parent, "Candidates N1")->capture_default_str();
  cmd_mutate->add_option("--sigma", mutate.sigma, "Pre-generator noise std")->capture_default_str();
  cmd_mutate->add_option("--seed", mutate.seed, "RNG seed")->capture_default_str();
  cmd_mutate->add_option("--range", mutate.range, "Image value range lo hi")->expected(2);

  CoverageFlags coverage;
  auto* cmd_coverage = app.add_subcommand("coverage", "Neuron coverage of a dataset");
  cmd_coverage->add_option("--classifier", coverage.classifier, "Classifier model")->required();
  cmd_coverage->add_option("--dataset", coverage.dataset, "Dataset directory")->required();
  cmd_coverage->add_option("--act-threshold", coverage.act_threshold, "Activation threshold t")
      ->capture_default_str();
  cmd_coverage->add_option("--scaling", coverage.scaling, "Activation scaling")
      ->check(CLI::IsMember({"raw", "layer_minmax"}))
      ->capture_default_str();

  std::string report_path, report_format = "text";
  auto* cmd_report = app.add_subcommand("report", "Summarize a campaign report");
  cmd_report->add_option("--report", report_path, "report.json path")->required();
  cmd_report->add_option("--format", report_format, "Output format")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands()[0]) {
      err << sub->help();
    } else {
      err << app.help();
    }
    return kExitConfigError;
  }

  try {
    if (*cmd_fuzz) return CmdFuzz(fuzz, out);
    if (*cmd_validate) return CmdValidate(manifest, weights, out);
    if (*cmd_mutate) return CmdMutate(mutate, out);
    if (*cmd_coverage) return CmdCoverage(coverage, out);
    if (*cmd_report) return CmdReport(report_path, report_format, out);
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitConfigError;
  } catch (const std::filesystem::filesystem_error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace nnfuzz
