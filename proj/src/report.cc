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

#include "nnfuzz/report.h"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "nnfuzz/tensor_io.h"

namespace nnfuzz {

OrderedJson ConfigToJson(const CampaignConfig& cfg) {
  const auto& p = cfg.params;
  OrderedJson j;
  j["iterations"] = p.iterations;
  j["per_parent"] = p.per_parent;
  j["top_k"] = p.top_k;
  j["sim_threshold"] = p.sim_threshold;
  j["act_threshold"] = p.act_threshold;
  j["scaling"] = ScalingName(p.scaling);
  j["feedback"] = FeedbackName(p.feedback);
  j["seed"] = p.seed;
  j["mutator"] = MutatorKindName(p.mutator);
  j["sigma"] = p.sigma;
  OrderedJson paths;
  paths["classifier"] = cfg.classifier.string();
  paths["gen_forward"] = cfg.gen_forward.string();
  paths["gen_backward"] = cfg.gen_backward.string();
  paths["extractor"] = cfg.extractor.string();
  paths["dataset"] = cfg.dataset.string();
  paths["corpus"] = cfg.corpus.string();
  paths["report"] = cfg.report_path().string();
  j["paths"] = std::move(paths);
  return j;
}

OrderedJson IterationToJson(const IterationRecord& rec) {
  OrderedJson j;
  j["iteration"] = rec.iteration;
  j["parent_id"] = rec.parent_id;
  j["parent_popcount"] = rec.parent_popcount;
  j["generated"] = rec.generated;
  j["duplicates"] = rec.duplicates;
  j["feature_extractions"] = rec.feature_extractions;
  j["kept"] = rec.kept;
  j["classifications"] = rec.classifications;
  j["added"] = rec.added;
  j["covered_before"] = rec.covered_before;
  j["covered_after"] = rec.covered_after;
  j["nc_ratio"] = rec.nc_ratio;
  j["findings_total"] = rec.findings_total;
  j["pool_size"] = rec.pool_size;
  OrderedJson decisions = OrderedJson::array();
  for (const auto& d : rec.decisions) {
    OrderedJson dj;
    dj["candidate"] = d.id;
    dj["similarity"] = d.similarity;
    dj["kept"] = d.kept;
    dj["rank"] = d.rank ? OrderedJson(*d.rank) : OrderedJson(nullptr);
    dj["degenerate"] = d.degenerate;
    decisions.push_back(std::move(dj));
  }
  j["decisions"] = std::move(decisions);
  OrderedJson outcomes = OrderedJson::array();
  for (const auto& o : rec.outcomes) {
    OrderedJson oj;
    oj["candidate"] = o.candidate;
    oj["rank"] = o.rank;
    oj["similarity"] = o.similarity;
    oj["predicted"] = o.predicted;
    oj["confidence"] = o.confidence;
    oj["popcount"] = o.popcount;
    oj["new_coverage"] = o.new_coverage;
    oj["added_id"] = o.added_id ? OrderedJson(*o.added_id) : OrderedJson(nullptr);
    oj["finding"] = o.finding;
    oj["duplicate_finding"] = o.duplicate_finding;
    outcomes.push_back(std::move(oj));
  }
  j["outcomes"] = std::move(outcomes);
  return j;
}

OrderedJson ReportToJson(const CampaignReport& r) {
  OrderedJson j;
  j["format"] = "nnfuzz-report";
  j["version"] = 1;
  j["status"] = r.complete ? "complete" : "incomplete";
  j["error"] = r.error.empty() ? OrderedJson(nullptr) : OrderedJson(r.error);
  j["config"] = ConfigToJson(r.config);

  OrderedJson model;
  model["classifier"] = r.classifier_name;
  model["neuron_count"] = r.neuron_count;
  j["model"] = std::move(model);

  OrderedJson init;
  init["dataset_size"] = r.init.dataset_size;
  init["pool_size"] = r.init.pool_size;
  init["skipped"] = r.init.skipped;
  init["covered"] = r.init.covered;
  init["nc_ratio"] = r.init.nc_ratio;
  j["init"] = std::move(init);

  OrderedJson summary;
  summary["iterations_run"] = r.iterations.size();
  summary["covered"] = r.final_covered;
  summary["nc_ratio"] = r.final_nc;
  summary["nc_percent"] = FormatPercent(r.final_nc);
  summary["findings"] = r.findings.size();
  summary["duplicate_findings"] = r.duplicate_findings;
  summary["pool_size"] = r.pool_size;
  j["summary"] = std::move(summary);
  j["covered_neurons"] = r.covered_neurons;

  OrderedJson findings = OrderedJson::array();
  for (const auto& f : r.findings) {
    OrderedJson fj;
    fj["index"] = f.index;
    fj["parent_id"] = f.parent_id;
    fj["truth"] = f.truth;
    fj["predicted"] = f.predicted;
    fj["confidence"] = f.confidence;
    fj["iteration"] = f.iteration;
    fj["hash"] = HashToHex(f.hash);
    fj["similarity"] = f.similarity;
    fj["pooled"] = f.pooled;
    findings.push_back(std::move(fj));
  }
  j["findings"] = std::move(findings);

  OrderedJson iterations = OrderedJson::array();
  for (const auto& rec : r.iterations) {
    OrderedJson ij;
    ij["iteration"] = rec.iteration;
    ij["parent_id"] = rec.parent_id;
    ij["generated"] = rec.generated;
    ij["kept"] = rec.kept;
    ij["added"] = rec.added;
    ij["covered_before"] = rec.covered_before;
    ij["covered_after"] = rec.covered_after;
    ij["nc_ratio"] = rec.nc_ratio;
    ij["findings"] = rec.findings_total;
    iterations.push_back(std::move(ij));
  }
  j["iterations"] = std::move(iterations);
  j["wall_time_s"] = r.wall_time_s;
  return j;
}

std::string RenderReport(const CampaignReport& report) {
  return ReportToJson(report).dump(2) + "\n";
}

std::string RenderIterationLine(const IterationRecord& rec) {
  return IterationToJson(rec).dump() + "\n";
}

OrderedJson LoadReportJson(const std::filesystem::path& path) {
  const std::string text = ReadFileBytes(path);
  OrderedJson j;
  try {
    j = OrderedJson::parse(text);
  } catch (const OrderedJson::parse_error& e) {
    throw Error(ErrorCode::kCorruptReport,
                fmt::format("{}: invalid JSON at byte offset {}", path.string(), e.byte));
  }
  if (!j.is_object() || !j.contains("iterations") || !j["iterations"].is_array() ||
      !j.contains("summary") || !j["summary"].is_object()) {
    throw Error(ErrorCode::kCorruptReport,
                path.string() + ": not a campaign report (missing summary/iterations)");
  }
  return j;
}

void WriteReportText(const OrderedJson& report, std::ostream& out) {
  try {
    const auto& s = report.at("summary");
    const auto& init = report.at("init");
    fmt::print(out, "status: {}\n", report.at("status").get<std::string>());
    fmt::print(out, "classifier: {} ({} neurons)\n",
               report.at("model").at("classifier").get<std::string>(),
               report.at("model").at("neuron_count").get<std::size_t>());
    fmt::print(out, "iterations: {}\n", s.at("iterations_run").get<std::size_t>());
    fmt::print(out, "initial_pool: {} (skipped {})\n", init.at("pool_size").get<std::size_t>(),
               init.at("skipped").get<std::size_t>());
    fmt::print(out, "initial_nc: {}%\n", FormatPercent(init.at("nc_ratio").get<double>()));
    fmt::print(out, "final_nc: {}%\n", FormatPercent(s.at("nc_ratio").get<double>()));
    fmt::print(out, "findings: {}\n", s.at("findings").get<std::size_t>());
    fmt::print(out, "pool_size: {}\n", s.at("pool_size").get<std::size_t>());
  } catch (const OrderedJson::exception& e) {
    throw Error(ErrorCode::kCorruptReport, std::string("malformed report: ") + e.what());
  }
}

void WriteReportCsv(const OrderedJson& report, std::ostream& out) {
  out << "iteration,nc_ratio,kept,findings\n";
  try {
    for (const auto& row : report.at("iterations")) {
      fmt::print(out, "{},{:.6f},{},{}\n", row.at("iteration").get<int>(),
                 row.at("nc_ratio").get<double>(), row.at("kept").get<std::size_t>(),
                 row.at("findings").get<std::size_t>());
    }
  } catch (const OrderedJson::exception& e) {
    throw Error(ErrorCode::kCorruptReport, std::string("malformed report: ") + e.what());
  }
}

}  // namespace nnfuzz
