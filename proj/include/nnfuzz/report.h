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

#ifndef NNFUZZ_REPORT_H_
#define NNFUZZ_REPORT_H_

#include <filesystem>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "nnfuzz/campaign.h"

namespace nnfuzz {

using OrderedJson = nlohmann::ordered_json;

// Field order is fixed so identical campaigns serialize to identical bytes.
OrderedJson ConfigToJson(const CampaignConfig& cfg);
OrderedJson IterationToJson(const IterationRecord& rec);
OrderedJson ReportToJson(const CampaignReport& report);

// Pretty-printed report.json (trailing newline).
std::string RenderReport(const CampaignReport& report);
// One compact line for report.jsonl (trailing newline).
std::string RenderIterationLine(const IterationRecord& rec);

// Parses a report file; throws CorruptReport with the byte offset of a
// syntax error, IoError if unreadable.
OrderedJson LoadReportJson(const std::filesystem::path& path);

void WriteReportText(const OrderedJson& report, std::ostream& out);
// Header plus one row per iteration: iteration,nc_ratio,kept,findings.
void WriteReportCsv(const OrderedJson& report, std::ostream& out);

}  // namespace nnfuzz

#endif  // NNFUZZ_REPORT_H_
