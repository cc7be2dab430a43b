// src/cli/report.cc

// Copyright 2026  The flexslu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "flexslu/cli/report.h"

#include <algorithm>
#include <cstdio>

#include "flexslu/inference/predict.h"
#include "flexslu/joint/trainer.h"

namespace flexslu {

std::optional<double> EvalRow::average() const {
  if (!audio || !asr || !combined) return std::nullopt;
  return (*audio + *asr + *combined) / 3.0;
}

std::string EvalReport::to_table() const {
  std::size_t width = 5;
  for (const auto& r : rows) width = std::max(width, r.model.size());
  auto cell = [](const std::optional<double>& v) {
    char buf[32];
    if (v)
      std::snprintf(buf, sizeof(buf), "%9.2f", 100.0 * *v);
    else
      std::snprintf(buf, sizeof(buf), "%9s", "-");
    return std::string(buf);
  };
  std::string out;
  char head[160];
  std::snprintf(head, sizeof(head), "%-*s %9s %9s %9s %9s %9s\n",
                static_cast<int>(width), "Model", "GT", "Audio", "ASR",
                "Combined", "Average");
  out += head;
  out += std::string(width + 50, '-') + "\n";
  for (const auto& r : rows) {
    std::string name = r.model;
    name.resize(width, ' ');
    out += name + " " + cell(r.gt) + " " + cell(r.audio) + " " + cell(r.asr) +
           " " + cell(r.combined) + " " + cell(r.average()) + "\n";
  }
  return out;
}

nlohmann::json EvalReport::to_json() const {
  auto opt = [](const std::optional<double>& v) -> nlohmann::json {
    if (v) return *v;
    return nullptr;
  };
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows)
    rows_json.push_back({{"model", r.model},
                         {"gt", opt(r.gt)},
                         {"audio", opt(r.audio)},
                         {"asr", opt(r.asr)},
                         {"combined", opt(r.combined)},
                         {"average", opt(r.average())}});
  return {{"rows", rows_json}, {"warnings", warnings}};
}

EvalRow evaluate_row(const std::string& name, const JointModel& model,
                     const EncodedSplit& test, std::vector<std::string>& warnings) {
  EvalRow row;
  row.model = name;
  auto column = [&](InputMode mode, const char* label) -> std::optional<double> {
    auto missing = missing_modality_ids(test, mode);
    if (!missing.empty()) {
      warnings.push_back(name + ": " + label + " column skipped; " +
                         std::to_string(missing.size()) +
                         " utterances lack the needed input (first: " +
                         missing[0] + ")");
      return std::nullopt;
    }
    return evaluate(model, test, mode);
  };
  row.gt = column(InputMode::kTextGt, "GT");
  row.audio = column(InputMode::kAudio, "Audio");
  row.asr = column(InputMode::kTextAsr, "ASR");
  row.combined = column(InputMode::kCombined, "Combined");
  return row;
}

}  // namespace flexslu
