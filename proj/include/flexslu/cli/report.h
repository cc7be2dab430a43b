// include/flexslu/cli/report.h

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

#ifndef FLEXSLU_CLI_REPORT_H_
#define FLEXSLU_CLI_REPORT_H_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flexslu/data/encoded_split.h"
#include "flexslu/joint/joint_model.h"

namespace flexslu {

// Accuracies in [0, 1]; a column is empty when the test data lacks the
// modality it needs.
struct EvalRow {
  std::string model;
  std::optional<double> gt;
  std::optional<double> audio;
  std::optional<double> asr;
  std::optional<double> combined;

  // Mean of audio, asr and combined; empty if any of them is.
  std::optional<double> average() const;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  std::vector<std::string> warnings;

  // Aligned table in percent, "-" for missing columns.
  std::string to_table() const;
  // {"rows": [{"model", "gt", "audio", "asr", "combined", "average"}],
  //  "warnings": [...]}, null for missing columns.
  nlohmann::json to_json() const;
};

// Fills every column the test split supports; appends a warning for each
// column it has to leave empty.
EvalRow evaluate_row(const std::string& name, const JointModel& model,
                     const EncodedSplit& test, std::vector<std::string>& warnings);

}  // namespace flexslu

#endif  // FLEXSLU_CLI_REPORT_H_
