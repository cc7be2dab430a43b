// include/flexslu/cli/commands.h

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

#ifndef FLEXSLU_CLI_COMMANDS_H_
#define FLEXSLU_CLI_COMMANDS_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "flexslu/cli/checkpoint.h"
#include "flexslu/cli/config.h"
#include "flexslu/cli/report.h"
#include "flexslu/data/utterance.h"
#include "flexslu/data/vocabulary.h"

namespace flexslu {

// Exit codes shared by every command.
constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;

// Independent generator per purpose so that, e.g., changing the model size
// does not perturb the data.
enum class RngStream : std::uint64_t {
  kData = 1,
  kCorruption = 2,
  kModelInit = 3,
  kTraining = 4,
};
Rng make_rng(std::uint64_t seed, RngStream stream);

struct PreparedData {
  DatasetSplit train;
  DatasetSplit val;
  std::optional<DatasetSplit> test;
  Vocabulary vocab;
  std::vector<std::string> rejected_empty;
};

// Loads or generates the splits, fills missing ASR transcripts by corruption
// when enabled, and builds the vocabulary from training transcripts.
PreparedData prepare_data(const RunConfig& config);

struct TrainOutcome {
  Checkpoint checkpoint;
  std::optional<EvalReport> test_report;
  std::vector<std::string> rejected_empty;
};

// Everything cmd_train does short of writing files.
TrainOutcome train_from_config(const RunConfig& config);

struct TrainOptions {
  std::filesystem::path config;
  std::optional<std::string> recipe;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out;
  bool force = false;
};

struct EvalOptions {
  std::vector<std::filesystem::path> checkpoints;
  std::filesystem::path test;
  std::optional<std::filesystem::path> out;  // machine-readable report
};

struct PredictOptions {
  std::filesystem::path checkpoint;
  std::filesystem::path input;
  std::string mode = "combined";
  std::optional<std::filesystem::path> out;  // default: `out` stream
};

struct SynthOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::uint64_t> seed;
  std::optional<int> n_classes;
  std::optional<int> n_per_class;
  std::optional<int> feature_dim;
  std::optional<double> target_wer;
  std::filesystem::path out;
  bool force = false;
};

// Each command reports errors on `err` and returns an exit code.
int cmd_train(const TrainOptions& options, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalOptions& options, std::ostream& out, std::ostream& err);
int cmd_predict(const PredictOptions& options, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthOptions& options, std::ostream& out, std::ostream& err);

}  // namespace flexslu

#endif  // FLEXSLU_CLI_COMMANDS_H_
