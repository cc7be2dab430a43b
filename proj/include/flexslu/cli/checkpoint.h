// include/flexslu/cli/checkpoint.h

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

#ifndef FLEXSLU_CLI_CHECKPOINT_H_
#define FLEXSLU_CLI_CHECKPOINT_H_

#include <filesystem>
#include <string>
#include <vector>

#include "flexslu/data/vocabulary.h"
#include "flexslu/joint/joint_model.h"
#include "flexslu/joint/trainer.h"

namespace flexslu {

// A trained system: weights plus everything needed to run it on raw records.
//
// Directory layout:
//   acoustic.bundle, text.bundle, classifier.bundle   tensor bundles
//   vocab.txt, labels.txt                              one entry per line
//   metadata.json   {recipe, seed, acoustic, text, selected_epoch, history}
//   history.jsonl   one EpochMetrics record per line
struct Checkpoint {
  JointModel model;
  Vocabulary vocab;
  std::vector<std::string> labels;
  Recipe recipe = Recipe::kTextSpeech;
  std::uint64_t seed = 0;
  int selected_epoch = 0;
  std::vector<EpochMetrics> history;
};

// Serialized metric history; one JSON object per line, doubles written so
// they parse back exactly.
std::string history_to_jsonl(const std::vector<EpochMetrics>& history);

// Writes into a sibling temporary directory, then renames into place. An
// existing non-empty `dir` is an InputError unless `force`, in which case it
// is replaced. `extra_files` (name -> contents) are written alongside.
void save_checkpoint(
    const Checkpoint& ckpt, const std::filesystem::path& dir, bool force,
    const std::vector<std::pair<std::string, std::string>>& extra_files = {});

Checkpoint load_checkpoint(const std::filesystem::path& dir);

}  // namespace flexslu

#endif  // FLEXSLU_CLI_CHECKPOINT_H_
