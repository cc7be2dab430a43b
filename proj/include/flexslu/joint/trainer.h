// include/flexslu/joint/trainer.h

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

#ifndef FLEXSLU_JOINT_TRAINER_H_
#define FLEXSLU_JOINT_TRAINER_H_

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "flexslu/common.h"
#include "flexslu/data/encoded_split.h"
#include "flexslu/data/triplet.h"
#include "flexslu/inference/predict.h"
#include "flexslu/joint/joint_model.h"
#include "flexslu/joint/losses.h"
#include "flexslu/nn/adam.h"
#include "flexslu/text/domain_adapt.h"

namespace flexslu {

struct OptimizerConfig {
  double lr_acoustic = 1e-3;  // acoustic encoder and shared classifier
  double lr_text = 1e-3;      // text encoder
  int batch_size = 16;
  int max_epochs = 30;

  void validate() const;
};

struct EpochMetrics {
  int epoch = 0;
  double audio_val_acc = 0.0;
  double text_val_acc = 0.0;  // on ground-truth transcripts
  LossComponents losses;
  double total_loss = 0.0;
};

// One shuffled pass over `train` in minibatches, one freshly sampled triplet
// per example, one optimizer step per batch on the trainable groups. Returns
// example-weighted mean losses; accuracies are left at zero.
EpochMetrics train_epoch(JointModel& model, const EncodedSplit& train,
                         const TripletSampler& sampler, TextData text_data,
                         const LossWeights& weights,
                         const OptimizerConfig& optimizer, Adam& adam, Rng& rng);

// Exact-match accuracy of argmax predictions. Throws InputError for an empty
// split or missing modalities (listing the ids).
double evaluate(const JointModel& model, const EncodedSplit& split,
                InputMode mode);

// Mean of audio and text validation accuracy.
double selection_score(const EpochMetrics& metrics);

// Index of the highest selection_score; the earliest wins ties. Throws on an
// empty history.
std::size_t select_best_epoch(std::span<const EpochMetrics> history);

struct TrainingConfig {
  Recipe recipe = Recipe::kTextSpeech;
  LossWeights loss;
  OptimizerConfig optimizer;
  DomainAdaptOptions adapt;
};

struct RecipeHooks {
  // Replaces the validation accuracies computed for an epoch. Used to drive
  // model selection from a scripted history.
  std::function<void(EpochMetrics&)> override_metrics;
  // Called after each epoch's metrics are final.
  std::function<void(const EpochMetrics&, const JointModel&)> on_epoch_end;
  // Called once after domain adaptation (ATS2 only).
  std::function<void(const JointModel&)> on_adapted;
};

struct RecipeResult {
  JointModel best;
  std::vector<EpochMetrics> history;
  int selected_epoch = 0;  // 1-based, matches EpochMetrics::epoch
  std::optional<DomainAdaptResult> adaptation;
};

// Runs one of the three training recipes from `initial` and returns the
// epoch checkpoint with the best selection score on `val`.
RecipeResult run_recipe(const JointModel& initial, const EncodedSplit& train,
                        const EncodedSplit& val, const TrainingConfig& config,
                        Rng& rng, const RecipeHooks& hooks = {});

// Throws InputError if `train` lacks something the recipe needs.
void check_recipe_data(Recipe recipe, const EncodedSplit& train);

}  // namespace flexslu

#endif  // FLEXSLU_JOINT_TRAINER_H_
