// src/joint/trainer.cc

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

#include "flexslu/joint/trainer.h"

#include <algorithm>
#include <numeric>
#include <string>

namespace flexslu {

void OptimizerConfig::validate() const {
  if (!(lr_acoustic >= 0.0)) throw InputError("optimizer.lr_a must be >= 0");
  if (!(lr_text >= 0.0)) throw InputError("optimizer.lr_t must be >= 0");
  if (batch_size < 1) throw InputError("optimizer.batch_size must be >= 1");
  if (max_epochs < 1) throw InputError("optimizer.max_epochs must be >= 1");
}

EpochMetrics train_epoch(JointModel& model, const EncodedSplit& train,
                         const TripletSampler& sampler, TextData text_data,
                         const LossWeights& weights,
                         const OptimizerConfig& optimizer, Adam& adam,
                         Rng& rng) {
  if (train.items.empty()) throw InputError("train_epoch: empty training split");
  std::vector<std::size_t> order(train.items.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  EpochMetrics m;
  const auto batch_size = static_cast<std::size_t>(optimizer.batch_size);
  for (std::size_t start = 0; start < order.size(); start += batch_size) {
    const std::size_t end = std::min(order.size(), start + batch_size);
    Batch batch;
    for (std::size_t k = start; k < end; ++k) {
      TripletSample t = sampler.sample(order[k], rng);
      batch.push_back({&train.items[t.anchor], &train.items[t.positive],
                       &train.items[t.negative]});
    }
    LossResult r = total_loss_and_backward(model, batch, weights, text_data);
    const double n = static_cast<double>(batch.size());
    m.losses.acoustic_ce += r.components.acoustic_ce * n;
    m.losses.text_ce += r.components.text_ce * n;
    m.losses.triplet += r.components.triplet * n;
    auto groups = model.trainable_groups(optimizer.lr_acoustic, optimizer.lr_text);
    adam.step(groups);
  }
  const double total = static_cast<double>(order.size());
  m.losses.acoustic_ce /= total;
  m.losses.text_ce /= total;
  m.losses.triplet /= total;
  m.total_loss = combine_losses(m.losses, weights);
  return m;
}

double evaluate(const JointModel& model, const EncodedSplit& split,
                InputMode mode) {
  if (split.items.empty()) throw InputError("evaluate: empty split");
  auto missing = missing_modality_ids(split, mode);
  if (!missing.empty()) {
    std::string msg = "evaluate: mode '" + std::string(input_mode_name(mode)) +
                      "' needs inputs missing from:";
    for (const auto& id : missing) msg += " " + id;
    throw InputError(msg);
  }
  auto audio_probs = [&](const EncodedUtterance& u) {
    return softmax(model.classify(model.acoustic.forward(*u.features).embedding));
  };
  auto text_probs = [&](const std::vector<int>& ids) {
    return softmax(model.classify(model.text.forward(ids)));
  };
  std::size_t correct = 0;
  for (const auto& u : split.items) {
    if (!u.intent) throw InputError("evaluate: utterance '" + u.id + "' is unlabeled");
    Vector probs;
    switch (mode) {
      case InputMode::kAudio: probs = audio_probs(u); break;
      case InputMode::kTextGt: probs = text_probs(*u.gt_ids); break;
      case InputMode::kTextAsr: probs = text_probs(*u.asr_ids); break;
      case InputMode::kCombined:
        probs = average_probabilities(audio_probs(u), text_probs(*u.asr_ids));
        break;
      case InputMode::kCombinedGt:
        probs = average_probabilities(audio_probs(u), text_probs(*u.gt_ids));
        break;
    }
    if (argmax(probs) == *u.intent) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(split.items.size());
}

double selection_score(const EpochMetrics& metrics) {
  return (metrics.audio_val_acc + metrics.text_val_acc) / 2.0;
}

std::size_t select_best_epoch(std::span<const EpochMetrics> history) {
  if (history.empty()) throw Error("select_best_epoch: empty history");
  std::size_t best = 0;
  for (std::size_t i = 1; i < history.size(); ++i)
    if (selection_score(history[i]) > selection_score(history[best])) best = i;
  return best;
}

void check_recipe_data(Recipe recipe, const EncodedSplit& train) {
  if (train.items.empty()) throw InputError("training split is empty");
  const RecipeTraits traits = recipe_traits(recipe);
  if (traits.joint_text_data == TextData::kGroundTruthAndAsr ||
      traits.domain_adapt) {
    std::vector<std::string> missing;
    for (const auto& u : train.items)
      if (!u.asr_ids) missing.push_back(u.id);
    if (!missing.empty())
      throw InputError("recipe '" + std::string(recipe_name(recipe)) +
                       "' needs ASR transcripts; " +
                       std::to_string(missing.size()) +
                       " training utterances lack one (first: " + missing[0] +
                       ")");
  }
}

RecipeResult run_recipe(const JointModel& initial, const EncodedSplit& train,
                        const EncodedSplit& val, const TrainingConfig& config,
                        Rng& rng, const RecipeHooks& hooks) {
  config.optimizer.validate();
  config.loss.validate();
  check_recipe_data(config.recipe, train);
  if (val.items.empty()) throw InputError("validation split is empty");
  const RecipeTraits traits = recipe_traits(config.recipe);

  JointModel model = initial;
  std::optional<DomainAdaptResult> adaptation;
  if (traits.domain_adapt) {
    std::vector<LabeledTranscript> examples;
    for (const auto& u : train.items) {
      examples.push_back({*u.gt_ids, *u.intent});
      examples.push_back({*u.asr_ids, *u.intent});
    }
    model.text.set_trainable(true);
    adaptation = domain_adapt(model.text, examples, model.num_classes(),
                              config.adapt, rng);
    ParameterRefs head;
    adaptation->classifier.collect(head);
    model.load_classifier(export_parameters({head.begin(), head.end()}));
    if (hooks.on_adapted) hooks.on_adapted(model);
  }
  model.apply_recipe_freezing(config.recipe);

  const TripletSampler sampler(train.intents());
  Adam adam;
  RecipeResult result{model, {}, 0, std::move(adaptation)};
  double best_score = -1.0;
  for (int epoch = 1; epoch <= config.optimizer.max_epochs; ++epoch) {
    EpochMetrics m = train_epoch(model, train, sampler, traits.joint_text_data,
                                 config.loss, config.optimizer, adam, rng);
    m.epoch = epoch;
    m.audio_val_acc = evaluate(model, val, InputMode::kAudio);
    m.text_val_acc = evaluate(model, val, InputMode::kTextGt);
    if (hooks.override_metrics) hooks.override_metrics(m);
    if (hooks.on_epoch_end) hooks.on_epoch_end(m, model);
    result.history.push_back(m);
    if (selection_score(m) > best_score) {
      best_score = selection_score(m);
      result.best = model;
      result.selected_epoch = epoch;
    }
  }
  return result;
}

}  // namespace flexslu
