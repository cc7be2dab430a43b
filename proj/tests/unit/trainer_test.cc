// tests/unit/trainer_test.cc

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

#include <cmath>

#include <gtest/gtest.h>

#include "support/tiny_model.h"

namespace flexslu {
namespace {

using namespace flexslu::testing;

struct Fixture {
  Rng rng{21};
  JointModel model = tiny_model(rng, 3);
  EncodedSplit train = random_split(18, 3, 2, 8, rng);
  EncodedSplit val = random_split(6, 3, 2, 8, rng);
};

OptimizerConfig small_optimizer(double lr = 1e-2) {
  OptimizerConfig o;
  o.lr_acoustic = lr;
  o.lr_text = lr;
  o.batch_size = 4;
  o.max_epochs = 3;
  return o;
}

TEST(TrainEpoch, ZeroLearningRatesLeaveParameters) {
  Fixture f;
  auto before = snapshot(std::as_const(f.model).parameters());
  TripletSampler sampler(f.train.intents());
  Adam adam;
  EpochMetrics m = train_epoch(f.model, f.train, sampler, TextData::kGroundTruthAndAsr,
                               {}, small_optimizer(0.0), adam, f.rng);
  EXPECT_TRUE(bitwise_equal(before, std::as_const(f.model).parameters()));
  EXPECT_GT(m.losses.acoustic_ce, 0.0);
  EXPECT_GT(m.losses.text_ce, 0.0);
  EXPECT_NEAR(m.total_loss, combine_losses(m.losses, {}), 1e-12);
}

TEST(TrainEpoch, DeterministicGivenSeed) {
  Fixture a, b;
  TripletSampler sampler(a.train.intents());
  Adam adam_a, adam_b;
  Rng ra(5), rb(5);
  for (int e = 0; e < 3; ++e) {
    EpochMetrics x = train_epoch(a.model, a.train, sampler, TextData::kGroundTruth, {},
                                 small_optimizer(), adam_a, ra);
    EpochMetrics y = train_epoch(b.model, b.train, sampler, TextData::kGroundTruth, {},
                                 small_optimizer(), adam_b, rb);
    EXPECT_EQ(x.total_loss, y.total_loss);
    EXPECT_EQ(x.losses.triplet, y.losses.triplet);
  }
  EXPECT_TRUE(bitwise_equal(snapshot(std::as_const(a.model).parameters()),
                            std::as_const(b.model).parameters()));
}

// Five optimizer steps (batch size 4 over 18 examples) under a recipe's
// freezing.
void five_steps(Fixture& f, Recipe recipe) {
  f.model.apply_recipe_freezing(recipe);
  TripletSampler sampler(f.train.intents());
  Adam adam;
  train_epoch(f.model, f.train, sampler, recipe_traits(recipe).joint_text_data, {},
              small_optimizer(), adam, f.rng);
}

TEST(FreezeInvariance, Ats1KeepsPhoneme) {
  Fixture f;
  const JointModel& c = f.model;
  auto phon = snapshot(c.acoustic.parameters(AcousticSubmodule::kPhoneme));
  auto text = snapshot(c.text.parameters());
  five_steps(f, Recipe::kAts1);
  EXPECT_TRUE(bitwise_equal(phon, c.acoustic.parameters(AcousticSubmodule::kPhoneme)));
  EXPECT_TRUE(every_tensor_changed(text, c.text.parameters()));
}

TEST(FreezeInvariance, Ats2KeepsText) {
  Fixture f;
  const JointModel& c = f.model;
  auto text = snapshot(c.text.parameters());
  auto phon = snapshot(c.acoustic.parameters(AcousticSubmodule::kPhoneme));
  five_steps(f, Recipe::kAts2);
  EXPECT_TRUE(bitwise_equal(text, c.text.parameters()));
  EXPECT_TRUE(every_tensor_changed(phon, c.acoustic.parameters(AcousticSubmodule::kPhoneme)));
}

TEST(FreezeInvariance, TextSpeechChangesEverything) {
  Fixture f;
  const JointModel& c = f.model;
  auto all = snapshot(c.parameters());
  five_steps(f, Recipe::kTextSpeech);
  EXPECT_TRUE(every_tensor_changed(all, c.parameters()));
}

TEST(Evaluate, PerfectModel) {
  Fixture f;
  for (auto& u : f.val.items) u.intent = 1;
  f.model.classifier.weight.value.setZero();
  f.model.classifier.bias.value << 0, 1, 0;
  for (InputMode mode : {InputMode::kAudio, InputMode::kTextGt, InputMode::kTextAsr,
                         InputMode::kCombined, InputMode::kCombinedGt})
    EXPECT_EQ(evaluate(f.model, f.val, mode), 1.0);
}

TEST(Evaluate, UniformLogitsPickClassZero) {
  Rng rng(3);
  JointModel m = tiny_model(rng, 4);
  m.classifier.weight.value.setZero();
  m.classifier.bias.value.setZero();
  EncodedSplit s = random_split(12, 4, 2, 8, rng);
  EXPECT_DOUBLE_EQ(evaluate(m, s, InputMode::kAudio), 0.25);
  EXPECT_DOUBLE_EQ(evaluate(m, s, InputMode::kCombined), 0.25);
}

TEST(Evaluate, CombinedMatchesHandFusion) {
  Rng rng(4);
  JointModel m = tiny_model(rng, 3);
  m.classifier.weight.value *= 4.0;  // spread the logits
  EncodedSplit s = random_split(5, 3, 2, 8, rng);
  int correct = 0;
  for (const auto& u : s.items) {
    Vector la = m.classify(m.acoustic.forward(*u.features).embedding);
    Vector lt = m.classify(m.text.forward(*u.asr_ids));
    double za = 0, zt = 0;
    for (int k = 0; k < 3; ++k) za += std::exp(la(k)), zt += std::exp(lt(k));
    int best = 0;
    double best_p = -1;
    for (int k = 0; k < 3; ++k) {
      double p = 0.5 * (std::exp(la(k)) / za + std::exp(lt(k)) / zt);
      if (p > best_p) best_p = p, best = k;
    }
    correct += best == *u.intent;
  }
  EXPECT_DOUBLE_EQ(evaluate(m, s, InputMode::kCombined), correct / 5.0);
}

TEST(Evaluate, Errors) {
  Fixture f;
  EXPECT_THROW(evaluate(f.model, EncodedSplit{}, InputMode::kAudio), InputError);
  f.val.items[2].asr_ids.reset();
  try {
    evaluate(f.model, f.val, InputMode::kTextAsr);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find(f.val.items[2].id), std::string::npos);
  }
  EXPECT_NO_THROW(evaluate(f.model, f.val, InputMode::kTextGt));
}

EpochMetrics scored(int epoch, double audio, double text) {
  EpochMetrics m;
  m.epoch = epoch;
  m.audio_val_acc = audio;
  m.text_val_acc = text;
  return m;
}

TEST(Selection, ScoreAndArgmax) {
  EXPECT_DOUBLE_EQ(selection_score(scored(1, 0.8, 0.6)), 0.7);
  EXPECT_DOUBLE_EQ(selection_score(scored(1, 1.0, 1.0)), 1.0);
  std::vector<EpochMetrics> h = {scored(1, 0.5, 0.5), scored(2, 0.9, 0.7),
                                 scored(3, 0.7, 0.9), scored(4, 0.6, 0.6)};
  EXPECT_EQ(select_best_epoch(h), 1u);
  std::vector<EpochMetrics> empty;
  EXPECT_ANY_THROW(select_best_epoch(empty));
}

// Returns a scripted history's accuracies in place of real validation.
RecipeHooks scripted(const std::vector<std::pair<double, double>>& script,
                     std::vector<std::vector<Matrix>>* snapshots) {
  RecipeHooks h;
  h.override_metrics = [script](EpochMetrics& m) {
    m.audio_val_acc = script[m.epoch - 1].first;
    m.text_val_acc = script[m.epoch - 1].second;
  };
  h.on_epoch_end = [snapshots](const EpochMetrics&, const JointModel& model) {
    snapshots->push_back(snapshot(model.parameters()));
  };
  return h;
}

TrainingConfig short_config(Recipe recipe, int epochs) {
  TrainingConfig c;
  c.recipe = recipe;
  c.optimizer = small_optimizer();
  c.optimizer.max_epochs = epochs;
  c.adapt.epochs = 2;
  return c;
}

TEST(RunRecipe, SelectsScriptedArgmax) {
  Fixture f;
  const std::vector<std::pair<double, double>> script = {
      {0.1, 0.2}, {0.3, 0.2}, {0.5, 0.4}, {0.4, 0.6}, {0.9, 0.5},
      {0.6, 0.9}, {0.8, 0.7}, {0.2, 0.3}, {0.5, 0.5}, {0.7, 0.6}};
  // Means: .15 .25 .45 .5 .7 .75 .75 .25 .5 .65 -> epoch 6, tie with 7.
  std::vector<std::vector<Matrix>> snaps;
  RecipeResult r = run_recipe(f.model, f.train, f.val, short_config(Recipe::kTextSpeech, 10),
                              f.rng, scripted(script, &snaps));
  ASSERT_EQ(r.history.size(), 10u);
  EXPECT_EQ(r.selected_epoch, 6);
  EXPECT_EQ(r.history[5].epoch, 6);
  EXPECT_TRUE(bitwise_equal(snaps[5], std::as_const(r.best).parameters()));
}

TEST(RunRecipe, TieGoesToEarliestEpoch) {
  Fixture f;
  const std::vector<std::pair<double, double>> script = {
      {0.5, 0.5}, {0.9, 0.7}, {0.6, 0.6}, {0.7, 0.9}};
  std::vector<std::vector<Matrix>> snaps;
  RecipeResult r = run_recipe(f.model, f.train, f.val, short_config(Recipe::kTextSpeech, 4),
                              f.rng, scripted(script, &snaps));
  EXPECT_EQ(r.selected_epoch, 2);
  EXPECT_EQ(static_cast<std::size_t>(r.selected_epoch - 1), select_best_epoch(r.history));
}

TEST(RunRecipe, Ats1KeepsInitialPhoneme) {
  Fixture f;
  RecipeResult r = run_recipe(f.model, f.train, f.val, short_config(Recipe::kAts1, 2), f.rng);
  const JointModel& init = f.model;
  const JointModel& best = r.best;
  EXPECT_TRUE(bitwise_equal(snapshot(init.acoustic.parameters(AcousticSubmodule::kPhoneme)),
                            best.acoustic.parameters(AcousticSubmodule::kPhoneme)));
  EXPECT_FALSE(bitwise_equal(snapshot(init.acoustic.parameters(AcousticSubmodule::kWord)),
                             best.acoustic.parameters(AcousticSubmodule::kWord)));
  EXPECT_FALSE(r.adaptation.has_value());
}

TEST(RunRecipe, Ats2KeepsAdaptedText) {
  Fixture f;
  std::vector<Matrix> adapted_text;
  TensorBundle adapted_classifier;
  RecipeHooks hooks;
  hooks.on_adapted = [&](const JointModel& m) {
    adapted_text = snapshot(m.text.parameters());
    adapted_classifier = m.classifier_bundle();
  };
  RecipeResult r = run_recipe(f.model, f.train, f.val, short_config(Recipe::kAts2, 2),
                              f.rng, hooks);
  ASSERT_TRUE(r.adaptation.has_value());
  const JointModel& best = r.best;
  EXPECT_TRUE(bitwise_equal(adapted_text, best.text.parameters()));
  // Adaptation did move the encoder, and its head warm-started the classifier.
  EXPECT_FALSE(bitwise_equal(adapted_text, std::as_const(f.model).text.parameters()));
  ParameterRefs head;
  r.adaptation->classifier.collect(head);
  EXPECT_TRUE(export_parameters({head.begin(), head.end()}) == adapted_classifier);
  EXPECT_FALSE(r.best.classifier_bundle() == adapted_classifier);
}

TEST(RunRecipe, MissingAsrFailsBeforeTraining) {
  Fixture f;
  f.train.items[3].asr_ids.reset();
  int epochs = 0;
  RecipeHooks hooks;
  hooks.on_epoch_end = [&](const EpochMetrics&, const JointModel&) { ++epochs; };
  EXPECT_THROW(run_recipe(f.model, f.train, f.val, short_config(Recipe::kAts1, 2), f.rng,
                          hooks),
               InputError);
  EXPECT_THROW(check_recipe_data(Recipe::kAts2, f.train), InputError);
  EXPECT_NO_THROW(check_recipe_data(Recipe::kTextSpeech, f.train));
  EXPECT_EQ(epochs, 0);
}

}  // namespace
}  // namespace flexslu
