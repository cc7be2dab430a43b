// src/joint/joint_model.cc

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

#include "flexslu/joint/joint_model.h"

#include <string>

namespace flexslu {

RecipeTraits recipe_traits(Recipe recipe) {
  switch (recipe) {
    case Recipe::kTextSpeech:
      return {TextData::kGroundTruth, false, false, false};
    case Recipe::kAts1:
      return {TextData::kGroundTruthAndAsr, true, false, false};
    case Recipe::kAts2:
      return {TextData::kGroundTruth, false, true, true};
  }
  throw Error("unknown recipe");
}

Recipe parse_recipe(std::string_view name) {
  if (name == "text-speech") return Recipe::kTextSpeech;
  if (name == "ats1") return Recipe::kAts1;
  if (name == "ats2") return Recipe::kAts2;
  throw InputError("unknown recipe '" + std::string(name) +
                   "' (expected text-speech, ats1 or ats2)");
}

std::string_view recipe_name(Recipe recipe) {
  switch (recipe) {
    case Recipe::kTextSpeech: return "text-speech";
    case Recipe::kAts1: return "ats1";
    case Recipe::kAts2: return "ats2";
  }
  return "?";
}

namespace {

void check_dims(const AcousticConfig& a, const TextConfig& t, int num_classes) {
  if (a.embed_dim != t.embed_dim)
    throw InputError("acoustic embed_dim " + std::to_string(a.embed_dim) +
                     " differs from text embed_dim " +
                     std::to_string(t.embed_dim));
  if (num_classes < 2) throw InputError("joint model needs >= 2 classes");
}

}  // namespace

JointModel::JointModel(const AcousticConfig& acoustic_config,
                       const TextConfig& text_config, int num_classes)
    : acoustic((check_dims(acoustic_config, text_config, num_classes),
                acoustic_config)),
      text(text_config),
      classifier("classifier", acoustic_config.embed_dim, num_classes) {}

JointModel::JointModel(const AcousticConfig& acoustic_config,
                       const TextConfig& text_config, int num_classes, Rng& rng)
    : JointModel(acoustic_config, text_config, num_classes) {
  acoustic.init(rng);
  text.init(rng);
  classifier.init(rng);
}

Vector JointModel::classify(const Vector& embedding) const {
  if (embedding.size() != embed_dim())
    throw InputError("classify: embedding has length " +
                     std::to_string(embedding.size()) + ", expected " +
                     std::to_string(embed_dim()));
  return classifier.forward(embedding);
}

ParameterRefs JointModel::parameters() {
  ParameterRefs out = acoustic.parameters();
  auto t = text.parameters();
  out.insert(out.end(), t.begin(), t.end());
  classifier.collect(out);
  return out;
}

ConstParameterRefs JointModel::parameters() const {
  ConstParameterRefs out = acoustic.parameters();
  auto t = text.parameters();
  out.insert(out.end(), t.begin(), t.end());
  classifier.collect(out);
  return out;
}

void JointModel::zero_grad() {
  for (Parameter* p : parameters()) p->zero_grad();
}

void JointModel::apply_recipe_freezing(Recipe recipe) {
  const RecipeTraits traits = recipe_traits(recipe);
  acoustic.set_trainable(AcousticSubmodule::kPhoneme, !traits.freeze_phoneme);
  acoustic.set_trainable(AcousticSubmodule::kWord, true);
  acoustic.set_trainable(AcousticSubmodule::kProjection, true);
  text.set_trainable(!traits.freeze_text);
  classifier_trainable = true;
}

std::vector<ParameterGroup> JointModel::trainable_groups(double lr_acoustic,
                                                         double lr_text) {
  ParameterGroup a{lr_acoustic, acoustic.trainable_parameters()};
  if (classifier_trainable) classifier.collect(a.params);
  ParameterGroup t{lr_text, {}};
  if (text.trainable()) t.params = text.parameters();
  return {std::move(a), std::move(t)};
}

TensorBundle JointModel::classifier_bundle() const {
  ConstParameterRefs refs;
  classifier.collect(refs);
  return export_parameters(refs);
}

void JointModel::load_classifier(const TensorBundle& bundle) {
  ParameterRefs refs;
  classifier.collect(refs);
  import_parameters(refs, bundle, false);
}

}  // namespace flexslu
