// include/flexslu/joint/joint_model.h

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

#ifndef FLEXSLU_JOINT_JOINT_MODEL_H_
#define FLEXSLU_JOINT_JOINT_MODEL_H_

#include <string_view>
#include <vector>

#include "flexslu/acoustic/acoustic_encoder.h"
#include "flexslu/nn/adam.h"
#include "flexslu/nn/layers.h"
#include "flexslu/text/text_encoder.h"

namespace flexslu {

// Which transcripts feed the text branch during joint training.
enum class TextData { kGroundTruth, kGroundTruthAndAsr };

enum class Recipe { kTextSpeech, kAts1, kAts2 };

struct RecipeTraits {
  TextData joint_text_data;
  bool freeze_phoneme;
  bool freeze_text;    // after domain adaptation
  bool domain_adapt;   // adapt the text encoder on GT+ASR first
};

RecipeTraits recipe_traits(Recipe recipe);
// "text-speech", "ats1", "ats2".
Recipe parse_recipe(std::string_view name);
std::string_view recipe_name(Recipe recipe);

// Acoustic and text encoders projecting into one embedding space, and the
// single classifier both branches share.
struct JointModel {
  JointModel(const AcousticConfig& acoustic_config,
             const TextConfig& text_config, int num_classes);
  JointModel(const AcousticConfig& acoustic_config,
             const TextConfig& text_config, int num_classes, Rng& rng);

  // logits = W e + b; throws InputError if e is not embed_dim long.
  Vector classify(const Vector& embedding) const;

  int num_classes() const { return classifier.out_dim(); }
  int embed_dim() const { return classifier.in_dim(); }

  ParameterRefs parameters();
  ConstParameterRefs parameters() const;
  void zero_grad();

  // Sets trainability of every submodule as the recipe prescribes for joint
  // training.
  void apply_recipe_freezing(Recipe recipe);

  // {acoustic submodules + classifier} at lr_acoustic, {text encoder} at
  // lr_text; frozen parts are left out.
  std::vector<ParameterGroup> trainable_groups(double lr_acoustic,
                                               double lr_text);

  TensorBundle classifier_bundle() const;
  void load_classifier(const TensorBundle& bundle);

  AcousticEncoder acoustic;
  TextEncoder text;
  Linear classifier;
  bool classifier_trainable = true;
};

}  // namespace flexslu

#endif  // FLEXSLU_JOINT_JOINT_MODEL_H_
