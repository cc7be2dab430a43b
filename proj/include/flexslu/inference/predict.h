// include/flexslu/inference/predict.h

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

#ifndef FLEXSLU_INFERENCE_PREDICT_H_
#define FLEXSLU_INFERENCE_PREDICT_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flexslu/common.h"
#include "flexslu/data/encoded_split.h"
#include "flexslu/joint/joint_model.h"

namespace flexslu {

enum class PredictionMode { kAudio, kText, kCombined };

// How utterances of a split are presented to the model.
enum class InputMode {
  kAudio,       // features only
  kTextGt,      // ground-truth transcript only
  kTextAsr,     // ASR transcript only
  kCombined,    // features + ASR transcript
  kCombinedGt,  // features + ground-truth transcript
};

// "audio", "text-gt", "text-asr", "combined", "combined-gt".
InputMode parse_input_mode(std::string_view name);
std::string_view input_mode_name(InputMode mode);
std::string_view prediction_mode_name(PredictionMode mode);

struct Prediction {
  Vector probs;
  int label = 0;  // argmax of probs, lowest index on ties
  PredictionMode mode = PredictionMode::kAudio;
};

// Max-subtracted exponential normalization. Throws InputError on
// non-finite logits.
Vector softmax(const Vector& logits);

// Element-wise mean of two distributions of equal length.
Vector average_probabilities(const Vector& a, const Vector& b);

// Either input may be null; both null throws InputError("no input modality").
// With both, the branch probabilities are averaged with equal weight.
Prediction predict(const JointModel& model, const Matrix* audio,
                   const std::vector<int>* transcript);

struct BatchPrediction {
  std::vector<std::string> ids;
  std::vector<Prediction> predictions;
  // Exact-match rate; absent unless every utterance carries an intent.
  std::optional<double> accuracy;
};

// Throws InputError for an empty split or when some utterance lacks a
// modality the mode needs (the message lists the offending ids).
BatchPrediction batch_predict(const JointModel& model, const EncodedSplit& split,
                              InputMode mode);

// Ids of utterances missing an input that `mode` needs.
std::vector<std::string> missing_modality_ids(const EncodedSplit& split,
                                              InputMode mode);

}  // namespace flexslu

#endif  // FLEXSLU_INFERENCE_PREDICT_H_
