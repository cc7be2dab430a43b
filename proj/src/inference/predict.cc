// src/inference/predict.cc

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

#include "flexslu/inference/predict.h"

#include <cmath>

#include "flexslu/nn/layers.h"

namespace flexslu {

InputMode parse_input_mode(std::string_view name) {
  if (name == "audio") return InputMode::kAudio;
  if (name == "text-gt") return InputMode::kTextGt;
  if (name == "text-asr") return InputMode::kTextAsr;
  if (name == "combined") return InputMode::kCombined;
  if (name == "combined-gt") return InputMode::kCombinedGt;
  throw InputError("unknown mode '" + std::string(name) +
                   "' (expected audio, text-gt, text-asr, combined or "
                   "combined-gt)");
}

std::string_view input_mode_name(InputMode mode) {
  switch (mode) {
    case InputMode::kAudio: return "audio";
    case InputMode::kTextGt: return "text-gt";
    case InputMode::kTextAsr: return "text-asr";
    case InputMode::kCombined: return "combined";
    case InputMode::kCombinedGt: return "combined-gt";
  }
  return "?";
}

std::string_view prediction_mode_name(PredictionMode mode) {
  switch (mode) {
    case PredictionMode::kAudio: return "audio";
    case PredictionMode::kText: return "text";
    case PredictionMode::kCombined: return "combined";
  }
  return "?";
}

Vector softmax(const Vector& logits) {
  if (logits.size() == 0) throw InputError("softmax of an empty vector");
  if (!logits.allFinite()) throw InputError("softmax: non-finite logits");
  Eigen::ArrayXd e = (logits.array() - logits.maxCoeff()).exp();
  return (e / e.sum()).matrix();
}

Vector average_probabilities(const Vector& a, const Vector& b) {
  if (a.size() != b.size())
    throw InputError("average_probabilities: length mismatch");
  return 0.5 * (a + b);
}

Prediction predict(const JointModel& model, const Matrix* audio,
                   const std::vector<int>* transcript) {
  if (!audio && !transcript) throw InputError("no input modality");
  Prediction p;
  std::optional<Vector> audio_probs, text_probs;
  if (audio)
    audio_probs = softmax(model.classify(model.acoustic.forward(*audio).embedding));
  if (transcript)
    text_probs = softmax(model.classify(model.text.forward(*transcript)));
  if (audio_probs && text_probs) {
    p.probs = average_probabilities(*audio_probs, *text_probs);
    p.mode = PredictionMode::kCombined;
  } else if (audio_probs) {
    p.probs = std::move(*audio_probs);
    p.mode = PredictionMode::kAudio;
  } else {
    p.probs = std::move(*text_probs);
    p.mode = PredictionMode::kText;
  }
  p.label = argmax(p.probs);
  return p;
}

namespace {

bool needs_audio(InputMode m) {
  return m == InputMode::kAudio || m == InputMode::kCombined ||
         m == InputMode::kCombinedGt;
}

const std::optional<std::vector<int>>* transcript_for(const EncodedUtterance& u,
                                                      InputMode m) {
  switch (m) {
    case InputMode::kTextGt:
    case InputMode::kCombinedGt:
      return &u.gt_ids;
    case InputMode::kTextAsr:
    case InputMode::kCombined:
      return &u.asr_ids;
    case InputMode::kAudio:
      return nullptr;
  }
  return nullptr;
}

}  // namespace

std::vector<std::string> missing_modality_ids(const EncodedSplit& split,
                                              InputMode mode) {
  std::vector<std::string> missing;
  for (const auto& u : split.items) {
    bool ok = !needs_audio(mode) || u.features.has_value();
    if (auto t = transcript_for(u, mode); t && !t->has_value()) ok = false;
    if (!ok) missing.push_back(u.id);
  }
  return missing;
}

BatchPrediction batch_predict(const JointModel& model, const EncodedSplit& split,
                              InputMode mode) {
  if (split.items.empty()) throw InputError("batch_predict: empty split");
  auto missing = missing_modality_ids(split, mode);
  if (!missing.empty()) {
    std::string msg = "mode '" + std::string(input_mode_name(mode)) +
                      "' needs inputs missing from:";
    for (const auto& id : missing) msg += " " + id;
    throw InputError(msg);
  }
  BatchPrediction out;
  bool labeled = true;
  std::size_t correct = 0;
  for (const auto& u : split.items) {
    const Matrix* audio = needs_audio(mode) ? &*u.features : nullptr;
    const std::vector<int>* text = nullptr;
    if (auto t = transcript_for(u, mode)) text = &**t;
    Prediction p = predict(model, audio, text);
    if (u.intent)
      correct += p.label == *u.intent ? 1 : 0;
    else
      labeled = false;
    out.ids.push_back(u.id);
    out.predictions.push_back(std::move(p));
  }
  if (labeled)
    out.accuracy =
        static_cast<double>(correct) / static_cast<double>(split.items.size());
  return out;
}

}  // namespace flexslu
