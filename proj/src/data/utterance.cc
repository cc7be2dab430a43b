// src/data/utterance.cc

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

#include "flexslu/data/utterance.h"

namespace flexslu {

bool Utterance::operator==(const Utterance& other) const {
  return id == other.id && features.rows() == other.features.rows() &&
         features.cols() == other.features.cols() &&
         features == other.features && gt_transcript == other.gt_transcript &&
         asr_transcript == other.asr_transcript && intent == other.intent;
}

bool DatasetSplit::has_asr_transcripts() const {
  for (const auto& u : utterances)
    if (!u.asr_transcript) return false;
  return true;
}

std::vector<std::string> DatasetSplit::missing_asr_ids() const {
  std::vector<std::string> ids;
  for (const auto& u : utterances)
    if (!u.asr_transcript) ids.push_back(u.id);
  return ids;
}

std::vector<int> DatasetSplit::intents() const {
  std::vector<int> out;
  out.reserve(utterances.size());
  for (const auto& u : utterances) out.push_back(u.intent);
  return out;
}

void DatasetSplit::validate() const {
  for (const auto& u : utterances) {
    if (u.features.rows() < 1)
      throw InputError("utterance '" + u.id + "' has no feature frames");
    if (u.features.cols() != feature_dim)
      throw InputError("utterance '" + u.id + "': inconsistent feature dim " +
                       std::to_string(u.features.cols()) + " (expected " +
                       std::to_string(feature_dim) + ")");
    if (u.intent < 0 || u.intent >= num_classes())
      throw InputError("utterance '" + u.id + "': intent id " +
                       std::to_string(u.intent) + " out of range");
  }
}

}  // namespace flexslu
