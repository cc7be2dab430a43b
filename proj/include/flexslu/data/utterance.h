// include/flexslu/data/utterance.h

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

#ifndef FLEXSLU_DATA_UTTERANCE_H_
#define FLEXSLU_DATA_UTTERANCE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "flexslu/common.h"

namespace flexslu {

// One example: a [frames x feature_dim] matrix of precomputed acoustic
// features plus its transcripts and intent id.
struct Utterance {
  std::string id;
  Matrix features;
  std::string gt_transcript;
  std::optional<std::string> asr_transcript;
  int intent = 0;

  bool operator==(const Utterance& other) const;
};

struct DatasetSplit {
  std::vector<Utterance> utterances;
  std::vector<std::string> label_names;
  int feature_dim = 0;

  std::size_t size() const { return utterances.size(); }
  int num_classes() const { return static_cast<int>(label_names.size()); }
  bool has_asr_transcripts() const;
  // Ids of utterances without an ASR transcript, in split order.
  std::vector<std::string> missing_asr_ids() const;
  std::vector<int> intents() const;

  // Throws InputError if any invariant (intent range, shared feature
  // dimension, non-empty features) is violated.
  void validate() const;

  bool operator==(const DatasetSplit& other) const = default;
};

}  // namespace flexslu

#endif  // FLEXSLU_DATA_UTTERANCE_H_
