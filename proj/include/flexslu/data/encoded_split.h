// include/flexslu/data/encoded_split.h

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

#ifndef FLEXSLU_DATA_ENCODED_SPLIT_H_
#define FLEXSLU_DATA_ENCODED_SPLIT_H_

#include <optional>
#include <string>
#include <vector>

#include "flexslu/common.h"
#include "flexslu/data/manifest.h"
#include "flexslu/data/utterance.h"
#include "flexslu/data/vocabulary.h"

namespace flexslu {

// An utterance with its transcripts mapped to token ids. Any modality may be
// absent when the record came from an inference request rather than a
// training manifest.
struct EncodedUtterance {
  std::string id;
  std::optional<Matrix> features;
  std::optional<std::vector<int>> gt_ids;
  std::optional<std::vector<int>> asr_ids;
  std::optional<int> intent;

  // Transcript used when this utterance is a triplet positive or negative:
  // ground truth when present, else the ASR transcript.
  const std::vector<int>& triplet_ids() const;
};

struct EncodedSplit {
  std::vector<EncodedUtterance> items;
  std::vector<std::string> label_names;

  std::size_t size() const { return items.size(); }
  int num_classes() const { return static_cast<int>(label_names.size()); }
  // Intent per item; throws if any item is unlabeled.
  std::vector<int> intents() const;
};

EncodedSplit encode_split(const DatasetSplit& split, const Vocabulary& vocab,
                          const Tokenizer& tokenizer = WhitespaceTokenizer());

// Inference records: every field optional. Intent names must be in `labels`.
EncodedSplit encode_records(const std::vector<ManifestRecord>& records,
                            const std::vector<std::string>& labels,
                            const Vocabulary& vocab,
                            const Tokenizer& tokenizer = WhitespaceTokenizer());

}  // namespace flexslu

#endif  // FLEXSLU_DATA_ENCODED_SPLIT_H_
