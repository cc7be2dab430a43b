// src/data/encoded_split.cc

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

#include "flexslu/data/encoded_split.h"

#include <algorithm>

namespace flexslu {

const std::vector<int>& EncodedUtterance::triplet_ids() const {
  if (gt_ids) return *gt_ids;
  if (asr_ids) return *asr_ids;
  throw InputError("utterance '" + id + "' has no transcript");
}

std::vector<int> EncodedSplit::intents() const {
  std::vector<int> out;
  out.reserve(items.size());
  for (const auto& u : items) {
    if (!u.intent) throw InputError("utterance '" + u.id + "' has no intent");
    out.push_back(*u.intent);
  }
  return out;
}

EncodedSplit encode_split(const DatasetSplit& split, const Vocabulary& vocab,
                          const Tokenizer& tokenizer) {
  EncodedSplit out;
  out.label_names = split.label_names;
  out.items.reserve(split.size());
  for (const auto& u : split.utterances) {
    EncodedUtterance e;
    e.id = u.id;
    e.features = u.features;
    e.gt_ids = tokenize(u.gt_transcript, vocab, tokenizer);
    if (u.asr_transcript) e.asr_ids = tokenize(*u.asr_transcript, vocab, tokenizer);
    e.intent = u.intent;
    out.items.push_back(std::move(e));
  }
  return out;
}

EncodedSplit encode_records(const std::vector<ManifestRecord>& records,
                            const std::vector<std::string>& labels,
                            const Vocabulary& vocab,
                            const Tokenizer& tokenizer) {
  EncodedSplit out;
  out.label_names = labels;
  for (const auto& r : records) {
    EncodedUtterance e;
    e.id = r.id.empty() ? "line" + std::to_string(r.line) : r.id;
    if (r.features && r.features->rows() > 0) e.features = *r.features;
    if (r.gt_transcript) e.gt_ids = tokenize(*r.gt_transcript, vocab, tokenizer);
    if (r.asr_transcript) e.asr_ids = tokenize(*r.asr_transcript, vocab, tokenizer);
    if (r.intent) {
      auto it = std::find(labels.begin(), labels.end(), *r.intent);
      if (it == labels.end())
        throw InputError("record '" + e.id + "': unknown label '" + *r.intent + "'");
      e.intent = static_cast<int>(it - labels.begin());
    }
    out.items.push_back(std::move(e));
  }
  return out;
}

}  // namespace flexslu
