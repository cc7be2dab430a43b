// src/data/triplet.cc

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

#include "flexslu/data/triplet.h"

#include <algorithm>
#include <string>

namespace flexslu {

TripletSampler::TripletSampler(std::span<const int> intents)
    : intents_(intents.begin(), intents.end()) {
  int max_id = -1;
  for (int c : intents_) {
    if (c < 0) throw InputError("triplet sampling: negative intent id");
    max_id = std::max(max_id, c);
  }
  members_.resize(static_cast<std::size_t>(max_id + 1));
  position_.resize(intents_.size());
  for (std::size_t i = 0; i < intents_.size(); ++i) {
    auto& list = members_[intents_[i]];
    position_[i] = list.size();
    list.push_back(i);
  }
  int populated = 0;
  for (const auto& m : members_) populated += m.empty() ? 0 : 1;
  if (populated < 2)
    throw InputError("triplet sampling requires >=2 classes");
}

TripletSample TripletSampler::sample(std::size_t anchor, Rng& rng) const {
  if (anchor >= intents_.size())
    throw Error("triplet sampling: anchor index " + std::to_string(anchor) +
                " out of range");
  const int cls = intents_[anchor];
  const auto& same = members_[cls];

  TripletSample t;
  t.anchor = anchor;
  if (same.size() == 1) {
    t.positive = anchor;
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, same.size() - 2);
    std::size_t k = pick(rng);
    if (k >= position_[anchor]) ++k;
    t.positive = same[k];
  }

  // Index into the concatenation of all other classes' member lists.
  const std::size_t others = intents_.size() - same.size();
  std::uniform_int_distribution<std::size_t> pick(0, others - 1);
  std::size_t k = pick(rng);
  for (std::size_t c = 0; c < members_.size(); ++c) {
    if (static_cast<int>(c) == cls) continue;
    if (k < members_[c].size()) {
      t.negative = members_[c][k];
      break;
    }
    k -= members_[c].size();
  }
  return t;
}

TripletSample sample_triplet(const DatasetSplit& split, std::size_t anchor,
                             Rng& rng) {
  auto intents = split.intents();
  return TripletSampler(intents).sample(anchor, rng);
}

}  // namespace flexslu
