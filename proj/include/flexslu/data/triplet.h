// include/flexslu/data/triplet.h

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

#ifndef FLEXSLU_DATA_TRIPLET_H_
#define FLEXSLU_DATA_TRIPLET_H_

#include <cstddef>
#include <span>
#include <vector>

#include "flexslu/common.h"
#include "flexslu/data/utterance.h"

namespace flexslu {

// Indices into a split. The anchor contributes its acoustic embedding, the
// positive and negative their transcripts.
struct TripletSample {
  std::size_t anchor = 0;
  std::size_t positive = 0;
  std::size_t negative = 0;
};

// Precomputes per-class member lists so repeated draws are O(1).
class TripletSampler {
 public:
  // Throws InputError when fewer than two distinct classes are present.
  explicit TripletSampler(std::span<const int> intents);

  // Positive: uniform over same-class examples other than the anchor, or the
  // anchor itself when it is alone in its class. Negative: uniform over all
  // examples of other classes.
  TripletSample sample(std::size_t anchor, Rng& rng) const;

 private:
  std::vector<int> intents_;
  std::vector<std::vector<std::size_t>> members_;  // by class id
  std::vector<std::size_t> position_;              // index within members_
};

TripletSample sample_triplet(const DatasetSplit& split, std::size_t anchor,
                             Rng& rng);

}  // namespace flexslu

#endif  // FLEXSLU_DATA_TRIPLET_H_
