// include/flexslu/data/corruption.h

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

#ifndef FLEXSLU_DATA_CORRUPTION_H_
#define FLEXSLU_DATA_CORRUPTION_H_

#include <string>
#include <string_view>

#include "flexslu/common.h"
#include "flexslu/data/vocabulary.h"

namespace flexslu {

// Relative share of each edit type in the injected errors. Must sum to 1.
struct CorruptionMix {
  double substitution = 0.6;
  double deletion = 0.2;
  double insertion = 0.2;
};

// Simulates recognizer output. Each reference word is substituted with
// probability target_wer * mix.substitution or deleted with probability
// target_wer * mix.deletion. Between surviving neighbours a random vocabulary
// word is inserted at a rate scaled up so that, counted over the whole
// transcript, insertions come to about target_wer * mix.insertion per
// reference word. Substitutes and insertions never equal the adjacent
// reference words, so each edit is visible to alignment. Output words are
// lowercased and single-space joined.
std::string corrupt_transcript(std::string_view text, double target_wer,
                               const Vocabulary& vocab, Rng& rng,
                               const CorruptionMix& mix = {});

}  // namespace flexslu

#endif  // FLEXSLU_DATA_CORRUPTION_H_
