// include/flexslu/text/domain_adapt.h

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

#ifndef FLEXSLU_TEXT_DOMAIN_ADAPT_H_
#define FLEXSLU_TEXT_DOMAIN_ADAPT_H_

#include <span>
#include <vector>

#include "flexslu/common.h"
#include "flexslu/nn/layers.h"
#include "flexslu/text/text_encoder.h"

namespace flexslu {

struct LabeledTranscript {
  std::vector<int> token_ids;
  int intent = 0;
};

struct DomainAdaptOptions {
  int epochs = 20;
  double learning_rate = 1e-3;
  int batch_size = 16;
};

struct DomainAdaptResult {
  // Shaped and named like the joint model's shared classifier so it can
  // warm-start it.
  Linear classifier;
  std::vector<double> epoch_loss;
  // Training-set accuracy after the last epoch.
  double train_accuracy = 0.0;
};

// Supervised fine-tuning of `encoder` as an intent classifier over
// transcripts, through a temporary linear head. The encoder is updated only
// if it is flagged trainable. Throws InputError if some class in
// [0, num_classes) has no example.
DomainAdaptResult domain_adapt(TextEncoder& encoder,
                               std::span<const LabeledTranscript> examples,
                               int num_classes,
                               const DomainAdaptOptions& options, Rng& rng);

// Accuracy of encoder + head on labeled transcripts.
double transcript_accuracy(const TextEncoder& encoder, const Linear& head,
                           std::span<const LabeledTranscript> examples);

}  // namespace flexslu

#endif  // FLEXSLU_TEXT_DOMAIN_ADAPT_H_
