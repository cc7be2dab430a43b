// include/flexslu/joint/losses.h

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

#ifndef FLEXSLU_JOINT_LOSSES_H_
#define FLEXSLU_JOINT_LOSSES_H_

#include <vector>

#include "flexslu/common.h"
#include "flexslu/data/encoded_split.h"
#include "flexslu/joint/joint_model.h"

namespace flexslu {

struct LossWeights {
  double margin = 0.5;
  double lambda1 = 1.0;  // text cross-entropy
  double lambda2 = 1.0;  // triplet

  void validate() const;
  bool operator==(const LossWeights&) const = default;
};

struct LossComponents {
  double acoustic_ce = 0.0;
  double text_ce = 0.0;
  double triplet = 0.0;
};

struct LossResult {
  double total = 0.0;
  LossComponents components;
};

double squared_distance(const Vector& u, const Vector& v);

// max(0, margin + d(anchor, positive) - d(anchor, negative)) with d the
// squared Euclidean distance.
double triplet_loss(const Vector& anchor, const Vector& positive,
                    const Vector& negative, double margin);

// acoustic_ce + lambda1 * text_ce + lambda2 * triplet.
double combine_losses(const LossComponents& c, const LossWeights& w);

// One training example: the anchor utterance and the utterances whose
// transcripts serve as triplet positive and negative.
struct BatchItem {
  const EncodedUtterance* anchor = nullptr;
  const EncodedUtterance* positive = nullptr;
  const EncodedUtterance* negative = nullptr;
};

using Batch = std::vector<BatchItem>;

// Batch-mean components. With kGroundTruthAndAsr the text cross-entropy of
// each example is the mean over its GT and ASR transcripts.
LossResult total_loss(const JointModel& model, const Batch& batch,
                      const LossWeights& weights, TextData text_data);

// Same value; zeroes the model's gradients, then accumulates d(total)/d(param)
// into every parameter, frozen or not.
LossResult total_loss_and_backward(JointModel& model, const Batch& batch,
                                   const LossWeights& weights,
                                   TextData text_data);

}  // namespace flexslu

#endif  // FLEXSLU_JOINT_LOSSES_H_
