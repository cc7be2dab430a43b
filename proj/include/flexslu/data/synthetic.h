// include/flexslu/data/synthetic.h

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

#ifndef FLEXSLU_DATA_SYNTHETIC_H_
#define FLEXSLU_DATA_SYNTHETIC_H_

#include "flexslu/common.h"
#include "flexslu/data/utterance.h"

namespace flexslu {

struct SyntheticDataset {
  DatasetSplit train;
  DatasetSplit val;
  DatasetSplit test;
};

// Largest class count the template grammar can give distinct transcripts.
constexpr int kMaxSyntheticClasses = 120;

// A smart-home command corpus. Class c has one template transcript built
// from an action, an object and a room, and a mean feature vector; each
// utterance is 8..20 frames of that mean plus unit-variance Gaussian noise.
// Splits are 80/10/10 per class. asr_transcript is left empty.
SyntheticDataset generate_synthetic_dataset(int n_classes, int n_per_class,
                                            int feature_dim, Rng& rng);

}  // namespace flexslu

#endif  // FLEXSLU_DATA_SYNTHETIC_H_
