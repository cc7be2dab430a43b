// include/flexslu/nn/adam.h

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

#ifndef FLEXSLU_NN_ADAM_H_
#define FLEXSLU_NN_ADAM_H_

#include <map>
#include <span>
#include <string>

#include "flexslu/nn/parameter.h"

namespace flexslu {

struct ParameterGroup {
  double learning_rate = 0.0;
  ParameterRefs params;
};

// Adaptive-moment optimizer. Moment state is keyed by parameter name and the
// bias-correction step counts per parameter, so a parameter that sits out
// some steps (frozen, or in a zero-rate group) resumes cleanly.
class Adam {
 public:
  struct Options {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
  };

  Adam() = default;
  explicit Adam(Options options) : options_(options) {}

  // Groups with a zero learning rate are skipped entirely.
  void step(std::span<const ParameterGroup> groups);

 private:
  struct Moments {
    Matrix first;
    Matrix second;
    long steps = 0;
  };
  Options options_;
  std::map<std::string, Moments> state_;
};

}  // namespace flexslu

#endif  // FLEXSLU_NN_ADAM_H_
