// src/nn/adam.cc

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

#include "flexslu/nn/adam.h"

#include <cmath>

namespace flexslu {

void Adam::step(std::span<const ParameterGroup> groups) {
  for (const auto& group : groups) {
    if (group.learning_rate == 0.0) continue;
    for (Parameter* p : group.params) {
      auto [it, inserted] = state_.try_emplace(p->name);
      Moments& m = it->second;
      if (inserted) {
        m.first = Matrix::Zero(p->value.rows(), p->value.cols());
        m.second = Matrix::Zero(p->value.rows(), p->value.cols());
      }
      ++m.steps;
      m.first = options_.beta1 * m.first + (1.0 - options_.beta1) * p->grad;
      m.second = options_.beta2 * m.second +
                 (1.0 - options_.beta2) * p->grad.cwiseAbs2();
      const double c1 = 1.0 - std::pow(options_.beta1, static_cast<double>(m.steps));
      const double c2 = 1.0 - std::pow(options_.beta2, static_cast<double>(m.steps));
      p->value.array() -= group.learning_rate * (m.first.array() / c1) /
                          ((m.second.array() / c2).sqrt() + options_.epsilon);
    }
  }
}

}  // namespace flexslu
