// include/flexslu/nn/parameter.h

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

#ifndef FLEXSLU_NN_PARAMETER_H_
#define FLEXSLU_NN_PARAMETER_H_

#include <string>
#include <vector>

#include "flexslu/common.h"

namespace flexslu {

// A named weight tensor and its accumulated gradient. Vectors are stored as
// single-column matrices.
struct Parameter {
  std::string name;
  Matrix value;
  Matrix grad;

  Parameter() = default;
  Parameter(std::string n, Eigen::Index rows, Eigen::Index cols)
      : name(std::move(n)),
        value(Matrix::Zero(rows, cols)),
        grad(Matrix::Zero(rows, cols)) {}

  void zero_grad() { grad.setZero(); }
  // Uniform in [-bound, bound].
  void init_uniform(double bound, Rng& rng);
};

using ParameterRefs = std::vector<Parameter*>;
using ConstParameterRefs = std::vector<const Parameter*>;

}  // namespace flexslu

#endif  // FLEXSLU_NN_PARAMETER_H_
