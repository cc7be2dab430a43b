// include/flexslu/common.h

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

#ifndef FLEXSLU_COMMON_H_
#define FLEXSLU_COMMON_H_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace flexslu {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Every stochastic operation takes one of these explicitly; there is no
// global or wall-clock seeded generator anywhere in the library.
using Rng = std::mt19937_64;

// Base of all library errors. Callers that only care about "something about
// the input was wrong" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: malformed files, missing fields, inconsistent shapes,
// invalid configuration values. The CLI maps this to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace flexslu

#endif  // FLEXSLU_COMMON_H_
