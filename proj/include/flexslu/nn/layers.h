// include/flexslu/nn/layers.h

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

#ifndef FLEXSLU_NN_LAYERS_H_
#define FLEXSLU_NN_LAYERS_H_

#include <span>
#include <string>
#include <vector>

#include "flexslu/common.h"
#include "flexslu/nn/parameter.h"

namespace flexslu {

// Layers keep no per-call state: forward() returns whatever backward() needs,
// and backward() accumulates into the parameters' grad fields.

// y = W x + b.
class Linear {
 public:
  Linear() = default;
  Linear(const std::string& name, int in, int out);

  Vector forward(const Vector& x) const;
  // Returns dL/dx.
  Vector backward(const Vector& x, const Vector& dy);

  void init(Rng& rng);
  int in_dim() const { return static_cast<int>(weight.value.cols()); }
  int out_dim() const { return static_cast<int>(weight.value.rows()); }
  void collect(ParameterRefs& out) { out.push_back(&weight); out.push_back(&bias); }
  void collect(ConstParameterRefs& out) const {
    out.push_back(&weight);
    out.push_back(&bias);
  }

  Parameter weight;  // [out x in]
  Parameter bias;    // [out x 1]
};

// Valid (unpadded) 1-D convolution over time followed by ReLU. Input rows
// are frames, columns are channels.
class Conv1d {
 public:
  struct Trace {
    Matrix columns;  // im2col windows, [T_out x kernel*in]
    Matrix output;   // post-ReLU, [T_out x out]
  };

  Conv1d() = default;
  Conv1d(const std::string& name, int in_channels, int out_channels, int kernel,
         int stride);

  // Zero when the input is shorter than one kernel.
  int output_length(int frames) const;
  Trace forward(const Matrix& x) const;
  // Returns dL/dx for an input of `frames` rows.
  Matrix backward(const Trace& trace, const Matrix& dy, int frames);

  void init(Rng& rng);
  int in_channels() const { return in_; }
  int out_channels() const { return out_; }
  int kernel() const { return kernel_; }
  int stride() const { return stride_; }
  void collect(ParameterRefs& out) { out.push_back(&weight); out.push_back(&bias); }
  void collect(ConstParameterRefs& out) const {
    out.push_back(&weight);
    out.push_back(&bias);
  }

  Parameter weight;  // [out x kernel*in], column j*in + c is tap j, channel c
  Parameter bias;    // [out x 1]

 private:
  int in_ = 0, out_ = 0, kernel_ = 1, stride_ = 1;
};

// Unidirectional gated recurrent layer with zero initial state:
//   z = sigmoid(Wz x + Uz h + bz)
//   r = sigmoid(Wr x + Ur h + br)
//   n = tanh(Wn x + Un (r * h) + bn)
//   h' = (1 - z) * n + z * h
// Gates are stacked [z; r; n] in the weight rows.
class Gru {
 public:
  struct Trace {
    Matrix input;    // [T x in]
    Matrix hidden;   // [T+1 x H], row 0 is the initial state
    Matrix update;   // z per step, [T x H]
    Matrix reset;    // r per step
    Matrix cand;     // n per step
  };

  Gru() = default;
  Gru(const std::string& name, int in, int hidden);

  Trace forward(const Matrix& x) const;
  // Output rows of a trace, [T x H].
  static Matrix outputs(const Trace& trace);
  // dy holds dL/dh_t for every step; returns dL/dx.
  Matrix backward(const Trace& trace, const Matrix& dy);

  void init(Rng& rng);
  int in_dim() const { return static_cast<int>(w_ih.value.cols()); }
  int hidden_dim() const { return static_cast<int>(w_hh.value.cols()); }
  void collect(ParameterRefs& out) {
    out.push_back(&w_ih);
    out.push_back(&w_hh);
    out.push_back(&bias);
  }
  void collect(ConstParameterRefs& out) const {
    out.push_back(&w_ih);
    out.push_back(&w_hh);
    out.push_back(&bias);
  }

  Parameter w_ih;  // [3H x in]
  Parameter w_hh;  // [3H x H]
  Parameter bias;  // [3H x 1]
};

// Token id -> row of a [vocab x dim] table.
class Embedding {
 public:
  Embedding() = default;
  Embedding(const std::string& name, int vocab, int dim);

  Matrix forward(std::span<const int> ids) const;
  void backward(std::span<const int> ids, const Matrix& dy);

  void init(Rng& rng);
  int vocab_size() const { return static_cast<int>(table.value.rows()); }
  int dim() const { return static_cast<int>(table.value.cols()); }
  void collect(ParameterRefs& out) { out.push_back(&table); }
  void collect(ConstParameterRefs& out) const { out.push_back(&table); }

  Parameter table;
};

// Index of the largest entry; ties go to the lowest index.
int argmax(const Vector& v);

// Numerically stable softmax cross-entropy. Writes dL/dlogits when
// `dlogits` is non-null.
double softmax_cross_entropy(const Vector& logits, int target,
                             Vector* dlogits = nullptr);

}  // namespace flexslu

#endif  // FLEXSLU_NN_LAYERS_H_
