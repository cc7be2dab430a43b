// include/flexslu/text/text_encoder.h

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

#ifndef FLEXSLU_TEXT_TEXT_ENCODER_H_
#define FLEXSLU_TEXT_TEXT_ENCODER_H_

#include <span>
#include <vector>

#include "flexslu/common.h"
#include "flexslu/nn/layers.h"
#include "flexslu/nn/tensor_bundle.h"

namespace flexslu {

struct TextConfig {
  int vocab_size = 2;
  int token_embed_dim = 32;
  int encoder_layers = 2;
  int hidden_dim = 64;
  int embed_dim = 64;

  void validate() const;
  bool operator==(const TextConfig&) const = default;
};

// Token embedding -> stacked GRU -> mean over positions -> linear projection
// to the shared embedding space. The recurrence makes it order-sensitive.
class TextEncoder {
 public:
  struct Trace {
    std::vector<int> ids;
    std::vector<Gru::Trace> gru;
    Vector pooled;
    Vector embedding;
  };

  explicit TextEncoder(const TextConfig& config);
  TextEncoder(const TextConfig& config, Rng& rng);

  void init(Rng& rng);

  // Throws InputError("empty transcript") for an empty sequence.
  Vector forward(std::span<const int> token_ids) const;
  Trace forward_trace(std::span<const int> token_ids) const;
  void backward(const Trace& trace, const Vector& d_embedding);

  const TextConfig& config() const { return config_; }
  void set_trainable(bool flag) { trainable_ = flag; }
  bool trainable() const { return trainable_; }

  ParameterRefs parameters();
  ConstParameterRefs parameters() const;

  TensorBundle save_bundle() const;
  void load_pretrained(const TensorBundle& bundle, bool partial = false);

 private:
  TextConfig config_;
  Embedding embedding_;
  std::vector<Gru> gru_;
  Linear projection_;
  bool trainable_ = true;
};

}  // namespace flexslu

#endif  // FLEXSLU_TEXT_TEXT_ENCODER_H_
