// include/flexslu/acoustic/acoustic_encoder.h

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

#ifndef FLEXSLU_ACOUSTIC_ACOUSTIC_ENCODER_H_
#define FLEXSLU_ACOUSTIC_ACOUSTIC_ENCODER_H_

#include <array>
#include <string_view>
#include <vector>

#include "flexslu/common.h"
#include "flexslu/nn/layers.h"
#include "flexslu/nn/tensor_bundle.h"

namespace flexslu {

struct ConvSpec {
  int out_channels = 128;
  int kernel = 2;
  int stride = 2;

  bool operator==(const ConvSpec&) const = default;
};

struct AcousticConfig {
  int feature_dim = 1;
  std::vector<ConvSpec> conv_layers{ConvSpec{}, ConvSpec{}, ConvSpec{}};
  int recurrent_layers = 4;
  int hidden_units = 128;
  int embed_dim = 64;

  // Throws InputError on non-positive sizes or an empty conv stack.
  void validate() const;
  bool operator==(const AcousticConfig&) const = default;
};

enum class AcousticSubmodule { kPhoneme = 0, kWord = 1, kProjection = 2 };

// "phoneme", "word" or "projection"; anything else throws InputError.
AcousticSubmodule parse_acoustic_submodule(std::string_view name);
std::string_view submodule_name(AcousticSubmodule sub);

struct AcousticOutput {
  Matrix phoneme_seq;  // [T' x conv channels]
  Matrix word_seq;     // [T' x hidden_units]
  Vector embedding;    // [embed_dim]
};

// Phoneme module (strided Conv1d + ReLU stack) -> word module (GRU stack)
// -> mean over time -> linear projection into the shared embedding space.
class AcousticEncoder {
 public:
  struct Trace {
    int frames = 0;
    std::vector<Conv1d::Trace> conv;
    std::vector<Gru::Trace> gru;
    Vector pooled;
    AcousticOutput output;
  };

  // Parameters start at zero; call init() for a random start.
  explicit AcousticEncoder(const AcousticConfig& config);
  AcousticEncoder(const AcousticConfig& config, Rng& rng);

  void init(Rng& rng);

  // Throws InputError if features are shorter than min_frames() or have the
  // wrong width.
  AcousticOutput forward(const Matrix& features) const;
  Trace forward_trace(const Matrix& features) const;
  // Accumulates parameter gradients for dL/d(embedding).
  void backward(const Trace& trace, const Vector& d_embedding);

  // Shortest input that leaves at least one frame after the conv stack.
  int min_frames() const;
  const AcousticConfig& config() const { return config_; }

  void set_trainable(AcousticSubmodule sub, bool flag) {
    trainable_[static_cast<int>(sub)] = flag;
  }
  void set_trainable(std::string_view sub, bool flag) {
    set_trainable(parse_acoustic_submodule(sub), flag);
  }
  bool trainable(AcousticSubmodule sub) const {
    return trainable_[static_cast<int>(sub)];
  }

  ParameterRefs parameters(AcousticSubmodule sub);
  ConstParameterRefs parameters(AcousticSubmodule sub) const;
  ParameterRefs parameters();
  ConstParameterRefs parameters() const;
  // Parameters of submodules currently flagged trainable.
  ParameterRefs trainable_parameters();

  TensorBundle save_bundle() const;
  // With `partial`, tensors absent from the bundle keep their values.
  void load_pretrained(const TensorBundle& bundle, bool partial = false);

 private:
  AcousticConfig config_;
  std::vector<Conv1d> conv_;
  std::vector<Gru> gru_;
  Linear projection_;
  std::array<bool, 3> trainable_{true, true, true};
};

}  // namespace flexslu

#endif  // FLEXSLU_ACOUSTIC_ACOUSTIC_ENCODER_H_
