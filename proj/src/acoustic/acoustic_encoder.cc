// src/acoustic/acoustic_encoder.cc

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

#include "flexslu/acoustic/acoustic_encoder.h"

#include <string>

namespace flexslu {

void AcousticConfig::validate() const {
  if (feature_dim < 1) throw InputError("acoustic.feature_dim must be >= 1");
  if (conv_layers.empty())
    throw InputError("acoustic.conv_layers must have at least one layer");
  for (const auto& c : conv_layers)
    if (c.out_channels < 1 || c.kernel < 1 || c.stride < 1)
      throw InputError("acoustic.conv_layers entries must be >= 1");
  if (recurrent_layers < 1)
    throw InputError("acoustic.recurrent_layers must be >= 1");
  if (hidden_units < 1) throw InputError("acoustic.hidden_units must be >= 1");
  if (embed_dim < 1) throw InputError("embed_dim must be >= 1");
}

AcousticSubmodule parse_acoustic_submodule(std::string_view name) {
  if (name == "phoneme") return AcousticSubmodule::kPhoneme;
  if (name == "word") return AcousticSubmodule::kWord;
  if (name == "projection") return AcousticSubmodule::kProjection;
  throw InputError("unknown acoustic submodule '" + std::string(name) +
                   "' (expected phoneme, word or projection)");
}

std::string_view submodule_name(AcousticSubmodule sub) {
  switch (sub) {
    case AcousticSubmodule::kPhoneme: return "phoneme";
    case AcousticSubmodule::kWord: return "word";
    case AcousticSubmodule::kProjection: return "projection";
  }
  return "?";
}

AcousticEncoder::AcousticEncoder(const AcousticConfig& config)
    : config_(config) {
  config_.validate();
  int channels = config_.feature_dim;
  for (std::size_t i = 0; i < config_.conv_layers.size(); ++i) {
    const auto& spec = config_.conv_layers[i];
    conv_.emplace_back("acoustic.phoneme.conv" + std::to_string(i), channels,
                       spec.out_channels, spec.kernel, spec.stride);
    channels = spec.out_channels;
  }
  for (int i = 0; i < config_.recurrent_layers; ++i) {
    gru_.emplace_back("acoustic.word.gru" + std::to_string(i), channels,
                      config_.hidden_units);
    channels = config_.hidden_units;
  }
  projection_ = Linear("acoustic.projection", config_.hidden_units,
                       config_.embed_dim);
}

AcousticEncoder::AcousticEncoder(const AcousticConfig& config, Rng& rng)
    : AcousticEncoder(config) {
  init(rng);
}

void AcousticEncoder::init(Rng& rng) {
  for (auto& c : conv_) c.init(rng);
  for (auto& g : gru_) g.init(rng);
  projection_.init(rng);
}

int AcousticEncoder::min_frames() const {
  int frames = 1;
  for (auto it = conv_.rbegin(); it != conv_.rend(); ++it)
    frames = (frames - 1) * it->stride() + it->kernel();
  return frames;
}

AcousticEncoder::Trace AcousticEncoder::forward_trace(
    const Matrix& features) const {
  if (features.cols() != config_.feature_dim)
    throw InputError("acoustic input has " + std::to_string(features.cols()) +
                     " feature dims, expected " +
                     std::to_string(config_.feature_dim));
  if (features.rows() < min_frames())
    throw InputError("acoustic input has " + std::to_string(features.rows()) +
                     " frames; the conv stack needs at least " +
                     std::to_string(min_frames()));
  Trace tr;
  tr.frames = static_cast<int>(features.rows());
  const Matrix* x = &features;
  for (const auto& c : conv_) {
    tr.conv.push_back(c.forward(*x));
    x = &tr.conv.back().output;
  }
  tr.output.phoneme_seq = *x;
  Matrix h = *x;
  for (const auto& g : gru_) {
    tr.gru.push_back(g.forward(h));
    h = Gru::outputs(tr.gru.back());
  }
  tr.pooled = h.colwise().mean().transpose();
  tr.output.embedding = projection_.forward(tr.pooled);
  tr.output.word_seq = std::move(h);
  return tr;
}

AcousticOutput AcousticEncoder::forward(const Matrix& features) const {
  return forward_trace(features).output;
}

void AcousticEncoder::backward(const Trace& trace, const Vector& d_embedding) {
  Vector dpooled = projection_.backward(trace.pooled, d_embedding);
  const Eigen::Index steps = trace.output.word_seq.rows();
  Matrix dh = (dpooled / static_cast<double>(steps)).transpose().replicate(steps, 1);
  for (std::size_t i = gru_.size(); i-- > 0;)
    dh = gru_[i].backward(trace.gru[i], dh);
  for (std::size_t i = conv_.size(); i-- > 0;) {
    const int frames =
        i == 0 ? trace.frames : static_cast<int>(trace.conv[i - 1].output.rows());
    dh = conv_[i].backward(trace.conv[i], dh, frames);
  }
}

ParameterRefs AcousticEncoder::parameters(AcousticSubmodule sub) {
  ParameterRefs out;
  switch (sub) {
    case AcousticSubmodule::kPhoneme:
      for (auto& c : conv_) c.collect(out);
      break;
    case AcousticSubmodule::kWord:
      for (auto& g : gru_) g.collect(out);
      break;
    case AcousticSubmodule::kProjection:
      projection_.collect(out);
      break;
  }
  return out;
}

ConstParameterRefs AcousticEncoder::parameters(AcousticSubmodule sub) const {
  ConstParameterRefs out;
  switch (sub) {
    case AcousticSubmodule::kPhoneme:
      for (const auto& c : conv_) c.collect(out);
      break;
    case AcousticSubmodule::kWord:
      for (const auto& g : gru_) g.collect(out);
      break;
    case AcousticSubmodule::kProjection:
      projection_.collect(out);
      break;
  }
  return out;
}

ParameterRefs AcousticEncoder::parameters() {
  ParameterRefs out;
  for (auto sub : {AcousticSubmodule::kPhoneme, AcousticSubmodule::kWord,
                   AcousticSubmodule::kProjection}) {
    auto part = parameters(sub);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

ConstParameterRefs AcousticEncoder::parameters() const {
  ConstParameterRefs out;
  for (auto sub : {AcousticSubmodule::kPhoneme, AcousticSubmodule::kWord,
                   AcousticSubmodule::kProjection}) {
    auto part = parameters(sub);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

ParameterRefs AcousticEncoder::trainable_parameters() {
  ParameterRefs out;
  for (auto sub : {AcousticSubmodule::kPhoneme, AcousticSubmodule::kWord,
                   AcousticSubmodule::kProjection}) {
    if (!trainable(sub)) continue;
    auto part = parameters(sub);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

TensorBundle AcousticEncoder::save_bundle() const {
  return export_parameters(parameters());
}

void AcousticEncoder::load_pretrained(const TensorBundle& bundle, bool partial) {
  import_parameters(parameters(), bundle, partial);
}

}  // namespace flexslu
