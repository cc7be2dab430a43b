// src/text/text_encoder.cc

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

#include "flexslu/text/text_encoder.h"

#include <string>

namespace flexslu {

void TextConfig::validate() const {
  if (vocab_size < 2) throw InputError("text.vocab_size must be >= 2");
  if (token_embed_dim < 1) throw InputError("text.token_embed_dim must be >= 1");
  if (encoder_layers < 1) throw InputError("text.encoder_layers must be >= 1");
  if (hidden_dim < 1) throw InputError("text.hidden_dim must be >= 1");
  if (embed_dim < 1) throw InputError("embed_dim must be >= 1");
}

TextEncoder::TextEncoder(const TextConfig& config) : config_(config) {
  config_.validate();
  embedding_ = Embedding("text.embedding", config_.vocab_size,
                         config_.token_embed_dim);
  int in = config_.token_embed_dim;
  for (int i = 0; i < config_.encoder_layers; ++i) {
    gru_.emplace_back("text.gru" + std::to_string(i), in, config_.hidden_dim);
    in = config_.hidden_dim;
  }
  projection_ = Linear("text.projection", config_.hidden_dim, config_.embed_dim);
}

TextEncoder::TextEncoder(const TextConfig& config, Rng& rng)
    : TextEncoder(config) {
  init(rng);
}

void TextEncoder::init(Rng& rng) {
  embedding_.init(rng);
  for (auto& g : gru_) g.init(rng);
  projection_.init(rng);
}

TextEncoder::Trace TextEncoder::forward_trace(
    std::span<const int> token_ids) const {
  if (token_ids.empty()) throw InputError("empty transcript");
  Trace tr;
  tr.ids.assign(token_ids.begin(), token_ids.end());
  Matrix h = embedding_.forward(token_ids);
  for (const auto& g : gru_) {
    tr.gru.push_back(g.forward(h));
    h = Gru::outputs(tr.gru.back());
  }
  tr.pooled = h.colwise().mean().transpose();
  tr.embedding = projection_.forward(tr.pooled);
  return tr;
}

Vector TextEncoder::forward(std::span<const int> token_ids) const {
  return forward_trace(token_ids).embedding;
}

void TextEncoder::backward(const Trace& trace, const Vector& d_embedding) {
  Vector dpooled = projection_.backward(trace.pooled, d_embedding);
  const auto steps = static_cast<Eigen::Index>(trace.ids.size());
  Matrix dh = (dpooled / static_cast<double>(steps)).transpose().replicate(steps, 1);
  for (std::size_t i = gru_.size(); i-- > 0;)
    dh = gru_[i].backward(trace.gru[i], dh);
  embedding_.backward(trace.ids, dh);
}

ParameterRefs TextEncoder::parameters() {
  ParameterRefs out;
  embedding_.collect(out);
  for (auto& g : gru_) g.collect(out);
  projection_.collect(out);
  return out;
}

ConstParameterRefs TextEncoder::parameters() const {
  ConstParameterRefs out;
  embedding_.collect(out);
  for (const auto& g : gru_) g.collect(out);
  projection_.collect(out);
  return out;
}

TensorBundle TextEncoder::save_bundle() const {
  return export_parameters(parameters());
}

void TextEncoder::load_pretrained(const TensorBundle& bundle, bool partial) {
  import_parameters(parameters(), bundle, partial);
}

}  // namespace flexslu
