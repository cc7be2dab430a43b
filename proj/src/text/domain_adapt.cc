// src/text/domain_adapt.cc

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

#include "flexslu/text/domain_adapt.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "flexslu/nn/adam.h"

namespace flexslu {

DomainAdaptResult domain_adapt(TextEncoder& encoder,
                               std::span<const LabeledTranscript> examples,
                               int num_classes,
                               const DomainAdaptOptions& options, Rng& rng) {
  if (num_classes < 1) throw InputError("domain_adapt: num_classes must be >= 1");
  if (options.epochs < 0 || options.batch_size < 1 || options.learning_rate < 0)
    throw InputError("domain_adapt: invalid options");
  std::vector<int> per_class(num_classes, 0);
  for (const auto& ex : examples) {
    if (ex.intent < 0 || ex.intent >= num_classes)
      throw InputError("domain_adapt: intent id out of range");
    ++per_class[ex.intent];
  }
  for (int c = 0; c < num_classes; ++c)
    if (per_class[c] == 0)
      throw InputError("domain_adapt: class " + std::to_string(c) +
                       " has no adaptation examples");

  DomainAdaptResult result;
  result.classifier =
      Linear("classifier", encoder.config().embed_dim, num_classes);
  result.classifier.init(rng);
  Linear& head = result.classifier;

  ParameterRefs params;
  if (encoder.trainable()) params = encoder.parameters();
  head.collect(params);
  ParameterRefs all = encoder.parameters();
  head.collect(all);

  Adam adam;
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(options.batch_size)) {
      const std::size_t end =
          std::min(order.size(), start + static_cast<std::size_t>(options.batch_size));
      const double scale = 1.0 / static_cast<double>(end - start);
      for (Parameter* p : all) p->zero_grad();
      for (std::size_t k = start; k < end; ++k) {
        const auto& ex = examples[order[k]];
        auto trace = encoder.forward_trace(ex.token_ids);
        Vector logits = head.forward(trace.embedding);
        Vector dlogits;
        loss_sum += softmax_cross_entropy(logits, ex.intent, &dlogits);
        Vector demb = head.backward(trace.embedding, dlogits * scale);
        if (encoder.trainable()) encoder.backward(trace, demb);
      }
      ParameterGroup group{options.learning_rate, params};
      adam.step(std::span<const ParameterGroup>(&group, 1));
    }
    result.epoch_loss.push_back(
        examples.empty() ? 0.0 : loss_sum / static_cast<double>(examples.size()));
  }
  result.train_accuracy = transcript_accuracy(encoder, head, examples);
  return result;
}

double transcript_accuracy(const TextEncoder& encoder, const Linear& head,
                           std::span<const LabeledTranscript> examples) {
  if (examples.empty()) return 0.0;
  std::size_t correct = 0;
  for (const auto& ex : examples)
    if (argmax(head.forward(encoder.forward(ex.token_ids))) == ex.intent)
      ++correct;
  return static_cast<double>(correct) / static_cast<double>(examples.size());
}

}  // namespace flexslu
