// src/joint/losses.cc

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

#include "flexslu/joint/losses.h"

#include <algorithm>
#include <string>

namespace flexslu {

void LossWeights::validate() const {
  if (!(margin >= 0.0)) throw InputError("loss.margin must be >= 0");
  if (!(lambda1 >= 0.0)) throw InputError("loss.lambda1 must be >= 0");
  if (!(lambda2 >= 0.0)) throw InputError("loss.lambda2 must be >= 0");
}

double squared_distance(const Vector& u, const Vector& v) {
  if (u.size() != v.size())
    throw InputError("squared_distance: length mismatch (" +
                     std::to_string(u.size()) + " vs " +
                     std::to_string(v.size()) + ")");
  return (u - v).squaredNorm();
}

double triplet_loss(const Vector& anchor, const Vector& positive,
                    const Vector& negative, double margin) {
  return std::max(0.0, margin + squared_distance(anchor, positive) -
                           squared_distance(anchor, negative));
}

double combine_losses(const LossComponents& c, const LossWeights& w) {
  return c.acoustic_ce + w.lambda1 * c.text_ce + w.lambda2 * c.triplet;
}

namespace {

const std::vector<int>& asr_ids_of(const EncodedUtterance& u) {
  if (!u.asr_ids)
    throw InputError("utterance '" + u.id +
                     "' has no ASR transcript but the text data needs one");
  return *u.asr_ids;
}

const Matrix& features_of(const EncodedUtterance& u) {
  if (!u.features) throw InputError("utterance '" + u.id + "' has no features");
  return *u.features;
}

const std::vector<int>& gt_ids_of(const EncodedUtterance& u) {
  if (!u.gt_ids)
    throw InputError("utterance '" + u.id + "' has no ground-truth transcript");
  return *u.gt_ids;
}

int intent_of(const EncodedUtterance& u) {
  if (!u.intent) throw InputError("utterance '" + u.id + "' has no intent");
  return *u.intent;
}

// Shared forward (and optional backward) pass. `grads` is either null or the
// same object as `model`.
LossResult compute(const JointModel& model, JointModel* grads,
                   const Batch& batch, const LossWeights& weights,
                   TextData text_data) {
  if (batch.empty()) throw InputError("total_loss: empty batch");
  weights.validate();
  if (grads) grads->zero_grad();
  const double scale = 1.0 / static_cast<double>(batch.size());
  const bool with_asr = text_data == TextData::kGroundTruthAndAsr;

  LossComponents sum;
  for (const BatchItem& item : batch) {
    const EncodedUtterance& u = *item.anchor;
    const int label = intent_of(u);

    auto a_trace = model.acoustic.forward_trace(features_of(u));
    const Vector& a = a_trace.output.embedding;
    Vector d_a = Vector::Zero(a.size());

    Vector dlogits;
    sum.acoustic_ce += softmax_cross_entropy(model.classify(a), label,
                                             grads ? &dlogits : nullptr);
    if (grads) d_a += grads->classifier.backward(a, dlogits * scale);

    // Text cross-entropy over one or two transcript variants.
    const double variant_weight = with_asr ? 0.5 : 1.0;
    auto text_ce_term = [&](const std::vector<int>& ids) {
      auto t_trace = model.text.forward_trace(ids);
      Vector dl;
      double ce = softmax_cross_entropy(model.classify(t_trace.embedding), label,
                                        grads ? &dl : nullptr);
      if (grads) {
        Vector d_t = grads->classifier.backward(
            t_trace.embedding, dl * (weights.lambda1 * variant_weight * scale));
        grads->text.backward(t_trace, d_t);
      }
      return ce;
    };
    double text_ce = text_ce_term(gt_ids_of(u));
    if (with_asr) text_ce = 0.5 * (text_ce + text_ce_term(asr_ids_of(u)));
    sum.text_ce += text_ce;

    auto p_trace = model.text.forward_trace(item.positive->triplet_ids());
    auto n_trace = model.text.forward_trace(item.negative->triplet_ids());
    const Vector& p = p_trace.embedding;
    const Vector& n = n_trace.embedding;
    const double hinge = weights.margin + squared_distance(a, p) -
                         squared_distance(a, n);
    if (hinge > 0.0) {
      sum.triplet += hinge;
      if (grads) {
        const double g = weights.lambda2 * scale;
        d_a += (2.0 * g) * (n - p);
        grads->text.backward(p_trace, (-2.0 * g) * (a - p));
        grads->text.backward(n_trace, (2.0 * g) * (a - n));
      }
    }
    if (grads) grads->acoustic.backward(a_trace, d_a);
  }

  LossResult result;
  result.components.acoustic_ce = sum.acoustic_ce * scale;
  result.components.text_ce = sum.text_ce * scale;
  result.components.triplet = sum.triplet * scale;
  result.total = combine_losses(result.components, weights);
  return result;
}

}  // namespace

LossResult total_loss(const JointModel& model, const Batch& batch,
                      const LossWeights& weights, TextData text_data) {
  return compute(model, nullptr, batch, weights, text_data);
}

LossResult total_loss_and_backward(JointModel& model, const Batch& batch,
                                   const LossWeights& weights,
                                   TextData text_data) {
  return compute(model, &model, batch, weights, text_data);
}

}  // namespace flexslu
