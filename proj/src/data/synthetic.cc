// src/data/synthetic.cc

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

#include "flexslu/data/synthetic.h"

#include <algorithm>
#include <array>
#include <limits>
#include <cstdio>
#include <string>
#include <vector>

namespace flexslu {

namespace {

struct Phrase {
  const char* key;
  const char* text;
};

constexpr std::array<Phrase, 6> kActions = {{
    {"turn_on", "turn on"},
    {"turn_off", "turn off"},
    {"dim", "dim"},
    {"brighten", "brighten"},
    {"recolor", "change the color of"},
    {"set", "set the brightness of"},
}};
constexpr std::array<Phrase, 4> kObjects = {{
    {"lights", "lights"},
    {"lamp", "lamp"},
    {"ceiling", "ceiling light"},
    {"strip", "led strip"},
}};
constexpr std::array<Phrase, 5> kRooms = {{
    {"kitchen", "kitchen"},
    {"bedroom", "bedroom"},
    {"garage", "garage"},
    {"office", "office"},
    {"hall", "hallway"},
}};

// Co-prime-ish cycling so neighbouring classes differ in several words, then
// a politeness prefix to extend past the 60 combinations of the cycle.
struct Template {
  std::string label;
  std::string transcript;
};

Template make_template(int c) {
  const int cycle = 60;  // lcm(6, 4, 5)
  const auto& a = kActions[c % kActions.size()];
  const auto& o = kObjects[c % kObjects.size()];
  const auto& r = kRooms[c % kRooms.size()];
  const bool polite = (c / cycle) % 2 == 1;
  Template t;
  t.label = std::string(a.key) + "_" + o.key + "_" + r.key + (polite ? "_polite" : "");
  t.transcript = std::string(polite ? "please " : "") + a.text + " the " +
                 o.text + " in the " + r.text;
  return t;
}

Matrix class_means(int n_classes, int feature_dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.5);
  Matrix best;
  double best_gap = -1.0;
  // Resample until every pair of means is at least 2 apart, keeping the most
  // separated draw if that never happens (e.g. F=1 with many classes).
  for (int attempt = 0; attempt < 100; ++attempt) {
    Matrix means(n_classes, feature_dim);
    for (Eigen::Index i = 0; i < means.size(); ++i) means.data()[i] = normal(rng);
    double gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_classes; ++i)
      for (int j = i + 1; j < n_classes; ++j)
        gap = std::min(gap, (means.row(i) - means.row(j)).norm());
    if (gap > best_gap) {
      best_gap = gap;
      best = std::move(means);
    }
    if (best_gap >= 2.0) break;
  }
  return best;
}

}  // namespace

SyntheticDataset generate_synthetic_dataset(int n_classes, int n_per_class,
                                            int feature_dim, Rng& rng) {
  if (n_classes < 2) throw InputError("synthetic dataset needs n_classes >= 2");
  if (n_classes > kMaxSyntheticClasses)
    throw InputError("synthetic dataset supports at most " +
                     std::to_string(kMaxSyntheticClasses) + " classes");
  if (n_per_class < 10)
    throw InputError("synthetic dataset needs n_per_class >= 10");
  if (feature_dim < 1) throw InputError("feature_dim must be >= 1");

  std::vector<std::string> labels;
  std::vector<std::string> transcripts;
  for (int c = 0; c < n_classes; ++c) {
    Template t = make_template(c);
    labels.push_back(t.label);
    transcripts.push_back(t.transcript);
  }
  const Matrix means = class_means(n_classes, feature_dim, rng);

  SyntheticDataset ds;
  for (DatasetSplit* s : {&ds.train, &ds.val, &ds.test}) {
    s->label_names = labels;
    s->feature_dim = feature_dim;
  }
  const int n_train = n_per_class * 8 / 10;
  const int n_val = n_per_class / 10;

  std::uniform_int_distribution<int> frames(8, 20);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int c = 0; c < n_classes; ++c) {
    for (int k = 0; k < n_per_class; ++k) {
      Utterance u;
      char id[32];
      std::snprintf(id, sizeof(id), "c%03d-%04d", c, k);
      u.id = id;
      u.features.resize(frames(rng), feature_dim);
      for (Eigen::Index t = 0; t < u.features.rows(); ++t)
        for (int f = 0; f < feature_dim; ++f)
          u.features(t, f) = means(c, f) + noise(rng);
      u.gt_transcript = transcripts[c];
      u.intent = c;
      DatasetSplit& dst = k < n_train ? ds.train
                          : k < n_train + n_val ? ds.val
                                                : ds.test;
      dst.utterances.push_back(std::move(u));
    }
  }
  for (DatasetSplit* s : {&ds.train, &ds.val, &ds.test})
    std::shuffle(s->utterances.begin(), s->utterances.end(), rng);
  return ds;
}

}  // namespace flexslu
