// tests/unit/synthetic_test.cc

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

#include <limits>
#include <set>

#include <gtest/gtest.h>

namespace flexslu {
namespace {

TEST(Synthetic, SplitSizes) {
  Rng rng(1);
  auto d = generate_synthetic_dataset(6, 50, 8, rng);
  EXPECT_EQ(d.train.size(), 240u);
  EXPECT_EQ(d.val.size(), 30u);
  EXPECT_EQ(d.test.size(), 30u);
  for (const DatasetSplit* s : {&d.train, &d.val, &d.test}) {
    EXPECT_NO_THROW(s->validate());
    EXPECT_EQ(s->num_classes(), 6);
    EXPECT_EQ(s->feature_dim, 8);
    EXPECT_FALSE(s->has_asr_transcripts());
    std::vector<int> per_class(6, 0);
    for (int c : s->intents()) ++per_class[c];
    for (int n : per_class) EXPECT_EQ(n * 6, static_cast<int>(s->size()));
  }
}

TEST(Synthetic, FrameCountsInRange) {
  Rng rng(2);
  auto d = generate_synthetic_dataset(4, 20, 3, rng);
  for (const auto& u : d.train.utterances) {
    EXPECT_GE(u.features.rows(), 8);
    EXPECT_LE(u.features.rows(), 20);
  }
}

TEST(Synthetic, TranscriptsSharedWithinAndDistinctAcrossClasses) {
  Rng rng(3);
  auto d = generate_synthetic_dataset(kMaxSyntheticClasses, 10, 2, rng);
  std::vector<std::string> by_class(kMaxSyntheticClasses);
  for (const DatasetSplit* s : {&d.train, &d.val, &d.test}) {
    for (const auto& u : s->utterances) {
      if (by_class[u.intent].empty()) by_class[u.intent] = u.gt_transcript;
      EXPECT_EQ(u.gt_transcript, by_class[u.intent]);
    }
  }
  EXPECT_EQ(std::set<std::string>(by_class.begin(), by_class.end()).size(),
            static_cast<std::size_t>(kMaxSyntheticClasses));
}

TEST(Synthetic, Errors) {
  Rng rng(1);
  EXPECT_THROW(generate_synthetic_dataset(1, 50, 8, rng), InputError);
  EXPECT_THROW(generate_synthetic_dataset(6, 9, 8, rng), InputError);
  EXPECT_THROW(generate_synthetic_dataset(6, 50, 0, rng), InputError);
  EXPECT_THROW(generate_synthetic_dataset(kMaxSyntheticClasses + 1, 10, 8, rng),
               InputError);
}

TEST(Synthetic, Deterministic) {
  Rng a(9), b(9);
  auto x = generate_synthetic_dataset(5, 20, 4, a);
  auto y = generate_synthetic_dataset(5, 20, 4, b);
  EXPECT_EQ(x.train, y.train);
  EXPECT_EQ(x.test, y.test);
}

// Nearest class mean over per-utterance averaged frames, with means
// estimated from train only.
double nearest_centroid_accuracy(const SyntheticDataset& d) {
  const int C = d.train.num_classes();
  Matrix sums = Matrix::Zero(C, d.train.feature_dim);
  Vector counts = Vector::Zero(C);
  for (const auto& u : d.train.utterances) {
    sums.row(u.intent) += u.features.colwise().mean();
    counts(u.intent) += 1;
  }
  for (int c = 0; c < C; ++c) sums.row(c) /= counts(c);
  int correct = 0;
  for (const auto& u : d.test.utterances) {
    Eigen::RowVectorXd x = u.features.colwise().mean();
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int c = 0; c < C; ++c) {
      double dist = (sums.row(c) - x).squaredNorm();
      if (dist < best_d) {
        best_d = dist;
        best = c;
      }
    }
    correct += best == u.intent;
  }
  return static_cast<double>(correct) / static_cast<double>(d.test.size());
}

TEST(Synthetic, LinearlySeparableByNearestCentroid) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    Rng rng(seed);
    auto d = generate_synthetic_dataset(6, 100, 8, rng);
    EXPECT_GE(nearest_centroid_accuracy(d), 0.99) << "seed " << seed;
  }
}

}  // namespace
}  // namespace flexslu
