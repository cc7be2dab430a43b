// tests/unit/acoustic_encoder_test.cc

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

#include <utility>

#include <gtest/gtest.h>

#include "flexslu/nn/adam.h"
#include "support/grad_check.h"

namespace flexslu {
namespace {

Matrix random_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = n(rng);
  return m;
}

AcousticConfig small_config() {
  AcousticConfig c;
  c.feature_dim = 3;
  c.conv_layers = {{8, 2, 2}, {8, 2, 2}, {8, 2, 2}};
  c.recurrent_layers = 2;
  c.hidden_units = 6;
  c.embed_dim = 5;
  return c;
}

AcousticConfig tiny_config() {
  AcousticConfig c;
  c.feature_dim = 2;
  c.conv_layers = {{4, 2, 2}};
  c.recurrent_layers = 1;
  c.hidden_units = 4;
  c.embed_dim = 3;
  return c;
}

std::vector<Matrix> snapshot(const ConstParameterRefs& ps) {
  std::vector<Matrix> out;
  for (const Parameter* p : ps) out.push_back(p->value);
  return out;
}

bool same(const std::vector<Matrix>& a, const ConstParameterRefs& ps) {
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (!(a[i].array() == ps[i]->value.array()).all()) return false;
  return true;
}

bool all_changed(const std::vector<Matrix>& a, const ConstParameterRefs& ps) {
  for (std::size_t i = 0; i < ps.size(); ++i)
    if ((a[i].array() == ps[i]->value.array()).all()) return false;
  return true;
}

// One optimizer step on a random linear loss of the embedding.
void train_steps(AcousticEncoder& enc, Adam& adam, int steps, Rng& rng) {
  for (int s = 0; s < steps; ++s) {
    for (Parameter* p : enc.parameters()) p->zero_grad();
    Matrix x = random_matrix(16, enc.config().feature_dim, rng);
    Vector w = random_matrix(enc.config().embed_dim, 1, rng);
    enc.backward(enc.forward_trace(x), w);
    std::vector<ParameterGroup> groups = {{1e-2, enc.trainable_parameters()}};
    adam.step(groups);
  }
}

TEST(AcousticEncoder, DefaultShapes) {
  AcousticConfig c;
  c.feature_dim = 8;
  Rng rng(1);
  AcousticEncoder enc(c, rng);
  EXPECT_EQ(enc.min_frames(), 8);
  AcousticOutput out = enc.forward(random_matrix(16, 8, rng));
  EXPECT_EQ(out.phoneme_seq.rows(), 2);
  EXPECT_EQ(out.phoneme_seq.cols(), 128);
  EXPECT_EQ(out.word_seq.rows(), 2);
  EXPECT_EQ(out.word_seq.cols(), 128);
  EXPECT_EQ(out.embedding.size(), 64);
}

TEST(AcousticEncoder, EmbeddingLengthForAnyValidLength) {
  Rng rng(2);
  AcousticEncoder enc(small_config(), rng);
  for (int t = enc.min_frames(); t < 40; ++t)
    EXPECT_EQ(enc.forward(random_matrix(t, 3, rng)).embedding.size(), 5);
}

TEST(AcousticEncoder, ShortInputNamesMinimum) {
  Rng rng(3);
  AcousticEncoder enc(small_config(), rng);
  try {
    enc.forward(random_matrix(7, 3, rng));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("8"), std::string::npos) << e.what();
  }
  EXPECT_THROW(enc.forward(random_matrix(16, 4, rng)), InputError);
}

TEST(AcousticEncoder, ZeroParametersGiveZeroEmbedding) {
  AcousticEncoder enc(small_config());
  Rng rng(4);
  EXPECT_TRUE(enc.forward(random_matrix(12, 3, rng)).embedding.isZero(0.0));
}

TEST(AcousticEncoder, Deterministic) {
  Rng rng(5);
  AcousticEncoder enc(small_config(), rng);
  Matrix x = random_matrix(13, 3, rng);
  EXPECT_EQ(enc.forward(x).embedding, enc.forward(x).embedding);
}

TEST(AcousticEncoder, EmbeddingIsProjectedMean) {
  Rng rng(6);
  AcousticEncoder enc(small_config(), rng);
  AcousticOutput out = enc.forward(random_matrix(17, 3, rng));
  auto proj = enc.parameters(AcousticSubmodule::kProjection);
  const Matrix& w = proj[0]->value;
  const Matrix& b = proj[1]->value;
  Vector mean = out.word_seq.colwise().mean().transpose();
  EXPECT_TRUE(out.embedding.isApprox(w * mean + b.col(0), 1e-12));
  // A single pooled row is passed through as is.
  AcousticOutput one = enc.forward(random_matrix(8, 3, rng));
  ASSERT_EQ(one.word_seq.rows(), 1);
  EXPECT_TRUE(one.embedding.isApprox(w * one.word_seq.row(0).transpose() + b.col(0)));
}

TEST(AcousticEncoder, GradientCheckTinyConfig) {
  Rng rng(7);
  AcousticEncoder enc(tiny_config(), rng);
  Matrix x = random_matrix(6, 2, rng);
  Vector w = random_matrix(3, 1, rng);
  for (Parameter* p : enc.parameters()) p->zero_grad();
  enc.backward(enc.forward_trace(x), w);
  auto errors = testing::check_gradients(
      enc.parameters(), [&] { return w.dot(enc.forward(x).embedding); });
  for (const auto& e : errors) EXPECT_LT(e.relative_error, 1e-4) << e.name;
}

TEST(AcousticEncoder, ParameterNamesBySubmodule) {
  AcousticEncoder enc(tiny_config());
  for (const Parameter* p : std::as_const(enc).parameters(AcousticSubmodule::kPhoneme))
    EXPECT_EQ(p->name.rfind("acoustic.phoneme.", 0), 0u) << p->name;
  for (const Parameter* p : std::as_const(enc).parameters(AcousticSubmodule::kWord))
    EXPECT_EQ(p->name.rfind("acoustic.word.", 0), 0u) << p->name;
  EXPECT_THROW(parse_acoustic_submodule("decoder"), InputError);
  EXPECT_THROW(enc.set_trainable("decoder", false), InputError);
}

TEST(AcousticEncoder, FreezePhonemeOnly) {
  Rng rng(8);
  AcousticEncoder enc(small_config(), rng);
  const AcousticEncoder& cenc = enc;
  enc.set_trainable("phoneme", false);
  auto phon = snapshot(cenc.parameters(AcousticSubmodule::kPhoneme));
  auto word = snapshot(cenc.parameters(AcousticSubmodule::kWord));
  Adam adam;
  train_steps(enc, adam, 5, rng);
  EXPECT_TRUE(same(phon, cenc.parameters(AcousticSubmodule::kPhoneme)));
  EXPECT_TRUE(all_changed(word, cenc.parameters(AcousticSubmodule::kWord)));
}

TEST(AcousticEncoder, FreezeAllThenUnfreeze) {
  Rng rng(9);
  AcousticEncoder enc(small_config(), rng);
  const AcousticEncoder& cenc = enc;
  for (auto s : {"phoneme", "word", "projection"}) enc.set_trainable(s, false);
  auto all = snapshot(cenc.parameters());
  Adam adam;
  train_steps(enc, adam, 5, rng);
  EXPECT_TRUE(same(all, cenc.parameters()));
  enc.set_trainable(AcousticSubmodule::kPhoneme, true);
  train_steps(enc, adam, 1, rng);
  auto phon = snapshot(cenc.parameters(AcousticSubmodule::kPhoneme));
  EXPECT_TRUE(all_changed(std::vector<Matrix>(all.begin(), all.begin() + phon.size()),
                          cenc.parameters(AcousticSubmodule::kPhoneme)));
}

TEST(AcousticEncoder, SaveLoadBitIdentical) {
  Rng rng(10);
  AcousticEncoder a(small_config(), rng);
  AcousticEncoder b(small_config());
  b.load_pretrained(a.save_bundle());
  Matrix x = random_matrix(20, 3, rng);
  EXPECT_TRUE((a.forward(x).embedding.array() == b.forward(x).embedding.array()).all());
}

TEST(AcousticEncoder, WrongHiddenSizeIsAnError) {
  Rng rng(11);
  AcousticConfig other = small_config();
  other.hidden_units = 7;
  AcousticEncoder a(other, rng);
  AcousticEncoder b(small_config(), rng);
  auto before = snapshot(std::as_const(b).parameters());
  try {
    b.load_pretrained(a.save_bundle());
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("acoustic.word.gru0"), std::string::npos)
        << e.what();
  }
  EXPECT_TRUE(same(before, std::as_const(b).parameters()));
}

TEST(AcousticEncoder, PartialLoadReplacesOnlyPhoneme) {
  Rng rng(12);
  AcousticEncoder src(small_config(), rng);
  AcousticEncoder dst(small_config(), rng);
  const AcousticEncoder& cdst = dst;
  TensorBundle phoneme_only = export_parameters(
      std::as_const(src).parameters(AcousticSubmodule::kPhoneme));
  auto word = snapshot(cdst.parameters(AcousticSubmodule::kWord));
  auto proj = snapshot(cdst.parameters(AcousticSubmodule::kProjection));
  EXPECT_ANY_THROW(dst.load_pretrained(phoneme_only));
  dst.load_pretrained(phoneme_only, true);
  EXPECT_TRUE(same(snapshot(std::as_const(src).parameters(AcousticSubmodule::kPhoneme)),
                   cdst.parameters(AcousticSubmodule::kPhoneme)));
  EXPECT_TRUE(same(word, cdst.parameters(AcousticSubmodule::kWord)));
  EXPECT_TRUE(same(proj, cdst.parameters(AcousticSubmodule::kProjection)));
}

TEST(AcousticConfig, Validate) {
  AcousticConfig c = small_config();
  EXPECT_NO_THROW(c.validate());
  c.conv_layers.clear();
  EXPECT_THROW(c.validate(), InputError);
  c = small_config();
  c.hidden_units = 0;
  EXPECT_THROW(c.validate(), InputError);
}

}  // namespace
}  // namespace flexslu
