// tests/unit/config_test.cc

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

#include "flexslu/cli/config.h"

#include <gtest/gtest.h>

#include "support/temp_dir.h"

namespace flexslu {
namespace {

using testing::TempDir;
using testing::write_text;

RunConfig parse(const std::string& text, const std::filesystem::path& base = "/") {
  return RunConfig::from_keys(KeyValueFile::parse(text, "test"), base);
}

std::string error_of(const std::string& text) {
  try {
    RunConfig c = parse(text);
    c.validate();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

TEST(KeyValueFile, CommentsWhitespaceAndDuplicates) {
  auto kv = KeyValueFile::parse("# header\n a.b = 1  # trailing\n\nc=two words\n", "x");
  EXPECT_EQ(kv.get("a.b"), std::optional<std::string>("1"));
  EXPECT_EQ(kv.get("c"), std::optional<std::string>("two words"));
  EXPECT_FALSE(kv.get("zzz").has_value());
  EXPECT_THROW(KeyValueFile::parse("a = 1\na = 2\n", "x"), InputError);
  EXPECT_THROW(KeyValueFile::parse("no equals sign\n", "x"), InputError);
  EXPECT_THROW(KeyValueFile::parse(" = 3\n", "x"), InputError);
}

TEST(RunConfig, DefaultsAndOverrides) {
  RunConfig c = parse(
      "seed = 7\nrecipe = ats1\nloss.margin = 0.25\nloss.lambda2 = 2\n"
      "acoustic.conv_layers = 16x3x1, 8x2x2\noptimizer.max_epochs = 4\n"
      "corruption.enabled = true\n");
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.seed, std::optional<std::uint64_t>(7));
  EXPECT_EQ(c.recipe, Recipe::kAts1);
  EXPECT_EQ(c.loss.margin, 0.25);
  EXPECT_EQ(c.loss.lambda1, 1.0);
  EXPECT_EQ(c.loss.lambda2, 2.0);
  ASSERT_EQ(c.acoustic.conv_layers.size(), 2u);
  EXPECT_EQ(c.acoustic.conv_layers[0], (ConvSpec{16, 3, 1}));
  EXPECT_EQ(c.max_epochs, 4);
  EXPECT_TRUE(c.corruption.enabled);
  EXPECT_EQ(c.synth.n_classes, 6);
  EXPECT_EQ(c.acoustic.recurrent_layers, 4);
  EXPECT_EQ(c.acoustic.hidden_units, 128);
  EXPECT_EQ(c.embed_dim, 64);
  EXPECT_EQ(c.batch_size, 16);
  EXPECT_EQ(c.lr_acoustic, 1e-3);
}

TEST(RunConfig, TextLearningRateResolution) {
  TempDir dir;
  write_text(dir / "text.bundle", "");
  RunConfig scratch = parse("seed = 1\n");
  EXPECT_EQ(scratch.resolved_lr_text(), 1e-3);
  RunConfig warm = parse("seed = 1\ntext.pretrained = text.bundle\n", dir.path());
  EXPECT_EQ(warm.resolved_lr_text(), 2e-5);
  RunConfig explicit_lr = parse("seed = 1\noptimizer.lr_t = 0.5\n");
  EXPECT_EQ(explicit_lr.resolved_lr_text(), 0.5);
  RunConfig auto_lr = parse("seed = 1\noptimizer.lr_t = auto\n");
  EXPECT_EQ(auto_lr.resolved_lr_text(), 1e-3);
}

TEST(RunConfig, FieldLevelErrors) {
  EXPECT_NE(error_of("recipe = ats1\n").find("seed"), std::string::npos);
  EXPECT_NE(error_of("seed = 1\nbogus.key = 3\n").find("bogus.key"), std::string::npos);
  EXPECT_NE(error_of("seed = 1\noptimizer.batch_size = many\n").find("optimizer.batch_size"),
            std::string::npos);
  EXPECT_NE(error_of("seed = 1\noptimizer.batch_size = 0\n").find("optimizer.batch_size"),
            std::string::npos);
  EXPECT_NE(error_of("seed = 1\nloss.margin = -1\n").find("loss.margin"), std::string::npos);
  EXPECT_NE(error_of("seed = 1\nrecipe = ats9\n").find("ats9"), std::string::npos);
  EXPECT_NE(error_of("seed = 1\ncorruption.target_wer = 1\n").find("corruption.target_wer"),
            std::string::npos);
  EXPECT_NE(error_of("seed = 1\nacoustic.conv_layers = 3x\n").find("acoustic.conv_layers"),
            std::string::npos);
  EXPECT_NE(error_of("seed = 1\ndata.source = manifest\ndata.train = /nope/t.jsonl\n"
                     "data.val = /nope/v.jsonl\n")
                .find("data.train"),
            std::string::npos);
  EXPECT_NE(error_of("seed = 1\ncorruption.enabled = maybe\n").find("corruption.enabled"),
            std::string::npos);
}

TEST(RunConfig, RelativePathsResolveAgainstConfigDir) {
  TempDir dir;
  write_text(dir / "data" / "train.jsonl", "");
  write_text(dir / "data" / "val.jsonl", "");
  write_text(dir / "run.cfg",
             "seed = 3\ndata.source = manifest\ndata.train = data/train.jsonl\n"
             "data.val = data/val.jsonl\n");
  RunConfig c = RunConfig::load(dir / "run.cfg");
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.train_manifest, dir / "data" / "train.jsonl");
}

TEST(RunConfig, ResolvedTextRoundTrips) {
  RunConfig c = parse(
      "seed = 11\nrecipe = ats2\nloss.lambda1 = 0.1\noptimizer.lr_a = 0.0003\n"
      "acoustic.conv_layers = 4x2x2\nadapt.epochs = 3\ncorruption.target_wer = 0.3\n");
  const std::string text = c.to_text();
  RunConfig back = parse(text);
  EXPECT_EQ(back.to_text(), text);
  EXPECT_EQ(back.recipe, Recipe::kAts2);
  EXPECT_EQ(back.loss, c.loss);
  EXPECT_EQ(back.lr_acoustic, 0.0003);
  EXPECT_EQ(back.acoustic.conv_layers, c.acoustic.conv_layers);
  EXPECT_EQ(back.adapt.epochs, 3);
  EXPECT_EQ(back.resolved_lr_text(), c.resolved_lr_text());
  EXPECT_NE(text.find("optimizer.lr_t = 0.001"), std::string::npos) << text;
}

TEST(FormatDouble, ParsesBackExactly) {
  for (double v : {0.1, 1.0 / 3.0, 2e-5, 1e300, 0.0})
    EXPECT_EQ(std::stod(format_double(v)), v);
}

}  // namespace
}  // namespace flexslu
