// tests/unit/commands_test.cc

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

#include "flexslu/cli/commands.h"

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "flexslu/data/manifest.h"
#include "flexslu/data/wer.h"
#include "support/temp_dir.h"

namespace flexslu {
namespace {

using testing::read_text;
using testing::TempDir;
using testing::write_text;
namespace fs = std::filesystem;

const char* kSmallModel =
    "model.embed_dim = 8\n"
    "acoustic.conv_layers = 8x2x2, 8x2x2, 8x2x2\n"
    "acoustic.recurrent_layers = 1\n"
    "acoustic.hidden_units = 8\n"
    "text.token_embed_dim = 8\n"
    "text.encoder_layers = 1\n"
    "text.hidden_dim = 8\n"
    "optimizer.max_epochs = 3\n"
    "adapt.epochs = 2\n";

struct CmdRun {
  int code = 0;
  std::string out, err;
};

template <typename Options, typename Fn>
CmdRun run(Fn fn, const Options& options) {
  std::ostringstream out, err;
  CmdRun r;
  r.code = fn(options, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

CmdRun synth(const fs::path& out, std::uint64_t seed, std::optional<double> wer,
          bool force = false) {
  SynthOptions o;
  o.seed = seed;
  o.target_wer = wer;
  o.out = out;
  o.force = force;
  return run(cmd_synth, o);
}

CmdRun train(const fs::path& config, const fs::path& out, bool force = false) {
  TrainOptions o;
  o.config = config;
  o.out = out;
  o.force = force;
  return run(cmd_train, o);
}

TEST(CmdSynth, WritesSplitsAndLabels) {
  TempDir dir;
  CmdRun r = synth(dir / "d", 1, 0.3);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(read_manifest_records(dir / "d" / "train.jsonl").records.size(), 240u);
  EXPECT_EQ(read_manifest_records(dir / "d" / "val.jsonl").records.size(), 30u);
  EXPECT_EQ(read_manifest_records(dir / "d" / "test.jsonl").records.size(), 30u);
  EXPECT_EQ(read_label_list(dir / "d" / "labels.txt").size(), 6u);
  auto load = load_manifest(dir / "d" / "train.jsonl");
  EXPECT_TRUE(load.split.has_asr_transcripts());
}

TEST(CmdSynth, CorpusWerNearTarget) {
  TempDir dir;
  SynthOptions o;
  o.seed = 4;
  o.target_wer = 0.3;
  o.n_classes = 24;
  o.n_per_class = 100;
  o.out = dir / "d";
  ASSERT_EQ(run(cmd_synth, o).code, kExitOk);
  std::vector<std::string> refs, hyps;
  for (const char* name : {"train.jsonl", "val.jsonl", "test.jsonl"}) {
    for (const auto& u : load_manifest(dir / "d" / name).split.utterances) {
      refs.push_back(u.gt_transcript);
      hyps.push_back(*u.asr_transcript);
    }
  }
  long words = 0;
  for (const auto& r : refs) words += static_cast<long>(split_words(r).size());
  ASSERT_GE(words, 10000);
  EXPECT_NEAR(corpus_wer(refs, hyps), 0.3, 0.02);
}

TEST(CmdSynth, SameSeedIsByteIdentical) {
  TempDir dir;
  ASSERT_EQ(synth(dir / "a", 9, 0.3).code, kExitOk);
  ASSERT_EQ(synth(dir / "b", 9, 0.3).code, kExitOk);
  for (const char* name : {"train.jsonl", "val.jsonl", "test.jsonl", "labels.txt"})
    EXPECT_EQ(read_text(dir / "a" / name), read_text(dir / "b" / name)) << name;
  ASSERT_EQ(synth(dir / "c", 10, 0.3).code, kExitOk);
  EXPECT_NE(read_text(dir / "a" / "train.jsonl"), read_text(dir / "c" / "train.jsonl"));
}

TEST(CmdSynth, NonEmptyOutputNeedsForce) {
  TempDir dir;
  write_text(dir / "d" / "keep.txt", "x");
  CmdRun r = synth(dir / "d", 1, std::nullopt);
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("--force"), std::string::npos);
  EXPECT_EQ(synth(dir / "d", 1, std::nullopt, true).code, kExitOk);
}

TEST(CmdSynth, NoSeedIsAnInputError) {
  TempDir dir;
  SynthOptions o;
  o.out = dir / "d";
  EXPECT_EQ(run(cmd_synth, o).code, kExitInput);
}

// Synthetic manifests plus a small-model config pointing at them.
struct Workspace {
  TempDir dir;
  fs::path config;
  explicit Workspace(const std::string& extra, bool with_asr = true) {
    EXPECT_EQ(synth(dir / "data", 5, with_asr ? std::optional<double>(0.3) : std::nullopt)
                  .code,
              kExitOk);
    config = dir / "run.cfg";
    write_text(config, std::string("seed = 3\n") + kSmallModel +
                           "data.source = manifest\n"
                           "data.train = data/train.jsonl\n"
                           "data.val = data/val.jsonl\n"
                           "data.test = data/test.jsonl\n" +
                           extra);
  }
};

TEST(CmdTrain, WritesCheckpoint) {
  Workspace ws("recipe = ats1\n");
  CmdRun r = train(ws.config, ws.dir / "ck");
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* name : {"acoustic.bundle", "text.bundle", "classifier.bundle", "vocab.txt",
                           "labels.txt", "metadata.json", "history.jsonl",
                           "config.resolved", "report.json"})
    EXPECT_TRUE(fs::exists(ws.dir / "ck" / name)) << name;
  auto meta = nlohmann::json::parse(read_text(ws.dir / "ck" / "metadata.json"));
  const int selected = meta.at("selected_epoch").get<int>();
  EXPECT_GE(selected, 1);
  EXPECT_LE(selected, 3);
  EXPECT_EQ(meta.at("recipe"), "ats1");
  Checkpoint ck = load_checkpoint(ws.dir / "ck");
  EXPECT_EQ(ck.selected_epoch, selected);
  EXPECT_EQ(ck.history.size(), 3u);
  EXPECT_EQ(ck.recipe, Recipe::kAts1);
  EXPECT_NE(r.out.find("selected epoch"), std::string::npos);
  // Existing output is protected.
  EXPECT_EQ(train(ws.config, ws.dir / "ck").code, kExitInput);
}

TEST(CmdTrain, SameSeedSameHistory) {
  Workspace ws("recipe = text-speech\n");
  ASSERT_EQ(train(ws.config, ws.dir / "a").code, kExitOk);
  ASSERT_EQ(train(ws.config, ws.dir / "b").code, kExitOk);
  const std::string history = read_text(ws.dir / "a" / "history.jsonl");
  EXPECT_FALSE(history.empty());
  EXPECT_EQ(history, read_text(ws.dir / "b" / "history.jsonl"));
  // The resolved config alone reproduces the run.
  ASSERT_EQ(train(ws.dir / "a" / "config.resolved", ws.dir / "c").code, kExitOk);
  EXPECT_EQ(history, read_text(ws.dir / "c" / "history.jsonl"));
}

TEST(CmdTrain, Ats1WithoutAsrFailsBeforeTraining) {
  Workspace ws("recipe = ats1\ncorruption.enabled = false\n", /*with_asr=*/false);
  CmdRun r = train(ws.config, ws.dir / "ck");
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("ASR"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(ws.dir / "ck"));
}

TEST(CmdTrain, CorruptionFillsMissingAsr) {
  Workspace ws("recipe = ats2\ncorruption.enabled = true\n", /*with_asr=*/false);
  CmdRun r = train(ws.config, ws.dir / "ck");
  EXPECT_EQ(r.code, kExitOk) << r.err;
}

TEST(CmdTrain, InvalidConfigIsExitTwo) {
  TempDir dir;
  write_text(dir / "bad.cfg", "seed = 1\noptimizer.batch_size = 0\n");
  CmdRun r = train(dir / "bad.cfg", dir / "ck");
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("optimizer.batch_size"), std::string::npos);
  EXPECT_EQ(train(dir / "missing.cfg", dir / "ck").code, kExitInput);
}

TEST(CmdEval, ReportColumnsAndAverage) {
  Workspace ws("recipe = text-speech\n");
  ASSERT_EQ(train(ws.config, ws.dir / "ck").code, kExitOk);
  EvalOptions o;
  o.checkpoints = {ws.dir / "ck"};
  o.test = ws.dir / "data" / "test.jsonl";
  o.out = ws.dir / "report.json";
  CmdRun r = run(cmd_eval, o);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("Average"), std::string::npos);
  auto report = nlohmann::json::parse(read_text(ws.dir / "report.json"));
  const auto& row = report.at("rows").at(0);
  for (const char* col : {"gt", "audio", "asr", "combined", "average"})
    EXPECT_TRUE(row.at(col).is_number()) << col;
  const double mean = (row.at("audio").get<double>() + row.at("asr").get<double>() +
                       row.at("combined").get<double>()) /
                      3.0;
  EXPECT_NEAR(row.at("average").get<double>(), mean, 1e-6);
}

TEST(CmdEval, MissingAsrGivesNullsAndWarning) {
  Workspace ws("recipe = text-speech\n", /*with_asr=*/false);
  ASSERT_EQ(train(ws.config, ws.dir / "ck").code, kExitOk);
  EvalOptions o;
  o.checkpoints = {ws.dir / "ck"};
  o.test = ws.dir / "data" / "test.jsonl";
  o.out = ws.dir / "report.json";
  CmdRun r = run(cmd_eval, o);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  auto row = nlohmann::json::parse(read_text(ws.dir / "report.json")).at("rows").at(0);
  EXPECT_TRUE(row.at("asr").is_null());
  EXPECT_TRUE(row.at("combined").is_null());
  EXPECT_TRUE(row.at("average").is_null());
  EXPECT_TRUE(row.at("audio").is_number());
}

TEST(EvalRow, AverageArithmetic) {
  EvalRow row{"m", 1.0, 0.8, 0.7, 0.9};
  EXPECT_NEAR(*row.average(), 0.8, 1e-12);
  row.asr.reset();
  EXPECT_FALSE(row.average().has_value());
  EvalReport report{{row}, {}};
  EXPECT_NE(report.to_table().find("-"), std::string::npos);
}

TEST(CmdPredict, TextRecordAndMissingModality) {
  Workspace ws("recipe = text-speech\n");
  ASSERT_EQ(train(ws.config, ws.dir / "ck").code, kExitOk);
  write_text(ws.dir / "one.jsonl",
             R"({"id": "q1", "gt_transcript": "turn on the lights in the kitchen"})"
             "\n");
  PredictOptions o;
  o.checkpoint = ws.dir / "ck";
  o.input = ws.dir / "one.jsonl";
  o.mode = "text-gt";
  CmdRun r = run(cmd_predict, o);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::vector<nlohmann::json> recs;
  while (std::getline(lines, line)) recs.push_back(nlohmann::json::parse(line));
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].at("id"), "q1");
  EXPECT_EQ(recs[0].at("mode"), "text");
  const auto labels = read_label_list(ws.dir / "ck" / "labels.txt");
  const auto name = recs[0].at("label_name").get<std::string>();
  EXPECT_NE(std::find(labels.begin(), labels.end(), name), labels.end());
  double sum = 0.0;
  for (double p : recs[0].at("probs")) sum += p;
  EXPECT_NEAR(sum, 1.0, 1e-6);

  o.mode = "combined";
  CmdRun missing = run(cmd_predict, o);
  EXPECT_EQ(missing.code, kExitInput);
  EXPECT_NE(missing.err.find("q1"), std::string::npos);
  o.mode = "telepathy";
  EXPECT_EQ(run(cmd_predict, o).code, kExitInput);
}

// The executable maps argument errors to exit code 2 as well.
TEST(Tool, BadArgumentsExitTwo) {
  const char* tool = std::getenv("FLEXSLU_TOOL");
  if (!tool) GTEST_SKIP() << "FLEXSLU_TOOL not set";
  auto status = [&](const std::string& args) {
    int s = std::system((std::string(tool) + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  EXPECT_EQ(status("--no-such-flag"), 2);
  EXPECT_EQ(status("train --recipe ats1"), 2);
  EXPECT_EQ(status("predict --checkpoint /nonexistent --input /nonexistent"), 2);
  EXPECT_EQ(status("--help"), 0);
}

}  // namespace
}  // namespace flexslu
