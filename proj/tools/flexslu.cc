// tools/flexslu.cc

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

// Command-line entry point: synth, train, eval and predict subcommands.

#include <iostream>

#include <CLI11.hpp>

#include "flexslu/cli/commands.h"

int main(int argc, char** argv) {
  using namespace flexslu;
  CLI::App app{"Flexible-input spoken language understanding toolkit"};
  app.require_subcommand(1);

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand(
      "synth", "Generate synthetic train/val/test manifests with ASR-like transcripts");
  synth_cmd->add_option("--config", synth.config, "Config file (synth.*, corruption.*, seed)");
  synth_cmd->add_option("--seed", synth.seed, "Random seed");
  synth_cmd->add_option("--classes", synth.n_classes, "Number of intent classes");
  synth_cmd->add_option("--per-class", synth.n_per_class, "Utterances per class");
  synth_cmd->add_option("--feature-dim", synth.feature_dim, "Feature dimension");
  synth_cmd->add_option("--wer", synth.target_wer,
                        "Fill asr_transcript by corruption at this word error rate");
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();
  synth_cmd->add_flag("--force", synth.force, "Replace a non-empty output directory");

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Train a model with one recipe");
  train_cmd->add_option("--config", train.config, "Run config file")->required();
  train_cmd->add_option("--recipe", train.recipe, "text-speech | ats1 | ats2");
  train_cmd->add_option("--seed", train.seed, "Random seed (overrides config)");
  train_cmd->add_option("--out", train.out, "Checkpoint directory")->required();
  train_cmd->add_flag("--force", train.force, "Replace an existing checkpoint");

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "GT/Audio/ASR/Combined/Average report");
  eval_cmd->add_option("--checkpoint", eval.checkpoints, "Checkpoint directory (repeatable)")
      ->required();
  eval_cmd->add_option("--test", eval.test, "Test manifest")->required();
  eval_cmd->add_option("--out", eval.out, "Write the report as JSON here");

  PredictOptions predict;
  auto* predict_cmd = app.add_subcommand("predict", "Predict intents for manifest records");
  predict_cmd->add_option("--checkpoint", predict.checkpoint, "Checkpoint directory")
      ->required();
  predict_cmd->add_option("--input", predict.input, "Records (manifest format)")->required();
  predict_cmd->add_option("--mode", predict.mode,
                          "audio | text-gt | text-asr | combined | combined-gt")
      ->capture_default_str();
  predict_cmd->add_option("--out", predict.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (*synth_cmd) return cmd_synth(synth, std::cout, std::cerr);
  if (*train_cmd) return cmd_train(train, std::cout, std::cerr);
  if (*eval_cmd) return cmd_eval(eval, std::cout, std::cerr);
  if (*predict_cmd) return cmd_predict(predict, std::cout, std::cerr);
  return kExitInput;
}
