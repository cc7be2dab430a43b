// src/cli/commands.cc

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

#include <fstream>
#include <ostream>

#include <json.hpp>

#include "flexslu/data/corruption.h"
#include "flexslu/data/encoded_split.h"
#include "flexslu/data/manifest.h"
#include "flexslu/data/synthetic.h"
#include "flexslu/inference/predict.h"
#include "flexslu/joint/trainer.h"

namespace flexslu {

namespace fs = std::filesystem;

Rng make_rng(std::uint64_t seed, RngStream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

namespace {

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

void check_same_labels(const DatasetSplit& ref, const DatasetSplit& other,
                       const char* what) {
  if (other.label_names != ref.label_names)
    throw InputError(std::string(what) + " split label list differs from train");
  if (!other.utterances.empty() && other.feature_dim != ref.feature_dim)
    throw InputError(std::string(what) + " split feature dim differs from train");
}

void fill_asr(DatasetSplit& split, double wer, const Vocabulary& vocab, Rng& rng) {
  for (auto& u : split.utterances)
    if (!u.asr_transcript)
      u.asr_transcript = corrupt_transcript(u.gt_transcript, wer, vocab, rng);
}

void prepare_output_dir(const fs::path& dir, bool force) {
  if (fs::exists(dir) && !fs::is_empty(dir)) {
    if (!force)
      throw InputError("output directory '" + dir.string() +
                       "' exists and is not empty (use --force)");
    fs::remove_all(dir);
  }
  fs::create_directories(dir);
}

}  // namespace

PreparedData prepare_data(const RunConfig& config) {
  PreparedData d;
  if (config.source == DataSource::kSynthetic) {
    Rng rng = make_rng(*config.seed, RngStream::kData);
    auto ds = generate_synthetic_dataset(config.synth.n_classes,
                                         config.synth.n_per_class,
                                         config.synth.feature_dim, rng);
    d.train = std::move(ds.train);
    d.val = std::move(ds.val);
    d.test = std::move(ds.test);
  } else {
    auto load = [&](const fs::path& p) {
      auto r = load_manifest(p, config.labels_file);
      d.rejected_empty.insert(d.rejected_empty.end(), r.rejected_empty.begin(),
                              r.rejected_empty.end());
      return std::move(r.split);
    };
    d.train = load(config.train_manifest);
    d.val = load(config.val_manifest);
    if (!config.test_manifest.empty()) d.test = load(config.test_manifest);
    if (d.train.utterances.empty()) throw InputError("training manifest is empty");
    check_same_labels(d.train, d.val, "validation");
    if (d.test) check_same_labels(d.train, *d.test, "test");
  }

  std::vector<std::string> gt;
  for (const auto& u : d.train.utterances) gt.push_back(u.gt_transcript);
  if (config.corruption.enabled) {
    const Vocabulary gt_vocab = build_vocabulary(gt, config.min_count);
    Rng rng = make_rng(*config.seed, RngStream::kCorruption);
    fill_asr(d.train, config.corruption.target_wer, gt_vocab, rng);
    fill_asr(d.val, config.corruption.target_wer, gt_vocab, rng);
    if (d.test) fill_asr(*d.test, config.corruption.target_wer, gt_vocab, rng);
  }
  std::vector<std::string> corpus = gt;
  for (const auto& u : d.train.utterances)
    if (u.asr_transcript) corpus.push_back(*u.asr_transcript);
  d.vocab = build_vocabulary(corpus, config.min_count);
  return d;
}

TrainOutcome train_from_config(const RunConfig& config) {
  config.validate();
  PreparedData data = prepare_data(config);
  const EncodedSplit train = encode_split(data.train, data.vocab);
  const EncodedSplit val = encode_split(data.val, data.vocab);
  check_recipe_data(config.recipe, train);

  AcousticConfig ac = config.acoustic;
  ac.feature_dim = data.train.feature_dim;
  ac.embed_dim = config.embed_dim;
  TextConfig tc = config.text;
  tc.vocab_size = data.vocab.size();
  tc.embed_dim = config.embed_dim;
  Rng init_rng = make_rng(*config.seed, RngStream::kModelInit);
  JointModel model(ac, tc, data.train.num_classes(), init_rng);
  if (config.acoustic_pretrained)
    model.acoustic.load_pretrained(TensorBundle::load(*config.acoustic_pretrained),
                                   /*partial=*/true);
  if (config.text_pretrained)
    model.text.load_pretrained(TensorBundle::load(*config.text_pretrained),
                               /*partial=*/true);

  TrainingConfig tcfg;
  tcfg.recipe = config.recipe;
  tcfg.loss = config.loss;
  tcfg.optimizer.lr_acoustic = config.lr_acoustic;
  tcfg.optimizer.lr_text = config.resolved_lr_text();
  tcfg.optimizer.batch_size = config.batch_size;
  tcfg.optimizer.max_epochs = config.max_epochs;
  tcfg.adapt = config.adapt;
  Rng train_rng = make_rng(*config.seed, RngStream::kTraining);
  RecipeResult result = run_recipe(model, train, val, tcfg, train_rng);

  TrainOutcome outcome{Checkpoint{std::move(result.best), data.vocab,
                                  data.train.label_names, config.recipe,
                                  *config.seed, result.selected_epoch,
                                  std::move(result.history)},
                       std::nullopt, data.rejected_empty};
  if (data.test && !data.test->utterances.empty()) {
    EvalReport report;
    report.rows.push_back(evaluate_row(std::string(recipe_name(config.recipe)),
                                       outcome.checkpoint.model,
                                       encode_split(*data.test, data.vocab),
                                       report.warnings));
    outcome.test_report = std::move(report);
  }
  return outcome;
}

int cmd_train(const TrainOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunConfig config = RunConfig::load(options.config);
    if (options.recipe) config.recipe = parse_recipe(*options.recipe);
    if (options.seed) config.seed = *options.seed;
    config.validate();
    if (options.out.empty()) throw InputError("--out is required");
    if (fs::exists(options.out) && !fs::is_empty(options.out) && !options.force)
      throw InputError("output directory '" + options.out.string() +
                       "' exists and is not empty (use --force)");

    TrainOutcome outcome = train_from_config(config);
    if (!outcome.rejected_empty.empty())
      err << "rejected " << outcome.rejected_empty.size()
          << " utterances with empty audio\n";
    std::vector<std::pair<std::string, std::string>> extra{
        {"config.resolved", config.to_text()}};
    if (outcome.test_report)
      extra.emplace_back("report.json", outcome.test_report->to_json().dump(2) + "\n");
    save_checkpoint(outcome.checkpoint, options.out, options.force, extra);

    const auto& ck = outcome.checkpoint;
    const auto& best = ck.history.at(static_cast<std::size_t>(ck.selected_epoch - 1));
    out << "recipe " << recipe_name(ck.recipe) << ": selected epoch "
        << ck.selected_epoch << " of " << ck.history.size()
        << " (audio val " << best.audio_val_acc << ", text val "
        << best.text_val_acc << ")\n";
    if (outcome.test_report) {
      out << outcome.test_report->to_table();
      for (const auto& w : outcome.test_report->warnings) err << "warning: " << w << '\n';
    }
    out << "checkpoint written to " << options.out.string() << '\n';
    return kExitOk;
  });
}

int cmd_eval(const EvalOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (options.checkpoints.empty()) throw InputError("no checkpoint given");
    const ManifestContents records = read_manifest_records(options.test);
    EvalReport report;
    for (const auto& path : options.checkpoints) {
      Checkpoint ck = load_checkpoint(path);
      EncodedSplit test = encode_records(records.records, ck.labels, ck.vocab);
      if (test.items.empty()) throw InputError("test manifest has no records");
      for (const auto& u : test.items)
        if (!u.intent) throw InputError("test record '" + u.id + "' has no intent");
      std::string name = std::string(recipe_name(ck.recipe));
      if (options.checkpoints.size() > 1) name += " (" + path.filename().string() + ")";
      report.rows.push_back(evaluate_row(name, ck.model, test, report.warnings));
    }
    out << report.to_table();
    for (const auto& w : report.warnings) err << "warning: " << w << '\n';
    if (options.out) {
      std::ofstream os(*options.out);
      if (!os) throw InputError("cannot write '" + options.out->string() + "'");
      os << report.to_json().dump(2) << '\n';
    }
    return kExitOk;
  });
}

int cmd_predict(const PredictOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const InputMode mode = parse_input_mode(options.mode);
    Checkpoint ck = load_checkpoint(options.checkpoint);
    const ManifestContents records = read_manifest_records(options.input);
    EncodedSplit split = encode_records(records.records, ck.labels, ck.vocab);
    BatchPrediction result = batch_predict(ck.model, split, mode);

    std::ofstream file;
    std::ostream* os = &out;
    if (options.out) {
      file.open(*options.out);
      if (!file) throw InputError("cannot write '" + options.out->string() + "'");
      os = &file;
    }
    for (std::size_t i = 0; i < result.predictions.size(); ++i) {
      const Prediction& p = result.predictions[i];
      nlohmann::json rec;
      rec["id"] = result.ids[i];
      rec["mode"] = std::string(prediction_mode_name(p.mode));
      rec["label_name"] = ck.labels.at(static_cast<std::size_t>(p.label));
      rec["probs"] = std::vector<double>(p.probs.data(), p.probs.data() + p.probs.size());
      *os << rec.dump() << '\n';
    }
    if (result.accuracy)
      err << "accuracy " << *result.accuracy << " over " << result.predictions.size()
          << " records\n";
    return kExitOk;
  });
}

int cmd_synth(const SynthOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunConfig config;
    if (options.config) config = RunConfig::load(*options.config);
    config.source = DataSource::kSynthetic;
    if (options.seed) config.seed = *options.seed;
    if (options.n_classes) config.synth.n_classes = *options.n_classes;
    if (options.n_per_class) config.synth.n_per_class = *options.n_per_class;
    if (options.feature_dim) config.synth.feature_dim = *options.feature_dim;
    if (options.target_wer) {
      config.corruption.enabled = true;
      config.corruption.target_wer = *options.target_wer;
    }
    config.validate();
    if (options.out.empty()) throw InputError("--out is required");
    prepare_output_dir(options.out, options.force);

    PreparedData d = prepare_data(config);
    save_manifest_records(d.train, options.out / "train.jsonl");
    save_manifest_records(d.val, options.out / "val.jsonl");
    save_manifest_records(*d.test, options.out / "test.jsonl");
    write_label_list(d.train.label_names, options.out / "labels.txt");
    out << "wrote " << d.train.size() << "/" << d.val.size() << "/"
        << d.test->size() << " utterances to " << options.out.string() << '\n';
    return kExitOk;
  });
}

}  // namespace flexslu
