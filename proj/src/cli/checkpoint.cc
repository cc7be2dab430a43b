// src/cli/checkpoint.cc

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

#include "flexslu/cli/checkpoint.h"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "flexslu/data/manifest.h"

namespace flexslu {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json acoustic_to_json(const AcousticConfig& c) {
  json conv = json::array();
  for (const auto& s : c.conv_layers)
    conv.push_back({{"out_channels", s.out_channels},
                    {"kernel", s.kernel},
                    {"stride", s.stride}});
  return {{"feature_dim", c.feature_dim},
          {"conv_layers", conv},
          {"recurrent_layers", c.recurrent_layers},
          {"hidden_units", c.hidden_units},
          {"embed_dim", c.embed_dim}};
}

AcousticConfig acoustic_from_json(const json& j) {
  AcousticConfig c;
  c.feature_dim = j.at("feature_dim").get<int>();
  c.conv_layers.clear();
  for (const auto& s : j.at("conv_layers"))
    c.conv_layers.push_back({s.at("out_channels").get<int>(),
                             s.at("kernel").get<int>(), s.at("stride").get<int>()});
  c.recurrent_layers = j.at("recurrent_layers").get<int>();
  c.hidden_units = j.at("hidden_units").get<int>();
  c.embed_dim = j.at("embed_dim").get<int>();
  return c;
}

json text_to_json(const TextConfig& c) {
  return {{"vocab_size", c.vocab_size},
          {"token_embed_dim", c.token_embed_dim},
          {"encoder_layers", c.encoder_layers},
          {"hidden_dim", c.hidden_dim},
          {"embed_dim", c.embed_dim}};
}

TextConfig text_from_json(const json& j) {
  TextConfig c;
  c.vocab_size = j.at("vocab_size").get<int>();
  c.token_embed_dim = j.at("token_embed_dim").get<int>();
  c.encoder_layers = j.at("encoder_layers").get<int>();
  c.hidden_dim = j.at("hidden_dim").get<int>();
  c.embed_dim = j.at("embed_dim").get<int>();
  return c;
}

json metrics_to_json(const EpochMetrics& m) {
  return {{"epoch", m.epoch},
          {"audio_val_acc", m.audio_val_acc},
          {"text_val_acc", m.text_val_acc},
          {"acoustic_ce", m.losses.acoustic_ce},
          {"text_ce", m.losses.text_ce},
          {"triplet", m.losses.triplet},
          {"total", m.total_loss}};
}

EpochMetrics metrics_from_json(const json& j) {
  EpochMetrics m;
  m.epoch = j.at("epoch").get<int>();
  m.audio_val_acc = j.at("audio_val_acc").get<double>();
  m.text_val_acc = j.at("text_val_acc").get<double>();
  m.losses.acoustic_ce = j.at("acoustic_ce").get<double>();
  m.losses.text_ce = j.at("text_ce").get<double>();
  m.losses.triplet = j.at("triplet").get<double>();
  m.total_loss = j.at("total").get<double>();
  return m;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write '" + path.string() + "'");
  os << text;
}

}  // namespace

std::string history_to_jsonl(const std::vector<EpochMetrics>& history) {
  std::string out;
  for (const auto& m : history) out += metrics_to_json(m).dump() + "\n";
  return out;
}

void save_checkpoint(
    const Checkpoint& ckpt, const fs::path& dir, bool force,
    const std::vector<std::pair<std::string, std::string>>& extra_files) {
  if (fs::exists(dir) && !fs::is_empty(dir) && !force)
    throw InputError("output directory '" + dir.string() +
                     "' exists and is not empty (use --force)");
  fs::path target = fs::absolute(dir).lexically_normal();
  if (target.filename().empty()) target = target.parent_path();
  fs::path tmp = target;
  tmp += ".tmp";
  fs::remove_all(tmp);
  fs::create_directories(tmp);

  ckpt.model.acoustic.save_bundle().save(tmp / "acoustic.bundle");
  ckpt.model.text.save_bundle().save(tmp / "text.bundle");
  ckpt.model.classifier_bundle().save(tmp / "classifier.bundle");
  {
    std::ofstream os(tmp / "vocab.txt", std::ios::binary);
    ckpt.vocab.save(os);
  }
  write_label_list(ckpt.labels, tmp / "labels.txt");

  json meta;
  meta["format"] = "flexslu-checkpoint-1";
  meta["recipe"] = std::string(recipe_name(ckpt.recipe));
  meta["seed"] = ckpt.seed;
  meta["acoustic"] = acoustic_to_json(ckpt.model.acoustic.config());
  meta["text"] = text_to_json(ckpt.model.text.config());
  meta["num_classes"] = ckpt.model.num_classes();
  meta["selected_epoch"] = ckpt.selected_epoch;
  json hist = json::array();
  for (const auto& m : ckpt.history) hist.push_back(metrics_to_json(m));
  meta["history"] = hist;
  write_text(tmp / "metadata.json", meta.dump(2) + "\n");
  write_text(tmp / "history.jsonl", history_to_jsonl(ckpt.history));
  for (const auto& [name, contents] : extra_files) write_text(tmp / name, contents);

  if (fs::exists(target)) fs::remove_all(target);
  fs::rename(tmp, target);
}

Checkpoint load_checkpoint(const fs::path& dir) {
  const fs::path meta_path = dir / "metadata.json";
  std::ifstream is(meta_path);
  if (!is) throw InputError("'" + dir.string() + "' is not a checkpoint (no metadata.json)");
  json meta;
  try {
    meta = json::parse(is);
    AcousticConfig ac = acoustic_from_json(meta.at("acoustic"));
    TextConfig tc = text_from_json(meta.at("text"));
    const int num_classes = meta.at("num_classes").get<int>();
    Checkpoint ck{JointModel(ac, tc, num_classes), Vocabulary(), {},
                  parse_recipe(meta.at("recipe").get<std::string>()),
                  meta.at("seed").get<std::uint64_t>(),
                  meta.at("selected_epoch").get<int>(),
                  {}};
    for (const auto& m : meta.at("history")) ck.history.push_back(metrics_from_json(m));
    ck.model.acoustic.load_pretrained(TensorBundle::load(dir / "acoustic.bundle"));
    ck.model.text.load_pretrained(TensorBundle::load(dir / "text.bundle"));
    ck.model.load_classifier(TensorBundle::load(dir / "classifier.bundle"));
    std::ifstream vs(dir / "vocab.txt");
    if (!vs) throw InputError("checkpoint '" + dir.string() + "' has no vocab.txt");
    ck.vocab = Vocabulary::load(vs);
    ck.labels = read_label_list(dir / "labels.txt");
    if (ck.vocab.size() != tc.vocab_size)
      throw InputError("checkpoint vocabulary size does not match the text encoder");
    if (static_cast<int>(ck.labels.size()) != num_classes)
      throw InputError("checkpoint label count does not match the classifier");
    return ck;
  } catch (const json::exception& e) {
    throw InputError("checkpoint '" + dir.string() + "': bad metadata: " + e.what());
  }
}

}  // namespace flexslu
