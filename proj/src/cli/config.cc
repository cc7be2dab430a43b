// src/cli/config.cc

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

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace flexslu {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const std::string& expected) {
  throw InputError("config key '" + key + "': invalid value '" + value +
                   "' (expected " + expected + ")");
}

int parse_int(const std::string& key, const std::string& v) {
  int out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) bad_value(key, v, "an integer");
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    bad_value(key, v, "a non-negative integer");
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) bad_value(key, v, "a number");
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_value(key, v, "true or false");
}

// "128x2x2,128x2x2" -> out_channels x kernel x stride per layer.
std::vector<ConvSpec> parse_conv_layers(const std::string& key,
                                        const std::string& v) {
  std::vector<ConvSpec> layers;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    ConvSpec spec;
    int fields[3];
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
      std::size_t next = i < 2 ? item.find('x', pos) : item.size();
      if (next == std::string::npos) bad_value(key, v, "OUTxKERNELxSTRIDE,...");
      fields[i] = parse_int(key, item.substr(pos, next - pos));
      pos = next + 1;
    }
    spec.out_channels = fields[0];
    spec.kernel = fields[1];
    spec.stride = fields[2];
    layers.push_back(spec);
  }
  if (layers.empty()) bad_value(key, v, "OUTxKERNELxSTRIDE,...");
  return layers;
}

fs::path resolve(const fs::path& base, const std::string& v) {
  fs::path p = v;
  if (p.is_relative()) p = base / p;
  return p.lexically_normal();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

KeyValueFile KeyValueFile::parse(const std::string& text,
                                 const std::string& origin) {
  KeyValueFile kv;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError(origin + ":" + std::to_string(lineno) +
                       ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw InputError(origin + ":" + std::to_string(lineno) + ": empty key");
    if (!kv.values_.emplace(key, value).second)
      throw InputError(origin + ":" + std::to_string(lineno) +
                       ": duplicate key '" + key + "'");
  }
  return kv;
}

KeyValueFile KeyValueFile::load(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open config '" + path.string() + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse(ss.str(), path.string());
}

std::optional<std::string> KeyValueFile::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

RunConfig RunConfig::from_keys(const KeyValueFile& kv, const fs::path& base_dir) {
  RunConfig c;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"seed", [&](auto& k, auto& v) { c.seed = parse_u64(k, v); }},
      {"recipe", [&](auto&, auto& v) { c.recipe = parse_recipe(v); }},
      {"data.source",
       [&](auto& k, auto& v) {
         if (v == "synthetic") c.source = DataSource::kSynthetic;
         else if (v == "manifest") c.source = DataSource::kManifest;
         else bad_value(k, v, "synthetic or manifest");
       }},
      {"data.train", [&](auto&, auto& v) { c.train_manifest = resolve(base_dir, v); }},
      {"data.val", [&](auto&, auto& v) { c.val_manifest = resolve(base_dir, v); }},
      {"data.test", [&](auto&, auto& v) { c.test_manifest = resolve(base_dir, v); }},
      {"data.labels", [&](auto&, auto& v) { c.labels_file = resolve(base_dir, v); }},
      {"synth.n_classes", [&](auto& k, auto& v) { c.synth.n_classes = parse_int(k, v); }},
      {"synth.n_per_class", [&](auto& k, auto& v) { c.synth.n_per_class = parse_int(k, v); }},
      {"synth.feature_dim", [&](auto& k, auto& v) { c.synth.feature_dim = parse_int(k, v); }},
      {"corruption.enabled", [&](auto& k, auto& v) { c.corruption.enabled = parse_bool(k, v); }},
      {"corruption.target_wer", [&](auto& k, auto& v) { c.corruption.target_wer = parse_double(k, v); }},
      {"model.embed_dim", [&](auto& k, auto& v) { c.embed_dim = parse_int(k, v); }},
      {"acoustic.conv_layers", [&](auto& k, auto& v) { c.acoustic.conv_layers = parse_conv_layers(k, v); }},
      {"acoustic.recurrent_layers", [&](auto& k, auto& v) { c.acoustic.recurrent_layers = parse_int(k, v); }},
      {"acoustic.hidden_units", [&](auto& k, auto& v) { c.acoustic.hidden_units = parse_int(k, v); }},
      {"acoustic.pretrained", [&](auto&, auto& v) { c.acoustic_pretrained = resolve(base_dir, v); }},
      {"text.token_embed_dim", [&](auto& k, auto& v) { c.text.token_embed_dim = parse_int(k, v); }},
      {"text.encoder_layers", [&](auto& k, auto& v) { c.text.encoder_layers = parse_int(k, v); }},
      {"text.hidden_dim", [&](auto& k, auto& v) { c.text.hidden_dim = parse_int(k, v); }},
      {"text.min_count", [&](auto& k, auto& v) { c.min_count = parse_int(k, v); }},
      {"text.pretrained", [&](auto&, auto& v) { c.text_pretrained = resolve(base_dir, v); }},
      {"loss.margin", [&](auto& k, auto& v) { c.loss.margin = parse_double(k, v); }},
      {"loss.lambda1", [&](auto& k, auto& v) { c.loss.lambda1 = parse_double(k, v); }},
      {"loss.lambda2", [&](auto& k, auto& v) { c.loss.lambda2 = parse_double(k, v); }},
      {"optimizer.lr_a", [&](auto& k, auto& v) { c.lr_acoustic = parse_double(k, v); }},
      {"optimizer.lr_t",
       [&](auto& k, auto& v) {
         if (v == "auto") c.lr_text.reset();
         else c.lr_text = parse_double(k, v);
       }},
      {"optimizer.batch_size", [&](auto& k, auto& v) { c.batch_size = parse_int(k, v); }},
      {"optimizer.max_epochs", [&](auto& k, auto& v) { c.max_epochs = parse_int(k, v); }},
      {"adapt.epochs", [&](auto& k, auto& v) { c.adapt.epochs = parse_int(k, v); }},
      {"adapt.lr", [&](auto& k, auto& v) { c.adapt.learning_rate = parse_double(k, v); }},
      {"adapt.batch_size", [&](auto& k, auto& v) { c.adapt.batch_size = parse_int(k, v); }},
  };
  for (const auto& [key, value] : kv.values()) {
    auto it = setters.find(key);
    if (it == setters.end()) throw InputError("unknown config key '" + key + "'");
    it->second(key, value);
  }
  return c;
}

RunConfig RunConfig::load(const fs::path& path) {
  return from_keys(KeyValueFile::load(path),
                   fs::absolute(path).parent_path());
}

void RunConfig::validate() const {
  if (!seed) throw InputError("config key 'seed': must be set explicitly");
  if (source == DataSource::kManifest) {
    auto need = [](const fs::path& p, const char* key) {
      if (p.empty()) throw InputError(std::string("config key '") + key + "': required");
      if (!fs::exists(p))
        throw InputError(std::string("config key '") + key + "': '" + p.string() +
                         "' does not exist");
    };
    need(train_manifest, "data.train");
    need(val_manifest, "data.val");
    if (!test_manifest.empty() && !fs::exists(test_manifest))
      throw InputError("config key 'data.test': '" + test_manifest.string() +
                       "' does not exist");
    if (labels_file && !fs::exists(*labels_file))
      throw InputError("config key 'data.labels': '" + labels_file->string() +
                       "' does not exist");
  } else {
    if (synth.n_classes < 2) throw InputError("config key 'synth.n_classes': must be >= 2");
    if (synth.n_per_class < 10)
      throw InputError("config key 'synth.n_per_class': must be >= 10");
    if (synth.feature_dim < 1)
      throw InputError("config key 'synth.feature_dim': must be >= 1");
  }
  if (!(corruption.target_wer >= 0.0 && corruption.target_wer < 1.0))
    throw InputError("config key 'corruption.target_wer': must be in [0, 1)");
  if (embed_dim < 1) throw InputError("config key 'model.embed_dim': must be >= 1");
  for (const auto& cspec : acoustic.conv_layers)
    if (cspec.out_channels < 1 || cspec.kernel < 1 || cspec.stride < 1)
      throw InputError("config key 'acoustic.conv_layers': sizes must be >= 1");
  if (acoustic.recurrent_layers < 1)
    throw InputError("config key 'acoustic.recurrent_layers': must be >= 1");
  if (acoustic.hidden_units < 1)
    throw InputError("config key 'acoustic.hidden_units': must be >= 1");
  if (text.token_embed_dim < 1)
    throw InputError("config key 'text.token_embed_dim': must be >= 1");
  if (text.encoder_layers < 1)
    throw InputError("config key 'text.encoder_layers': must be >= 1");
  if (text.hidden_dim < 1) throw InputError("config key 'text.hidden_dim': must be >= 1");
  if (min_count < 1) throw InputError("config key 'text.min_count': must be >= 1");
  for (const auto& [p, key] : {std::pair{acoustic_pretrained, "acoustic.pretrained"},
                               std::pair{text_pretrained, "text.pretrained"}})
    if (p && !fs::exists(*p))
      throw InputError(std::string("config key '") + key + "': '" + p->string() +
                       "' does not exist");
  try {
    loss.validate();
  } catch (const InputError& e) {
    throw InputError(std::string("config key ") + e.what());
  }
  if (!(lr_acoustic >= 0.0)) throw InputError("config key 'optimizer.lr_a': must be >= 0");
  if (lr_text && !(*lr_text >= 0.0))
    throw InputError("config key 'optimizer.lr_t': must be >= 0");
  if (batch_size < 1) throw InputError("config key 'optimizer.batch_size': must be >= 1");
  if (max_epochs < 1) throw InputError("config key 'optimizer.max_epochs': must be >= 1");
  if (adapt.epochs < 0) throw InputError("config key 'adapt.epochs': must be >= 0");
  if (!(adapt.learning_rate >= 0.0)) throw InputError("config key 'adapt.lr': must be >= 0");
  if (adapt.batch_size < 1) throw InputError("config key 'adapt.batch_size': must be >= 1");
}

double RunConfig::resolved_lr_text() const {
  if (lr_text) return *lr_text;
  return text_pretrained ? 2e-5 : 1e-3;
}

std::string RunConfig::to_text() const {
  std::ostringstream os;
  auto line = [&os](const std::string& k, const std::string& v) {
    os << k << " = " << v << '\n';
  };
  line("seed", seed ? std::to_string(*seed) : "unset");
  line("recipe", std::string(recipe_name(recipe)));
  line("data.source", source == DataSource::kSynthetic ? "synthetic" : "manifest");
  if (source == DataSource::kManifest) {
    line("data.train", train_manifest.string());
    line("data.val", val_manifest.string());
    if (!test_manifest.empty()) line("data.test", test_manifest.string());
    if (labels_file) line("data.labels", labels_file->string());
  }
  line("synth.n_classes", std::to_string(synth.n_classes));
  line("synth.n_per_class", std::to_string(synth.n_per_class));
  line("synth.feature_dim", std::to_string(synth.feature_dim));
  line("corruption.enabled", corruption.enabled ? "true" : "false");
  line("corruption.target_wer", format_double(corruption.target_wer));
  line("model.embed_dim", std::to_string(embed_dim));
  std::string conv;
  for (const auto& s : acoustic.conv_layers) {
    if (!conv.empty()) conv += ",";
    conv += std::to_string(s.out_channels) + "x" + std::to_string(s.kernel) +
            "x" + std::to_string(s.stride);
  }
  line("acoustic.conv_layers", conv);
  line("acoustic.recurrent_layers", std::to_string(acoustic.recurrent_layers));
  line("acoustic.hidden_units", std::to_string(acoustic.hidden_units));
  if (acoustic_pretrained) line("acoustic.pretrained", acoustic_pretrained->string());
  line("text.token_embed_dim", std::to_string(text.token_embed_dim));
  line("text.encoder_layers", std::to_string(text.encoder_layers));
  line("text.hidden_dim", std::to_string(text.hidden_dim));
  line("text.min_count", std::to_string(min_count));
  if (text_pretrained) line("text.pretrained", text_pretrained->string());
  line("loss.margin", format_double(loss.margin));
  line("loss.lambda1", format_double(loss.lambda1));
  line("loss.lambda2", format_double(loss.lambda2));
  line("optimizer.lr_a", format_double(lr_acoustic));
  line("optimizer.lr_t", format_double(resolved_lr_text()));
  line("optimizer.batch_size", std::to_string(batch_size));
  line("optimizer.max_epochs", std::to_string(max_epochs));
  line("adapt.epochs", std::to_string(adapt.epochs));
  line("adapt.lr", format_double(adapt.learning_rate));
  line("adapt.batch_size", std::to_string(adapt.batch_size));
  return os.str();
}

}  // namespace flexslu
