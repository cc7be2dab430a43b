// include/flexslu/cli/config.h

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

#ifndef FLEXSLU_CLI_CONFIG_H_
#define FLEXSLU_CLI_CONFIG_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flexslu/acoustic/acoustic_encoder.h"
#include "flexslu/joint/joint_model.h"
#include "flexslu/joint/losses.h"
#include "flexslu/joint/trainer.h"
#include "flexslu/text/domain_adapt.h"

namespace flexslu {

// Flat "key = value" text with dotted section keys; '#' starts a comment.
// Keys are kept in file order; duplicates are an error.
class KeyValueFile {
 public:
  static KeyValueFile parse(const std::string& text, const std::string& origin);
  static KeyValueFile load(const std::filesystem::path& path);

  const std::map<std::string, std::string>& values() const { return values_; }
  std::optional<std::string> get(const std::string& key) const;

 private:
  std::map<std::string, std::string> values_;
};

enum class DataSource { kSynthetic, kManifest };

struct SyntheticParams {
  int n_classes = 6;
  int n_per_class = 50;
  int feature_dim = 8;
};

struct CorruptionConfig {
  bool enabled = false;
  double target_wer = 0.3;
};

struct RunConfig {
  DataSource source = DataSource::kSynthetic;
  std::filesystem::path train_manifest, val_manifest, test_manifest;
  std::optional<std::filesystem::path> labels_file;
  SyntheticParams synth;
  CorruptionConfig corruption;

  Recipe recipe = Recipe::kTextSpeech;
  int embed_dim = 64;
  // feature_dim is taken from the data at training time.
  AcousticConfig acoustic;
  TextConfig text;
  int min_count = 1;
  std::optional<std::filesystem::path> acoustic_pretrained;
  std::optional<std::filesystem::path> text_pretrained;

  LossWeights loss;
  double lr_acoustic = 1e-3;
  // Unset means: 2e-5 when the text encoder is warm-started from a bundle,
  // 1e-3 when it is trained from scratch.
  std::optional<double> lr_text;
  int batch_size = 16;
  int max_epochs = 30;
  DomainAdaptOptions adapt;

  std::optional<std::uint64_t> seed;

  // Relative paths are resolved against `base_dir`. Unknown keys and
  // malformed values throw InputError naming the key.
  static RunConfig from_keys(const KeyValueFile& kv,
                             const std::filesystem::path& base_dir);
  static RunConfig load(const std::filesystem::path& path);

  // Field-level checks, including that referenced files exist and the seed
  // is set.
  void validate() const;

  double resolved_lr_text() const;

  // Every field, with lr_t resolved, in the same key = value format.
  std::string to_text() const;
};

std::string format_double(double v);

}  // namespace flexslu

#endif  // FLEXSLU_CLI_CONFIG_H_
