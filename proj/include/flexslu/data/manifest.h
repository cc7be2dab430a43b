// include/flexslu/data/manifest.h

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

#ifndef FLEXSLU_DATA_MANIFEST_H_
#define FLEXSLU_DATA_MANIFEST_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "flexslu/common.h"
#include "flexslu/data/utterance.h"

namespace flexslu {

// Manifest files are JSON lines. An optional first record of the form
// {"labels": [...]} declares the label list; otherwise it is read from a
// sidecar file (one label per line), by default labels.txt next to the
// manifest. Every other line is an utterance record:
//
//   {"id": "u1", "features": [[0.1, 0.2], ...] | "feats/u1.bin",
//    "gt_transcript": "turn on the light", "asr_transcript": "turn in light",
//    "intent": "on"}
//
// A string "features" value is a path, relative to the manifest's directory,
// of a binary matrix: int32 T, int32 F, then T*F float32 row-major, all
// little-endian. asr_transcript may be absent or null.

// One record as written, before any validation against labels or shapes.
struct ManifestRecord {
  int line = 0;
  std::string id;
  std::optional<Matrix> features;
  std::optional<std::string> gt_transcript;
  std::optional<std::string> asr_transcript;
  std::optional<std::string> intent;
};

struct ManifestContents {
  std::optional<std::vector<std::string>> header_labels;
  std::vector<ManifestRecord> records;
};

ManifestContents read_manifest_records(const std::filesystem::path& path);

struct ManifestLoad {
  DatasetSplit split;
  // Ids of records dropped because their features had zero frames.
  std::vector<std::string> rejected_empty;
};

// Strict loader: id, features, gt_transcript and intent are required. An
// explicit labels_path overrides both the header record and labels.txt.
ManifestLoad load_manifest(
    const std::filesystem::path& path,
    const std::optional<std::filesystem::path>& labels_path = std::nullopt);

// Writes a header record followed by one record per utterance with inline
// features. Reading the file back yields an identical split.
void save_manifest(const DatasetSplit& split, const std::filesystem::path& path);

// Writes records only (no header); labels are expected in a sidecar.
void save_manifest_records(const DatasetSplit& split,
                           const std::filesystem::path& path);

std::vector<std::string> read_label_list(const std::filesystem::path& path);
void write_label_list(const std::vector<std::string>& labels,
                      const std::filesystem::path& path);

Matrix read_float_matrix(const std::filesystem::path& path);
void write_float_matrix(const Matrix& m, const std::filesystem::path& path);

}  // namespace flexslu

#endif  // FLEXSLU_DATA_MANIFEST_H_
