// src/data/manifest.cc

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

#include "flexslu/data/manifest.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <unordered_map>

#include <json.hpp>

namespace flexslu {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary feature files assume a little-endian host");

std::string record_name(const ManifestRecord& r) {
  return r.id.empty() ? "line " + std::to_string(r.line) : "record '" + r.id + "'";
}

Matrix features_from_json(const json& value, const fs::path& base_dir,
                          const std::string& where) {
  if (value.is_string()) {
    fs::path p = value.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    return read_float_matrix(p);
  }
  if (!value.is_array())
    throw InputError(where + ": 'features' must be an array of arrays or a path");
  const std::size_t frames = value.size();
  if (frames == 0) return Matrix(0, 0);
  if (!value[0].is_array())
    throw InputError(where + ": 'features' must be an array of arrays");
  const std::size_t dim = value[0].size();
  Matrix m(frames, dim);
  for (std::size_t t = 0; t < frames; ++t) {
    const json& row = value[t];
    if (!row.is_array() || row.size() != dim)
      throw InputError(where + ": ragged feature matrix at frame " +
                       std::to_string(t));
    for (std::size_t f = 0; f < dim; ++f) {
      if (!row[f].is_number())
        throw InputError(where + ": non-numeric feature value");
      m(t, f) = row[f].get<double>();
    }
  }
  return m;
}

std::optional<std::string> optional_string(const json& obj, const char* key,
                                           const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string())
    throw InputError(where + ": field '" + key + "' must be a string");
  return it->get<std::string>();
}

json features_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index t = 0; t < m.rows(); ++t) {
    json row = json::array();
    for (Eigen::Index f = 0; f < m.cols(); ++f) row.push_back(m(t, f));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_records(const DatasetSplit& split, std::ofstream& os) {
  for (const auto& u : split.utterances) {
    json rec;
    rec["id"] = u.id;
    rec["features"] = features_to_json(u.features);
    rec["gt_transcript"] = u.gt_transcript;
    if (u.asr_transcript)
      rec["asr_transcript"] = *u.asr_transcript;
    else
      rec["asr_transcript"] = nullptr;
    rec["intent"] = split.label_names.at(u.intent);
    os << rec.dump() << '\n';
  }
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot open '" + path.string() + "' for writing");
  return os;
}

}  // namespace

ManifestContents read_manifest_records(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open manifest '" + path.string() + "'");
  const fs::path base_dir = path.parent_path();
  ManifestContents contents;
  std::string line;
  int lineno = 0;
  bool seen_record = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InputError(path.string() + ":" + std::to_string(lineno) +
                       ": malformed record: " + e.what());
    }
    if (!obj.is_object())
      throw InputError(path.string() + ":" + std::to_string(lineno) +
                       ": record is not an object");
    if (obj.contains("labels") && !obj.contains("id")) {
      if (seen_record || contents.header_labels)
        throw InputError(path.string() + ":" + std::to_string(lineno) +
                         ": label header must be the first record");
      contents.header_labels = obj["labels"].get<std::vector<std::string>>();
      continue;
    }
    seen_record = true;
    ManifestRecord rec;
    rec.line = lineno;
    if (auto id = obj.find("id"); id != obj.end() && id->is_string())
      rec.id = id->get<std::string>();
    const std::string where = path.string() + ": " + record_name(rec);
    if (auto f = obj.find("features"); f != obj.end() && !f->is_null())
      rec.features = features_from_json(*f, base_dir, where);
    rec.gt_transcript = optional_string(obj, "gt_transcript", where);
    rec.asr_transcript = optional_string(obj, "asr_transcript", where);
    rec.intent = optional_string(obj, "intent", where);
    contents.records.push_back(std::move(rec));
  }
  return contents;
}

ManifestLoad load_manifest(const fs::path& path,
                           const std::optional<fs::path>& labels_path) {
  ManifestContents contents = read_manifest_records(path);
  ManifestLoad result;
  DatasetSplit& split = result.split;
  if (labels_path) {
    split.label_names = read_label_list(*labels_path);
  } else if (contents.header_labels) {
    split.label_names = *contents.header_labels;
  } else {
    fs::path sidecar = path.parent_path() / "labels.txt";
    if (!fs::exists(sidecar))
      throw InputError("manifest '" + path.string() +
                       "' has no label header and no labels.txt sidecar");
    split.label_names = read_label_list(sidecar);
  }
  std::unordered_map<std::string, int> label_ids;
  for (std::size_t i = 0; i < split.label_names.size(); ++i) {
    if (!label_ids.emplace(split.label_names[i], static_cast<int>(i)).second)
      throw InputError("duplicate label '" + split.label_names[i] + "'");
  }

  bool have_dim = false;
  for (auto& rec : contents.records) {
    const std::string where = path.string() + ": " + record_name(rec);
    auto require = [&](bool present, const char* field) {
      if (!present)
        throw InputError(where + ": missing field '" + std::string(field) + "'");
    };
    require(!rec.id.empty(), "id");
    require(rec.features.has_value(), "features");
    require(rec.gt_transcript.has_value(), "gt_transcript");
    require(rec.intent.has_value(), "intent");
    if (rec.features->rows() == 0) {
      result.rejected_empty.push_back(rec.id);
      continue;
    }
    if (rec.features->cols() == 0)
      throw InputError(where + ": feature frames have zero dimensions");
    const int dim = static_cast<int>(rec.features->cols());
    if (!have_dim) {
      split.feature_dim = dim;
      have_dim = true;
    } else if (dim != split.feature_dim) {
      throw InputError(where + ": inconsistent feature dim " +
                       std::to_string(dim) + " (expected " +
                       std::to_string(split.feature_dim) + ")");
    }
    auto label = label_ids.find(*rec.intent);
    if (label == label_ids.end())
      throw InputError(where + ": unknown label '" + *rec.intent + "'");

    Utterance u;
    u.id = std::move(rec.id);
    u.features = std::move(*rec.features);
    u.gt_transcript = std::move(*rec.gt_transcript);
    u.asr_transcript = std::move(rec.asr_transcript);
    u.intent = label->second;
    split.utterances.push_back(std::move(u));
  }
  return result;
}

void save_manifest(const DatasetSplit& split, const fs::path& path) {
  auto os = open_out(path);
  json header;
  header["labels"] = split.label_names;
  os << header.dump() << '\n';
  write_records(split, os);
}

void save_manifest_records(const DatasetSplit& split, const fs::path& path) {
  auto os = open_out(path);
  write_records(split, os);
}

std::vector<std::string> read_label_list(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open label list '" + path.string() + "'");
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) labels.push_back(line);
  }
  if (labels.empty())
    throw InputError("label list '" + path.string() + "' is empty");
  return labels;
}

void write_label_list(const std::vector<std::string>& labels,
                      const fs::path& path) {
  auto os = open_out(path);
  for (const auto& l : labels) os << l << '\n';
}

Matrix read_float_matrix(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open feature file '" + path.string() + "'");
  std::int32_t dims[2];
  if (!is.read(reinterpret_cast<char*>(dims), sizeof(dims)))
    throw InputError("feature file '" + path.string() + "': truncated header");
  if (dims[0] < 0 || dims[1] < 0)
    throw InputError("feature file '" + path.string() + "': negative shape");
  const std::size_t count = static_cast<std::size_t>(dims[0]) * dims[1];
  std::vector<float> data(count);
  if (count > 0 && !is.read(reinterpret_cast<char*>(data.data()),
                            static_cast<std::streamsize>(count * sizeof(float))))
    throw InputError("feature file '" + path.string() + "': truncated data");
  Matrix m(dims[0], dims[1]);
  for (std::int32_t t = 0; t < dims[0]; ++t)
    for (std::int32_t f = 0; f < dims[1]; ++f)
      m(t, f) = data[static_cast<std::size_t>(t) * dims[1] + f];
  return m;
}

void write_float_matrix(const Matrix& m, const fs::path& path) {
  auto os = open_out(path);
  std::int32_t dims[2] = {static_cast<std::int32_t>(m.rows()),
                          static_cast<std::int32_t>(m.cols())};
  os.write(reinterpret_cast<const char*>(dims), sizeof(dims));
  for (Eigen::Index t = 0; t < m.rows(); ++t)
    for (Eigen::Index f = 0; f < m.cols(); ++f) {
      float v = static_cast<float>(m(t, f));
      os.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
}

}  // namespace flexslu
