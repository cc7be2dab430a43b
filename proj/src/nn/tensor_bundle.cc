// src/nn/tensor_bundle.cc

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

#include "flexslu/nn/tensor_bundle.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

namespace flexslu {

namespace {

static_assert(std::endian::native == std::endian::little,
              "tensor bundles assume a little-endian host");

constexpr char kMagic[8] = {'F', 'S', 'L', 'U', 'B', 'N', 'D', 'L'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T)))
    throw InputError("tensor bundle: truncated stream");
  return v;
}

}  // namespace

void TensorBundle::set(const std::string& name, Matrix value) {
  for (auto& [n, m] : entries_) {
    if (n == name) {
      m = std::move(value);
      return;
    }
  }
  entries_.emplace_back(name, std::move(value));
}

bool TensorBundle::contains(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.first == name) return true;
  return false;
}

const Matrix& TensorBundle::at(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.first == name) return e.second;
  throw Error("tensor bundle has no tensor '" + name + "'");
}

void TensorBundle::write(std::ostream& os, TensorDType dtype) const {
  os.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(os, kVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(entries_.size()));
  for (const auto& [name, m] : entries_) {
    put<std::uint32_t>(os, static_cast<std::uint32_t>(name.size()));
    os.write(name.data(), static_cast<std::streamsize>(name.size()));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(dtype));
    put<std::uint64_t>(os, static_cast<std::uint64_t>(m.rows()));
    put<std::uint64_t>(os, static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        if (dtype == TensorDType::kFloat32)
          put<float>(os, static_cast<float>(m(r, c)));
        else
          put<double>(os, m(r, c));
      }
  }
}

TensorBundle TensorBundle::read(std::istream& is) {
  char magic[8];
  if (!is.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw InputError("tensor bundle: bad magic");
  if (get<std::uint32_t>(is) != kVersion)
    throw InputError("tensor bundle: unsupported version");
  const auto count = get<std::uint32_t>(is);
  TensorBundle bundle;
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto len = get<std::uint32_t>(is);
    std::string name(len, '\0');
    if (!is.read(name.data(), len))
      throw InputError("tensor bundle: truncated name");
    const auto dtype = get<std::uint32_t>(is);
    if (dtype > 1)
      throw InputError("tensor bundle: unknown dtype for '" + name + "'");
    const auto rows = get<std::uint64_t>(is);
    const auto cols = get<std::uint64_t>(is);
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        m(r, c) = dtype == 0 ? static_cast<double>(get<float>(is))
                             : get<double>(is);
    if (bundle.contains(name))
      throw InputError("tensor bundle: duplicate tensor '" + name + "'");
    bundle.entries_.emplace_back(std::move(name), std::move(m));
  }
  return bundle;
}

void TensorBundle::save(const std::filesystem::path& path,
                        TensorDType dtype) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot open '" + path.string() + "' for writing");
  write(os, dtype);
  if (!os) throw Error("failed writing '" + path.string() + "'");
}

TensorBundle TensorBundle::load(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open tensor bundle '" + path.string() + "'");
  return read(is);
}

bool TensorBundle::operator==(const TensorBundle& other) const {
  if (entries_.size() != other.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& [na, a] = entries_[i];
    const auto& [nb, b] = other.entries_[i];
    if (na != nb || a.rows() != b.rows() || a.cols() != b.cols()) return false;
    if (a.size() > 0 &&
        std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) != 0)
      return false;
  }
  return true;
}

TensorBundle export_parameters(const ConstParameterRefs& params) {
  TensorBundle bundle;
  for (const Parameter* p : params) bundle.set(p->name, p->value);
  return bundle;
}

void import_parameters(const ParameterRefs& params, const TensorBundle& bundle,
                       bool partial) {
  std::unordered_map<std::string, Parameter*> by_name;
  for (Parameter* p : params) by_name.emplace(p->name, p);
  for (const auto& [name, m] : bundle.entries()) {
    auto it = by_name.find(name);
    if (it == by_name.end())
      throw InputError("tensor '" + name + "' does not match any parameter");
    const Matrix& v = it->second->value;
    if (v.rows() != m.rows() || v.cols() != m.cols())
      throw InputError("tensor '" + name + "' has shape " +
                       std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                       ", expected " + std::to_string(v.rows()) + "x" +
                       std::to_string(v.cols()));
  }
  if (!partial) {
    for (Parameter* p : params)
      if (!bundle.contains(p->name))
        throw InputError("tensor '" + p->name + "' missing from bundle");
  }
  for (const auto& [name, m] : bundle.entries()) by_name.at(name)->value = m;
}

}  // namespace flexslu
