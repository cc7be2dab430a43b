// include/flexslu/nn/tensor_bundle.h

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

#ifndef FLEXSLU_NN_TENSOR_BUNDLE_H_
#define FLEXSLU_NN_TENSOR_BUNDLE_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "flexslu/common.h"
#include "flexslu/nn/parameter.h"

namespace flexslu {

enum class TensorDType : std::uint32_t { kFloat32 = 0, kFloat64 = 1 };

// Ordered name -> 2-D tensor container, the unit of weight exchange.
//
// On disk: "FSLUBNDL", uint32 version (1), uint32 tensor count, then per
// tensor uint32 name length, name bytes, uint32 dtype, uint64 rows,
// uint64 cols and rows*cols row-major values. Little-endian throughout.
class TensorBundle {
 public:
  void set(const std::string& name, Matrix value);
  bool contains(const std::string& name) const;
  const Matrix& at(const std::string& name) const;
  const std::vector<std::pair<std::string, Matrix>>& entries() const {
    return entries_;
  }
  std::size_t size() const { return entries_.size(); }

  void write(std::ostream& os, TensorDType dtype = TensorDType::kFloat64) const;
  static TensorBundle read(std::istream& is);
  void save(const std::filesystem::path& path,
            TensorDType dtype = TensorDType::kFloat64) const;
  static TensorBundle load(const std::filesystem::path& path);

  // Bitwise comparison of names, shapes and values.
  bool operator==(const TensorBundle& other) const;

 private:
  std::vector<std::pair<std::string, Matrix>> entries_;
};

TensorBundle export_parameters(const ConstParameterRefs& params);

// Copies bundle values into params. Without `partial`, every parameter must
// be present. In both modes a shape mismatch or a tensor name unknown to
// params is an error naming the first offending tensor, and nothing is
// modified unless the whole bundle validates.
void import_parameters(const ParameterRefs& params, const TensorBundle& bundle,
                       bool partial = false);

}  // namespace flexslu

#endif  // FLEXSLU_NN_TENSOR_BUNDLE_H_
