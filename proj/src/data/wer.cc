// src/data/wer.cc

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

#include "flexslu/data/wer.h"

#include <algorithm>

#include "flexslu/common.h"
#include "flexslu/data/vocabulary.h"

namespace flexslu {

namespace {

struct Cell {
  int cost = 0;
  int sub = 0, del = 0, ins = 0;
};

}  // namespace

EditCounts align_words(const std::vector<std::string>& reference,
                       const std::vector<std::string>& hypothesis) {
  const std::size_t n = reference.size(), m = hypothesis.size();
  std::vector<Cell> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) {
    prev[j].cost = static_cast<int>(j);
    prev[j].ins = static_cast<int>(j);
  }
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = prev[0];
    cur[0].cost += 1;
    cur[0].del += 1;
    for (std::size_t j = 1; j <= m; ++j) {
      bool match = reference[i - 1] == hypothesis[j - 1];
      Cell diag = prev[j - 1];
      if (!match) {
        diag.cost += 1;
        diag.sub += 1;
      }
      Cell up = prev[j];
      up.cost += 1;
      up.del += 1;
      Cell left = cur[j - 1];
      left.cost += 1;
      left.ins += 1;
      Cell best = diag;
      if (up.cost < best.cost) best = up;
      if (left.cost < best.cost) best = left;
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  EditCounts counts;
  counts.substitutions = prev[m].sub;
  counts.deletions = prev[m].del;
  counts.insertions = prev[m].ins;
  counts.reference_words = static_cast<int>(n);
  return counts;
}

double compute_wer(std::string_view reference, std::string_view hypothesis) {
  auto ref = split_words(reference);
  if (ref.empty()) throw InputError("compute_wer: empty reference");
  EditCounts c = align_words(ref, split_words(hypothesis));
  return static_cast<double>(c.errors()) / c.reference_words;
}

double corpus_wer(const std::vector<std::string>& references,
                  const std::vector<std::string>& hypotheses) {
  if (references.size() != hypotheses.size())
    throw InputError("corpus_wer: reference/hypothesis count mismatch");
  long errors = 0, words = 0;
  for (std::size_t i = 0; i < references.size(); ++i) {
    EditCounts c =
        align_words(split_words(references[i]), split_words(hypotheses[i]));
    errors += c.errors();
    words += c.reference_words;
  }
  if (words == 0) throw InputError("corpus_wer: empty reference corpus");
  return static_cast<double>(errors) / words;
}

}  // namespace flexslu
