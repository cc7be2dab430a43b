// include/flexslu/data/wer.h

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

#ifndef FLEXSLU_DATA_WER_H_
#define FLEXSLU_DATA_WER_H_

#include <string_view>
#include <vector>
#include <string>

namespace flexslu {

struct EditCounts {
  int substitutions = 0;
  int deletions = 0;
  int insertions = 0;
  int reference_words = 0;

  int errors() const { return substitutions + deletions + insertions; }
};

// Minimum word-level Levenshtein alignment of hypothesis against reference.
// Ties between equal-cost paths prefer substitution, then deletion.
EditCounts align_words(const std::vector<std::string>& reference,
                       const std::vector<std::string>& hypothesis);

// (S + D + I) / N over lowercased whitespace tokens. Throws InputError when
// the reference has no words.
double compute_wer(std::string_view reference, std::string_view hypothesis);

// Corpus-level WER: total errors over total reference words.
double corpus_wer(const std::vector<std::string>& references,
                  const std::vector<std::string>& hypotheses);

}  // namespace flexslu

#endif  // FLEXSLU_DATA_WER_H_
