// src/data/corruption.cc

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

#include "flexslu/data/corruption.h"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <vector>

namespace flexslu {

namespace {

// Uniform over `words` minus any in `exclude`; "<unk>" when nothing is left.
std::string random_word(const std::vector<std::string>& words,
                        std::initializer_list<const std::string*> exclude,
                        Rng& rng) {
  std::vector<const std::string*> eligible;
  eligible.reserve(words.size());
  for (const auto& w : words) {
    bool skip = false;
    for (const std::string* e : exclude) skip = skip || (e && *e == w);
    if (!skip) eligible.push_back(&w);
  }
  if (eligible.empty()) return std::string(Vocabulary::kUnkToken);
  std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
  return *eligible[pick(rng)];
}

}  // namespace

std::string corrupt_transcript(std::string_view text, double target_wer,
                               const Vocabulary& vocab, Rng& rng,
                               const CorruptionMix& mix) {
  if (!(target_wer >= 0.0) || target_wer >= 1.0)
    throw InputError("corrupt_transcript: target_wer must be in [0, 1)");
  if (mix.substitution < 0 || mix.deletion < 0 || mix.insertion < 0 ||
      std::abs(mix.substitution + mix.deletion + mix.insertion - 1.0) > 1e-9)
    throw InputError("corrupt_transcript: mix must be non-negative and sum to 1");
  auto words = split_words(text);
  if (words.empty()) throw InputError("corrupt_transcript: empty text");

  std::string out;
  auto emit = [&out](const std::string& w) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  };
  if (target_wer == 0.0) {
    for (const auto& w : words) emit(w);
    return out;
  }

  const double p_sub = target_wer * mix.substitution;
  const double p_del = target_wer * mix.deletion;
  const double p_ins = target_wer * mix.insertion;
  const auto candidates = vocab.word_tokens();
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  enum class Op { kKeep, kSubstitute, kDelete };
  const std::size_t n = words.size();
  std::vector<Op> ops(n);
  for (auto& op : ops) {
    double u = u01(rng);
    op = u < p_sub ? Op::kSubstitute : (u < p_sub + p_del ? Op::kDelete : Op::kKeep);
  }
  // An insertion next to a deletion would align as a single substitution and
  // undercount. Such slots are skipped and the remaining ones boosted so the
  // expected insertion count per word is still p_ins.
  const double keep = 1.0 - p_del;
  for (std::size_t i = 0; i < n; ++i) {
    // Neighbouring reference words are excluded too, otherwise the edit
    // could align more cheaply than the operation that produced it.
    const std::string* prev = i > 0 ? &words[i - 1] : nullptr;
    const std::string* next = i + 1 < n ? &words[i + 1] : nullptr;
    if (ops[i] == Op::kSubstitute) {
      emit(random_word(candidates, {prev, &words[i], next}, rng));
    } else if (ops[i] == Op::kKeep) {
      emit(words[i]);
    }
    const bool last = i + 1 == n;
    const double u = u01(rng);
    if (ops[i] == Op::kDelete || (!last && ops[i + 1] == Op::kDelete)) continue;
    const double rate = std::min(1.0, p_ins / (last ? keep : keep * keep));
    if (u < rate) emit(random_word(candidates, {&words[i], next}, rng));
  }
  return out;
}

}  // namespace flexslu
