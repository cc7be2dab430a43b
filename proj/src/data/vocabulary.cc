// src/data/vocabulary.cc

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

#include "flexslu/data/vocabulary.h"

#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

#include "flexslu/common.h"

namespace flexslu {

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

std::vector<std::string> WhitespaceTokenizer::split(std::string_view text) const {
  return split_words(text);
}

Vocabulary::Vocabulary() {
  add(std::string(kPadToken));
  add(std::string(kUnkToken));
}

int Vocabulary::add(const std::string& token) {
  auto it = ids_.find(token);
  if (it != ids_.end()) return it->second;
  int next = static_cast<int>(tokens_.size());
  tokens_.push_back(token);
  ids_.emplace(token, next);
  return next;
}

int Vocabulary::id(const std::string& token) const {
  auto it = ids_.find(token);
  // The literal pad token in text is treated as unknown; PAD never
  // appears in a tokenized sequence.
  if (it == ids_.end() || it->second == kPad) return kUnk;
  return it->second;
}

const std::string& Vocabulary::token(int id) const {
  if (id < 0 || id >= size())
    throw Error("token id " + std::to_string(id) + " out of range");
  return tokens_[id];
}

bool Vocabulary::contains(const std::string& token) const {
  return ids_.count(token) > 0;
}

std::vector<std::string> Vocabulary::word_tokens() const {
  return {tokens_.begin() + 2, tokens_.end()};
}

void Vocabulary::save(std::ostream& os) const {
  for (const auto& t : tokens_) os << t << '\n';
}

Vocabulary Vocabulary::load(std::istream& is) {
  Vocabulary vocab;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    if (lineno == kPad && line != kPadToken)
      throw InputError("vocabulary: first entry must be " +
                       std::string(kPadToken));
    if (lineno == kUnk && line != kUnkToken)
      throw InputError("vocabulary: second entry must be " +
                       std::string(kUnkToken));
    if (lineno >= 2) {
      if (line.empty() || vocab.contains(line))
        throw InputError("vocabulary: bad or duplicate token at line " +
                         std::to_string(lineno + 1));
      vocab.add(line);
    }
    ++lineno;
  }
  return vocab;
}

Vocabulary build_vocabulary(const std::vector<std::string>& transcripts,
                            int min_count, const Tokenizer& tokenizer) {
  if (min_count < 1) throw InputError("min_count must be >= 1");
  std::vector<std::string> order;
  std::unordered_map<std::string, int> counts;
  for (const auto& text : transcripts) {
    for (auto& word : tokenizer.split(text)) {
      if (counts[word]++ == 0) order.push_back(word);
    }
  }
  Vocabulary vocab;
  for (const auto& word : order)
    if (counts[word] >= min_count) vocab.add(word);
  return vocab;
}

std::vector<int> tokenize(std::string_view text, const Vocabulary& vocab,
                          const Tokenizer& tokenizer) {
  std::vector<int> ids;
  for (const auto& word : tokenizer.split(text)) ids.push_back(vocab.id(word));
  return ids;
}

}  // namespace flexslu
