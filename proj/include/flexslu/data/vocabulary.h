// include/flexslu/data/vocabulary.h

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

#ifndef FLEXSLU_DATA_VOCABULARY_H_
#define FLEXSLU_DATA_VOCABULARY_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace flexslu {

// Splits raw text into word tokens. The default splits on whitespace and
// lowercases; a pre-trained text encoder would plug in its own.
class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::vector<std::string> split(std::string_view text) const = 0;
};

class WhitespaceTokenizer : public Tokenizer {
 public:
  std::vector<std::string> split(std::string_view text) const override;
};

// Lowercased whitespace tokens; shared by the default tokenizer and WER.
std::vector<std::string> split_words(std::string_view text);

class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr std::string_view kPadToken = "<pad>";
  static constexpr std::string_view kUnkToken = "<unk>";

  Vocabulary();

  // Returns the id of an existing token or assigns the next free id.
  int add(const std::string& token);
  // kUnk for unknown tokens.
  int id(const std::string& token) const;
  const std::string& token(int id) const;
  bool contains(const std::string& token) const;
  int size() const { return static_cast<int>(tokens_.size()); }
  // All tokens with id >= 2, in id order.
  std::vector<std::string> word_tokens() const;

  // One token per line, line number = id.
  void save(std::ostream& os) const;
  static Vocabulary load(std::istream& is);

  bool operator==(const Vocabulary& other) const {
    return tokens_ == other.tokens_;
  }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
};

// Tokens whose corpus count reaches min_count get ids in first-seen order.
Vocabulary build_vocabulary(const std::vector<std::string>& transcripts,
                            int min_count,
                            const Tokenizer& tokenizer = WhitespaceTokenizer());

std::vector<int> tokenize(std::string_view text, const Vocabulary& vocab,
                          const Tokenizer& tokenizer = WhitespaceTokenizer());

}  // namespace flexslu

#endif  // FLEXSLU_DATA_VOCABULARY_H_
