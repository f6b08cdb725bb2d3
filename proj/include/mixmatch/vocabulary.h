// Copyright 2026 The Mixmatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MIXMATCH_VOCABULARY_H_
#define MIXMATCH_VOCABULARY_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mixmatch {

using TokenId = std::int32_t;

// Bijective token <-> id map. Ids 0 and 1 are always [MASK] and [UNK];
// every other id is a "regular" token that models may propose.
class Vocabulary {
 public:
  static constexpr TokenId kMask = 0;
  static constexpr TokenId kUnk = 1;
  static constexpr TokenId kFirstRegular = 2;
  static constexpr std::string_view kMaskToken = "[MASK]";
  static constexpr std::string_view kUnkToken = "[UNK]";

  // Vocabulary containing only the reserved tokens.
  Vocabulary();

  // Appends `regular` after the reserved ids, in the given order. Throws on
  // duplicates or on a token that collides with a reserved string.
  static Vocabulary FromTokens(const std::vector<std::string>& regular);

  // One token per line; line number is the id. Lines 0 and 1 must be the
  // reserved tokens.
  static Vocabulary Load(const std::filesystem::path& path);
  void Save(const std::filesystem::path& path) const;

  std::size_t size() const { return tokens_.size(); }
  std::size_t regular_size() const { return tokens_.size() - kFirstRegular; }

  bool contains(TokenId id) const {
    return id >= 0 && static_cast<std::size_t>(id) < tokens_.size();
  }
  bool is_regular(TokenId id) const { return id >= kFirstRegular && contains(id); }

  // Id of `token`, or kUnk when absent.
  TokenId id(std::string_view token) const;
  std::optional<TokenId> find(std::string_view token) const;

  // Throws std::out_of_range for an invalid id.
  const std::string& token(TokenId id) const;

  const std::vector<std::string>& tokens() const { return tokens_; }

  // FNV-1a over the newline-joined token list; used to bind model files to
  // the vocabulary they were trained with.
  std::uint64_t Hash() const;
  std::string HashHex() const;

  bool operator==(const Vocabulary& other) const { return tokens_ == other.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
};

// Builds a vocabulary from raw whitespace-tokenized lines. Tokens occurring
// at least `min_count` times are kept, ordered by descending frequency then
// lexicographically.
Vocabulary build_vocab(const std::vector<std::string>& lines, int min_count);

}  // namespace mixmatch

#endif  // MIXMATCH_VOCABULARY_H_
