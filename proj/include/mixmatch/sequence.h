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

#ifndef MIXMATCH_SEQUENCE_H_
#define MIXMATCH_SEQUENCE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mixmatch/vocabulary.h"

namespace mixmatch {

// Fixed-length token sequence with a per-position freeze mask. Frozen
// positions are never touched by the sampler.
class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(std::vector<TokenId> ids);
  Sequence(std::vector<TokenId> ids, std::vector<bool> frozen);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  TokenId operator[](std::size_t i) const { return ids_[i]; }
  TokenId at(std::size_t i) const { return ids_.at(i); }
  void set(std::size_t i, TokenId id) { ids_.at(i) = id; }

  bool frozen(std::size_t i) const { return frozen_.at(i); }
  void set_frozen(std::size_t i, bool value) { frozen_.at(i) = value; }

  const std::vector<TokenId>& ids() const { return ids_; }
  const std::vector<bool>& frozen_mask() const { return frozen_; }

  // Indices of non-frozen positions, ascending.
  std::vector<std::size_t> revisable_positions() const;

  // True when the sequence can seed a chain: non-empty with at least one
  // non-frozen position.
  bool sampleable() const;

  bool operator==(const Sequence& other) const = default;

 private:
  std::vector<TokenId> ids_;
  std::vector<bool> frozen_;
};

// Throws if any id is outside `vocab`.
void validate(const Sequence& seq, const Vocabulary& vocab);

// Whitespace split; unknown tokens map to [UNK]; nothing frozen.
Sequence tokenize(std::string_view text, const Vocabulary& vocab);

// Space-joined token strings. Throws on an invalid id.
std::string detokenize(const Sequence& seq, const Vocabulary& vocab);

std::vector<std::string> token_strings(const Sequence& seq, const Vocabulary& vocab);

}  // namespace mixmatch

#endif  // MIXMATCH_SEQUENCE_H_
