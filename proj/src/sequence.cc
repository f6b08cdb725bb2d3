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

#include "mixmatch/sequence.h"

#include <algorithm>

#include "mixmatch/errors.h"
#include "mixmatch/strings.h"

namespace mixmatch {

Sequence::Sequence(std::vector<TokenId> ids)
    : ids_(std::move(ids)), frozen_(ids_.size(), false) {}

Sequence::Sequence(std::vector<TokenId> ids, std::vector<bool> frozen)
    : ids_(std::move(ids)), frozen_(std::move(frozen)) {
  if (ids_.size() != frozen_.size())
    throw Error("sequence: frozen mask length differs from id length");
}

std::vector<std::size_t> Sequence::revisable_positions() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (!frozen_[i]) out.push_back(i);
  return out;
}

bool Sequence::sampleable() const {
  return std::find(frozen_.begin(), frozen_.end(), false) != frozen_.end();
}

void validate(const Sequence& seq, const Vocabulary& vocab) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!vocab.contains(seq[i]))
      throw Error("invalid token id " + std::to_string(seq[i]) + " at position " +
                  std::to_string(i));
  }
}

Sequence tokenize(std::string_view text, const Vocabulary& vocab) {
  std::vector<TokenId> ids;
  for (const auto& tok : split_whitespace(text)) ids.push_back(vocab.id(tok));
  return Sequence(std::move(ids));
}

std::vector<std::string> token_strings(const Sequence& seq, const Vocabulary& vocab) {
  std::vector<std::string> out;
  out.reserve(seq.size());
  for (TokenId id : seq.ids()) {
    if (!vocab.contains(id)) throw Error("detokenize: invalid token id " + std::to_string(id));
    out.push_back(vocab.token(id));
  }
  return out;
}

std::string detokenize(const Sequence& seq, const Vocabulary& vocab) {
  return join(token_strings(seq, vocab), " ");
}

}  // namespace mixmatch
