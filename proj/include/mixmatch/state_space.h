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

#ifndef MIXMATCH_STATE_SPACE_H_
#define MIXMATCH_STATE_SPACE_H_

#include <cstddef>
#include <cstdint>

#include "mixmatch/sequence.h"

namespace mixmatch {

// All length-L sequences over the regular ids of a vocabulary, indexed
// lexicographically by token id (position 0 most significant).
class StateSpace {
 public:
  StateSpace(std::size_t vocab_size, std::size_t length);

  std::size_t vocab_size() const { return vocab_size_; }
  std::size_t alphabet() const { return alphabet_; }
  std::size_t length() const { return length_; }
  // Saturates at SIZE_MAX instead of overflowing.
  std::size_t num_states() const { return num_states_; }

  // Throws if the sequence has the wrong length or a non-regular id.
  std::size_t index(const Sequence& x) const;
  Sequence state(std::size_t index) const;

 private:
  std::size_t vocab_size_;
  std::size_t alphabet_;
  std::size_t length_;
  std::size_t num_states_;
};

}  // namespace mixmatch

#endif  // MIXMATCH_STATE_SPACE_H_
