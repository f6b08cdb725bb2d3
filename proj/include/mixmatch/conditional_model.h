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

#ifndef MIXMATCH_CONDITIONAL_MODEL_H_
#define MIXMATCH_CONDITIONAL_MODEL_H_

#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "mixmatch/sequence.h"

namespace mixmatch {

// Probability vector indexed by token id. Reserved ids carry zero mass.
using Distribution = Eigen::VectorXd;

// Anything that yields p(. | x with position i masked). Implementations must
// be safe for concurrent const use.
class MaskedConditionalModel {
 public:
  virtual ~MaskedConditionalModel() = default;

  virtual std::size_t vocab_size() const = 0;

  // Normalized, strictly positive over regular ids. The token currently at
  // position i is ignored.
  Distribution conditional(const Sequence& x, std::size_t i) const {
    check_position(x, i);
    return DoConditional(x, i);
  }

  // Unnormalized log-score of the token x[i] in its masked slot.
  double log_score(const Sequence& x, std::size_t i) const {
    check_position(x, i);
    return DoLogScore(x, i);
  }

 protected:
  virtual Distribution DoConditional(const Sequence& x, std::size_t i) const = 0;
  virtual double DoLogScore(const Sequence& x, std::size_t i) const = 0;

 private:
  static void check_position(const Sequence& x, std::size_t i) {
    if (i >= x.size())
      throw std::out_of_range("position " + std::to_string(i) + " out of range for length " +
                              std::to_string(x.size()));
  }
};

}  // namespace mixmatch

#endif  // MIXMATCH_CONDITIONAL_MODEL_H_
