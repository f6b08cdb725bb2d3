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

#ifndef MIXMATCH_NEIGHBOR_MLM_H_
#define MIXMATCH_NEIGHBOR_MLM_H_

#include <map>
#include <utility>

#include "mixmatch/conditional_model.h"
#include "mixmatch/corpus.h"

namespace mixmatch {

// Count-based masked model: p(v | left, right) from add-k smoothed triple
// counts. Sequence edges use a boundary sentinel as the missing neighbour.
class NeighborMlm : public MaskedConditionalModel {
 public:
  static constexpr TokenId kBoundary = -1;

  struct ContextCounts {
    std::map<TokenId, double> centers;
    double total = 0.0;
  };
  using Context = std::pair<TokenId, TokenId>;  // (left, right)

  NeighborMlm(std::size_t vocab_size, double k, std::map<Context, ContextCounts> counts);

  std::size_t vocab_size() const override { return vocab_size_; }
  double smoothing() const { return k_; }
  const std::map<Context, ContextCounts>& counts() const { return counts_; }

  double count(TokenId left, TokenId center, TokenId right) const;

  // Smoothed distribution for an explicit (left, right) context.
  Distribution context_distribution(TokenId left, TokenId right) const;

 protected:
  Distribution DoConditional(const Sequence& x, std::size_t i) const override;
  // log(count + k): the smoothed count before normalization.
  double DoLogScore(const Sequence& x, std::size_t i) const override;

 private:
  static Context context_of(const Sequence& x, std::size_t i);

  std::size_t vocab_size_;
  double k_;
  std::map<Context, ContextCounts> counts_;
};

// Tallies every (left, center, right) triple with boundary padding.
NeighborMlm fit_neighbor_mlm(const Corpus& corpus, std::size_t vocab_size, double k = 0.1);

}  // namespace mixmatch

#endif  // MIXMATCH_NEIGHBOR_MLM_H_
