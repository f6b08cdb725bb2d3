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

#include "mixmatch/neighbor_mlm.h"

#include <cmath>

#include "mixmatch/errors.h"

namespace mixmatch {

NeighborMlm::NeighborMlm(std::size_t vocab_size, double k,
                         std::map<Context, ContextCounts> counts)
    : vocab_size_(vocab_size), k_(k), counts_(std::move(counts)) {
  if (!(k_ > 0.0) || !std::isfinite(k_)) throw Error("neighbor mlm: smoothing k must be > 0");
  if (vocab_size_ <= static_cast<std::size_t>(Vocabulary::kFirstRegular))
    throw Error("neighbor mlm: vocabulary has no regular tokens");
  // Totals only cover regular centers so conditionals stay normalized.
  for (auto& [ctx, cc] : counts_) {
    cc.total = 0.0;
    for (const auto& [center, n] : cc.centers) {
      if (n < 0.0) throw Error("neighbor mlm: negative count");
      if (center >= Vocabulary::kFirstRegular && static_cast<std::size_t>(center) < vocab_size_)
        cc.total += n;
    }
  }
}

NeighborMlm::Context NeighborMlm::context_of(const Sequence& x, std::size_t i) {
  TokenId left = i == 0 ? kBoundary : x[i - 1];
  TokenId right = i + 1 == x.size() ? kBoundary : x[i + 1];
  return {left, right};
}

double NeighborMlm::count(TokenId left, TokenId center, TokenId right) const {
  auto it = counts_.find({left, right});
  if (it == counts_.end()) return 0.0;
  auto c = it->second.centers.find(center);
  return c == it->second.centers.end() ? 0.0 : c->second;
}

Distribution NeighborMlm::context_distribution(TokenId left, TokenId right) const {
  const auto n_regular = static_cast<double>(vocab_size_ - Vocabulary::kFirstRegular);
  Distribution p = Distribution::Zero(static_cast<Eigen::Index>(vocab_size_));
  auto it = counts_.find({left, right});
  const double total = it == counts_.end() ? 0.0 : it->second.total;
  const double denom = total + k_ * n_regular;
  p.tail(p.size() - Vocabulary::kFirstRegular).setConstant(k_ / denom);
  if (it != counts_.end()) {
    for (const auto& [center, n] : it->second.centers) {
      if (center >= Vocabulary::kFirstRegular && static_cast<std::size_t>(center) < vocab_size_)
        p[center] = (n + k_) / denom;
    }
  }
  return p;
}

Distribution NeighborMlm::DoConditional(const Sequence& x, std::size_t i) const {
  auto [left, right] = context_of(x, i);
  return context_distribution(left, right);
}

double NeighborMlm::DoLogScore(const Sequence& x, std::size_t i) const {
  auto [left, right] = context_of(x, i);
  return std::log(count(left, x[i], right) + k_);
}

NeighborMlm fit_neighbor_mlm(const Corpus& corpus, std::size_t vocab_size, double k) {
  if (corpus.lines.empty()) throw Error("empty corpus");
  if (!(k > 0.0)) throw Error("neighbor mlm: smoothing k must be > 0");
  std::map<NeighborMlm::Context, NeighborMlm::ContextCounts> counts;
  for (const auto& line : corpus.lines) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] < Vocabulary::kFirstRegular) continue;
      TokenId left = i == 0 ? NeighborMlm::kBoundary : line[i - 1];
      TokenId right = i + 1 == line.size() ? NeighborMlm::kBoundary : line[i + 1];
      auto& ctx = counts[{left, right}];
      ctx.centers[line[i]] += 1.0;
      ctx.total += 1.0;
    }
  }
  return NeighborMlm(vocab_size, k, std::move(counts));
}

}  // namespace mixmatch
