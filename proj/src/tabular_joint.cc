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

#include "mixmatch/tabular_joint.h"

#include <cmath>
#include <limits>

#include "mixmatch/errors.h"

namespace mixmatch {

StateSpace::StateSpace(std::size_t vocab_size, std::size_t length)
    : vocab_size_(vocab_size), length_(length) {
  if (vocab_size <= static_cast<std::size_t>(Vocabulary::kFirstRegular))
    throw Error("state space: vocabulary has no regular tokens");
  if (length == 0) throw Error("state space: length must be >= 1");
  alphabet_ = vocab_size - Vocabulary::kFirstRegular;
  num_states_ = 1;
  for (std::size_t j = 0; j < length; ++j) {
    if (num_states_ > std::numeric_limits<std::size_t>::max() / alphabet_) {
      num_states_ = std::numeric_limits<std::size_t>::max();
      break;
    }
    num_states_ *= alphabet_;
  }
}

std::size_t StateSpace::index(const Sequence& x) const {
  if (x.size() != length_)
    throw Error("state space: sequence length " + std::to_string(x.size()) + " != " +
                std::to_string(length_));
  std::size_t idx = 0;
  for (std::size_t j = 0; j < length_; ++j) {
    const TokenId id = x[j];
    if (id < Vocabulary::kFirstRegular || static_cast<std::size_t>(id) >= vocab_size_)
      throw Error("state space: non-regular token id " + std::to_string(id) + " at position " +
                  std::to_string(j));
    idx = idx * alphabet_ + static_cast<std::size_t>(id - Vocabulary::kFirstRegular);
  }
  return idx;
}

Sequence StateSpace::state(std::size_t index) const {
  std::vector<TokenId> ids(length_);
  for (std::size_t j = length_; j-- > 0;) {
    ids[j] = static_cast<TokenId>(index % alphabet_) + Vocabulary::kFirstRegular;
    index /= alphabet_;
  }
  return Sequence(std::move(ids));
}

TabularJoint::TabularJoint(StateSpace space, Eigen::VectorXd probs)
    : space_(space), probs_(std::move(probs)) {
  if (static_cast<std::size_t>(probs_.size()) != space_.num_states())
    throw Error("tabular joint: table size does not match V^L");
  if (!(probs_.array() > 0.0).all()) throw Error("tabular joint: probabilities must be > 0");
  if (std::abs(probs_.sum() - 1.0) > 1e-12) throw Error("tabular joint: probabilities must sum to 1");
}

TabularJoint TabularJoint::Uniform(std::size_t vocab_size, std::size_t length) {
  StateSpace space(vocab_size, length);
  const auto n = static_cast<Eigen::Index>(space.num_states());
  return TabularJoint(space, Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)));
}

TabularJoint TabularJoint::Random(std::size_t vocab_size, std::size_t length,
                                  std::mt19937_64& rng) {
  StateSpace space(vocab_size, length);
  const auto n = static_cast<Eigen::Index>(space.num_states());
  std::exponential_distribution<double> expo(1.0);
  Eigen::VectorXd w(n);
  for (Eigen::Index s = 0; s < n; ++s) w[s] = expo(rng) + 1e-3;
  w /= w.sum();
  return TabularJoint(space, std::move(w));
}

double TabularJoint::probability(const Sequence& x) const {
  return probs_[static_cast<Eigen::Index>(space_.index(x))];
}

double TabularJoint::log_probability(const Sequence& x) const {
  return std::log(probability(x));
}

Distribution TabularJoint::DoConditional(const Sequence& x, std::size_t i) const {
  Distribution p = Distribution::Zero(static_cast<Eigen::Index>(space_.vocab_size()));
  Sequence probe = x;
  for (std::size_t v = Vocabulary::kFirstRegular; v < space_.vocab_size(); ++v) {
    probe.set(i, static_cast<TokenId>(v));
    p[static_cast<Eigen::Index>(v)] = probs_[static_cast<Eigen::Index>(space_.index(probe))];
  }
  p /= p.sum();
  return p;
}

double TabularJoint::DoLogScore(const Sequence& x, std::size_t i) const {
  return std::log(DoConditional(x, i)[x[i]]);
}

}  // namespace mixmatch
