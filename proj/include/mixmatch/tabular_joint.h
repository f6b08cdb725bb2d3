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

#ifndef MIXMATCH_TABULAR_JOINT_H_
#define MIXMATCH_TABULAR_JOINT_H_

#include <random>

#include <Eigen/Core>

#include "mixmatch/conditional_model.h"
#include "mixmatch/state_space.h"

namespace mixmatch {

// Explicit joint distribution over every length-L sequence of regular
// tokens. Its conditionals are exact, which makes it the reference target
// for sampler verification.
class TabularJoint : public MaskedConditionalModel {
 public:
  // `probs` is indexed by StateSpace order; must be positive and sum to 1
  // within 1e-12.
  TabularJoint(StateSpace space, Eigen::VectorXd probs);

  static TabularJoint Uniform(std::size_t vocab_size, std::size_t length);
  // Dirichlet-like random table: i.i.d. exponential weights, normalized.
  static TabularJoint Random(std::size_t vocab_size, std::size_t length, std::mt19937_64& rng);

  std::size_t vocab_size() const override { return space_.vocab_size(); }
  const StateSpace& space() const { return space_; }
  const Eigen::VectorXd& probabilities() const { return probs_; }

  double probability(const Sequence& x) const;
  double log_probability(const Sequence& x) const;

 protected:
  Distribution DoConditional(const Sequence& x, std::size_t i) const override;
  // log p(x_i | x_\i); the conditionals are already normalized.
  double DoLogScore(const Sequence& x, std::size_t i) const override;

 private:
  StateSpace space_;
  Eigen::VectorXd probs_;
};

}  // namespace mixmatch

#endif  // MIXMATCH_TABULAR_JOINT_H_
