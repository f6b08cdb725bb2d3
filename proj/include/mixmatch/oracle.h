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

#ifndef MIXMATCH_ORACLE_H_
#define MIXMATCH_ORACLE_H_

#include <functional>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "mixmatch/conditional_model.h"
#include "mixmatch/energy_model.h"
#include "mixmatch/sampler.h"
#include "mixmatch/state_space.h"

namespace mixmatch {

inline constexpr std::size_t kEnumerationLimit = 1'000'000;
inline constexpr std::size_t kDetailedBalanceLimit = 10'000;

// Boltzmann distribution p(X) = exp(-E(X)) / Z over a whole state space.
struct ExactDistribution {
  StateSpace space;
  Eigen::VectorXd energy;  // indexed in StateSpace order
  Eigen::VectorXd prob;
  double log_z = 0.0;

  double z() const;
};

// Energies for every state, normalized with log-sum-exp.
ExactDistribution enumerate_distribution(const EnergyModel& energy, const StateSpace& space);

// {"z": ..., "log_z": ..., "energy": [...], "prob": [...]}
nlohmann::ordered_json to_json(const ExactDistribution& dist);

// Half the L1 distance. Both inputs must be normalized within 1e-6.
double tv_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

// Normalized visit counts over the full state space (zeros included).
Eigen::VectorXd empirical_distribution(const std::vector<Sequence>& samples,
                                       const StateSpace& space);

// Rebuilds the chain states from a trace, keeping the state after every
// `every`-th step (1-based: steps every, 2*every, ...).
std::vector<Sequence> replay_states(const ChainResult& chain, std::size_t every);

using AcceptanceFn = std::function<double(double e_cur, double e_prop, double log_q_fwd,
                                          double log_q_rev)>;

// Largest |pi(X) T(X->Y) - pi(Y) T(Y->X)| over ordered pairs differing at one
// position, for the kernel that picks a position uniformly, proposes from
// `proposal` and accepts with `accept`.
double check_detailed_balance(const EnergyModel& energy, const MaskedConditionalModel& proposal,
                              const StateSpace& space, const AcceptanceFn& accept = accept_prob);

}  // namespace mixmatch

#endif  // MIXMATCH_ORACLE_H_
