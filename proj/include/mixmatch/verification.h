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

#ifndef MIXMATCH_VERIFICATION_H_
#define MIXMATCH_VERIFICATION_H_

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "mixmatch/energy_model.h"
#include "mixmatch/neighbor_mlm.h"
#include "mixmatch/state_space.h"
#include "mixmatch/tabular_joint.h"

namespace mixmatch::verification {

// Thresholds for the sampler correctness checks.
inline constexpr double kGibbsLimitTolerance = 1e-9;
inline constexpr double kDetailedBalanceTolerance = 1e-9;
inline constexpr double kMutationDetectionFloor = 1e-3;
inline constexpr double kTvThreshold = 0.05;

// Mutation fixture: acceptance with the energy difference sign flipped.
double flipped_accept_prob(double e_cur, double e_prop, double log_q_fwd, double log_q_rev);

// Random energy over a tiny space: weighted Hamming to a random reference,
// a random-subset lexicon term, and the masked-model energy of a random
// joint table.
EnergyModel random_energy_model(const StateSpace& space, std::mt19937_64& rng);

// NeighborMlm fitted to random strings over the space's alphabet.
std::shared_ptr<const NeighborMlm> random_neighbor_proposal(const StateSpace& space,
                                                            std::mt19937_64& rng);

// Max |a - 1| over every (x, i, v) when the target is -log p of a random
// joint table and the proposal is that table's exact conditionals.
double gibbs_limit_deviation(std::size_t alphabet, std::size_t length, std::uint64_t seed);

// Max detailed-balance violation for a random energy and a random positive
// proposal; `mutated` swaps in the sign-flipped acceptance.
double detailed_balance_violation(std::size_t alphabet, std::size_t length, std::uint64_t seed,
                                  bool mutated = false);

struct TvResult {
  double tv = 1.0;
  std::size_t steps = 0;
  std::size_t kept = 0;
};

// Runs one long chain (random energy, NeighborMlm proposal), keeps one
// state per epoch and compares with exact enumeration.
TvResult tv_convergence(std::size_t alphabet, std::size_t length, std::size_t steps,
                        std::uint64_t seed);

// Runs the same chain twice and compares results bit for bit.
bool chain_is_deterministic(std::uint64_t seed);

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string relation;  // "<=" or ">"
};

}  // namespace mixmatch::verification

#endif  // MIXMATCH_VERIFICATION_H_
