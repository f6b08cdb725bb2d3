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

#ifndef MIXMATCH_SAMPLER_H_
#define MIXMATCH_SAMPLER_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "mixmatch/conditional_model.h"
#include "mixmatch/energy_model.h"
#include "mixmatch/sequence.h"

namespace mixmatch {

// Seeded 64-bit Mersenne Twister with fixed, library-independent derived
// draws so chains replay identically across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform in [0, n).
  std::size_t index(std::size_t n);
  // Draws an id from a normalized distribution by inverse CDF.
  TokenId categorical(const Distribution& p);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

enum class PositionOrder {
  kRandomPermutation,  // each epoch visits every revisable position once
  kWithReplacement,    // each step picks a revisable position uniformly
};

struct SamplerConfig {
  int epochs = 8;
  std::uint64_t seed = 0;
  PositionOrder order = PositionOrder::kRandomPermutation;
  std::shared_ptr<const EnergyModel> energy;
  std::shared_ptr<const MaskedConditionalModel> proposal;

  void validate() const;
};

struct ProposalMove {
  std::size_t position = 0;
  TokenId old_id = 0;
  TokenId proposed_id = 0;
  double log_q_fwd = 0.0;  // log p_prop(proposed | context)
  double log_q_rev = 0.0;  // log p_prop(old | context)
  // The old token has no proposal mass ([MASK] seeds, [UNK] sources), so
  // no reverse move exists and the fill is accepted unconditionally.
  bool leaves_support = false;
};

struct TraceRecord {
  std::size_t step = 0;
  std::size_t position = 0;
  TokenId old_id = 0;
  TokenId new_id = 0;  // proposed id, whether or not accepted
  double delta_e = 0.0;  // E(proposed) - E(current)
  double accept_prob = 1.0;
  bool accepted = false;
  double total_e = 0.0;  // energy of the chain state after this step

  bool operator==(const TraceRecord&) const = default;
};

struct ChainResult {
  Sequence initial;
  Sequence final;
  double final_energy = 0.0;
  std::vector<TraceRecord> trace;
  double acceptance_rate = 0.0;

  bool operator==(const ChainResult&) const = default;
};

struct StepResult {
  Sequence next;
  TraceRecord record;
  ProposalMove move;
  double energy = 0.0;  // energy of `next`
};

// Prompt tokens copied and frozen, followed by [MASK] up to total_length.
Sequence init_prompted(const Sequence& prompt, std::size_t total_length);

// Copy of the source. When `frozen_positions` is given exactly those indices
// are frozen; otherwise every position is revisable.
Sequence init_revision(const Sequence& source,
                       const std::optional<std::vector<std::size_t>>& frozen_positions = {});

// min(1, exp((E_cur - E_prop) + log_q_rev - log_q_fwd)), in log space.
double accept_prob(double e_cur, double e_prop, double log_q_fwd, double log_q_rev);

// One Metropolis-Hastings move at position i. Draw order on `rng`: one
// uniform for the proposal, then one uniform for acceptance.
// `current_energy`, when given, must equal the energy of x.
StepResult step(const Sequence& x, std::size_t i, const EnergyModel& energy,
                const MaskedConditionalModel& proposal, Rng& rng,
                std::optional<double> current_energy = std::nullopt);

ChainResult run_chain(const Sequence& init, const SamplerConfig& config);

// Chain c starts from inits[c] (or inits[0] when a single init is given) with
// seed config.seed + c. Results are in chain order regardless of `threads`.
std::vector<ChainResult> run_ensemble(const std::vector<Sequence>& inits,
                                      const SamplerConfig& config, std::size_t n_chains,
                                      unsigned threads = 0);

}  // namespace mixmatch

#endif  // MIXMATCH_SAMPLER_H_
