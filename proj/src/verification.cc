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

#include "mixmatch/verification.h"

#include <cmath>

#include "mixmatch/oracle.h"
#include "mixmatch/sampler.h"

namespace mixmatch::verification {

double flipped_accept_prob(double e_cur, double e_prop, double log_q_fwd, double log_q_rev) {
  return accept_prob(e_prop, e_cur, log_q_fwd, log_q_rev);
}

EnergyModel random_energy_model(const StateSpace& space, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> weight(0.2, 1.0);
  std::uniform_int_distribution<std::size_t> pick_state(0, space.num_states() - 1);
  std::bernoulli_distribution coin(0.5);

  EnergyModel model;
  model.add(std::make_shared<HammingExpert>(space.state(pick_state(rng))), weight(rng));

  std::unordered_set<TokenId> lexicon;
  for (std::size_t v = Vocabulary::kFirstRegular; v < space.vocab_size(); ++v)
    if (coin(rng)) lexicon.insert(static_cast<TokenId>(v));
  model.add(std::make_shared<LexiconExpert>(std::move(lexicon)), weight(rng));

  auto joint = std::make_shared<TabularJoint>(
      TabularJoint::Random(space.vocab_size(), space.length(), rng));
  model.add(std::make_shared<MlmExpert>(joint), 0.5 * weight(rng));
  return model;
}

std::shared_ptr<const NeighborMlm> random_neighbor_proposal(const StateSpace& space,
                                                            std::mt19937_64& rng) {
  Corpus corpus;
  std::uniform_int_distribution<std::size_t> pick_state(0, space.num_states() - 1);
  for (int n = 0; n < 20; ++n) corpus.lines.push_back(space.state(pick_state(rng)));
  return std::make_shared<NeighborMlm>(fit_neighbor_mlm(corpus, space.vocab_size(), 0.5));
}

double gibbs_limit_deviation(std::size_t alphabet, std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const StateSpace space(alphabet + Vocabulary::kFirstRegular, length);
  const auto joint = TabularJoint::Random(space.vocab_size(), length, rng);
  double worst = 0.0;
  for (std::size_t s = 0; s < space.num_states(); ++s) {
    const Sequence x = space.state(s);
    const double e_cur = -joint.log_probability(x);
    for (std::size_t i = 0; i < length; ++i) {
      Sequence masked = x;
      masked.set(i, Vocabulary::kMask);
      const Distribution q = joint.conditional(masked, i);
      for (std::size_t v = Vocabulary::kFirstRegular; v < space.vocab_size(); ++v) {
        Sequence y = x;
        y.set(i, static_cast<TokenId>(v));
        const double e_prop = -joint.log_probability(y);
        const double a = accept_prob(e_cur, e_prop, std::log(q[static_cast<Eigen::Index>(v)]),
                                     std::log(q[x[i]]));
        worst = std::max(worst, std::abs(a - 1.0));
      }
    }
  }
  return worst;
}

double detailed_balance_violation(std::size_t alphabet, std::size_t length, std::uint64_t seed,
                                  bool mutated) {
  std::mt19937_64 rng(seed);
  const StateSpace space(alphabet + Vocabulary::kFirstRegular, length);
  const EnergyModel energy = random_energy_model(space, rng);
  const auto proposal = TabularJoint::Random(space.vocab_size(), length, rng);
  return mutated ? check_detailed_balance(energy, proposal, space, flipped_accept_prob)
                 : check_detailed_balance(energy, proposal, space);
}

TvResult tv_convergence(std::size_t alphabet, std::size_t length, std::size_t steps,
                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const StateSpace space(alphabet + Vocabulary::kFirstRegular, length);
  auto energy = std::make_shared<EnergyModel>(random_energy_model(space, rng));
  auto proposal = random_neighbor_proposal(space, rng);

  SamplerConfig cfg;
  cfg.energy = energy;
  cfg.proposal = proposal;
  cfg.seed = seed;
  cfg.epochs = static_cast<int>((steps + length - 1) / length);
  const auto chain = run_chain(space.state(0), cfg);

  const auto kept = replay_states(chain, length);
  const auto exact = enumerate_distribution(*energy, space);
  const auto empirical = empirical_distribution(kept, space);
  return {tv_distance(empirical, exact.prob), chain.trace.size(), kept.size()};
}

bool chain_is_deterministic(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const StateSpace space(3 + Vocabulary::kFirstRegular, 4);
  SamplerConfig cfg;
  cfg.energy = std::make_shared<EnergyModel>(random_energy_model(space, rng));
  cfg.proposal = random_neighbor_proposal(space, rng);
  cfg.seed = seed;
  cfg.epochs = 50;
  Sequence init = space.state(0);
  init.set_frozen(0, true);
  return run_chain(init, cfg) == run_chain(init, cfg);
}

}  // namespace mixmatch::verification
