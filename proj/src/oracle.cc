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

#include "mixmatch/oracle.h"

#include <cmath>

#include "mixmatch/errors.h"

namespace mixmatch {

double ExactDistribution::z() const { return std::exp(log_z); }

ExactDistribution enumerate_distribution(const EnergyModel& energy, const StateSpace& space) {
  if (space.num_states() > kEnumerationLimit)
    throw Error("enumerate: state space V^L = " + std::to_string(space.num_states()) +
                " exceeds the limit of " + std::to_string(kEnumerationLimit));
  const auto n = static_cast<Eigen::Index>(space.num_states());
  ExactDistribution out{space, Eigen::VectorXd(n), Eigen::VectorXd(n), 0.0};
  for (Eigen::Index s = 0; s < n; ++s)
    out.energy[s] = total_energy(space.state(static_cast<std::size_t>(s)), energy);
  if (!out.energy.allFinite()) throw Error("enumerate: non-finite energy");
  // log Z = log sum exp(-E) = -E_min + log sum exp(-(E - E_min))
  const double e_min = out.energy.minCoeff();
  const Eigen::VectorXd w = (-(out.energy.array() - e_min)).exp();
  const double sum = w.sum();
  out.log_z = -e_min + std::log(sum);
  out.prob = w / sum;
  return out;
}

nlohmann::ordered_json to_json(const ExactDistribution& dist) {
  nlohmann::ordered_json j;
  j["z"] = dist.z();
  j["log_z"] = dist.log_z;
  j["energy"] = std::vector<double>(dist.energy.data(), dist.energy.data() + dist.energy.size());
  j["prob"] = std::vector<double>(dist.prob.data(), dist.prob.data() + dist.prob.size());
  return j;
}

double tv_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  if (p.size() != q.size())
    throw Error("tv_distance: index sets differ (" + std::to_string(p.size()) + " vs " +
                std::to_string(q.size()) + ")");
  if (std::abs(p.sum() - 1.0) > 1e-6 || std::abs(q.sum() - 1.0) > 1e-6)
    throw Error("tv_distance: inputs must be normalized");
  return 0.5 * (p - q).cwiseAbs().sum();
}

Eigen::VectorXd empirical_distribution(const std::vector<Sequence>& samples,
                                       const StateSpace& space) {
  if (samples.empty()) throw Error("empirical_distribution: no samples");
  if (space.num_states() > kEnumerationLimit)
    throw Error("empirical_distribution: state space exceeds the limit");
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space.num_states()));
  for (const auto& s : samples) {
    if (s.size() != space.length())
      throw Error("empirical_distribution: sample length " + std::to_string(s.size()) +
                  " != " + std::to_string(space.length()));
    counts[static_cast<Eigen::Index>(space.index(s))] += 1.0;
  }
  return counts / static_cast<double>(samples.size());
}

std::vector<Sequence> replay_states(const ChainResult& chain, std::size_t every) {
  if (every == 0) throw Error("replay_states: every must be >= 1");
  std::vector<Sequence> out;
  Sequence cur = chain.initial;
  for (std::size_t k = 0; k < chain.trace.size(); ++k) {
    const auto& r = chain.trace[k];
    if (r.accepted) cur.set(r.position, r.new_id);
    if ((k + 1) % every == 0) out.push_back(cur);
  }
  return out;
}

double check_detailed_balance(const EnergyModel& energy, const MaskedConditionalModel& proposal,
                              const StateSpace& space, const AcceptanceFn& accept) {
  if (space.num_states() > kDetailedBalanceLimit)
    throw Error("detailed balance: state space V^L = " + std::to_string(space.num_states()) +
                " exceeds the limit of " + std::to_string(kDetailedBalanceLimit));
  const auto dist = enumerate_distribution(energy, space);
  const std::size_t n = space.num_states();
  const std::size_t length = space.length();
  const double pick = 1.0 / static_cast<double>(length);

  // q[s][i] = proposal at position i given state s with i masked.
  std::vector<std::vector<Distribution>> q(n, std::vector<Distribution>(length));
  for (std::size_t s = 0; s < n; ++s) {
    Sequence x = space.state(s);
    for (std::size_t i = 0; i < length; ++i) {
      Sequence masked = x;
      masked.set(i, Vocabulary::kMask);
      q[s][i] = proposal.conditional(masked, i);
    }
  }

  auto transition = [&](std::size_t from, std::size_t to, std::size_t i, TokenId old_id,
                        TokenId new_id) {
    const double log_fwd = std::log(q[from][i][new_id]);
    const double log_rev = std::log(q[from][i][old_id]);
    const auto a = accept(dist.energy[static_cast<Eigen::Index>(from)],
                          dist.energy[static_cast<Eigen::Index>(to)], log_fwd, log_rev);
    return pick * q[from][i][new_id] * a;
  };

  double worst = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    const Sequence x = space.state(s);
    for (std::size_t i = 0; i < length; ++i) {
      for (std::size_t v = Vocabulary::kFirstRegular; v < space.vocab_size(); ++v) {
        const auto new_id = static_cast<TokenId>(v);
        if (new_id == x[i]) continue;
        Sequence y = x;
        y.set(i, new_id);
        const std::size_t t = space.index(y);
        const double flow_fwd =
            dist.prob[static_cast<Eigen::Index>(s)] * transition(s, t, i, x[i], new_id);
        const double flow_rev =
            dist.prob[static_cast<Eigen::Index>(t)] * transition(t, s, i, new_id, x[i]);
        worst = std::max(worst, std::abs(flow_fwd - flow_rev));
      }
    }
  }
  return worst;
}

}  // namespace mixmatch
