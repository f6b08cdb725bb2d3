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

#include "mixmatch/sampler.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "mixmatch/errors.h"

namespace mixmatch {

std::size_t Rng::index(std::size_t n) {
  auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
  return std::min(k, n - 1);
}

TokenId Rng::categorical(const Distribution& p) {
  const double u = uniform();
  double cum = 0.0;
  Eigen::Index last = -1;
  for (Eigen::Index v = 0; v < p.size(); ++v) {
    if (p[v] <= 0.0) continue;
    cum += p[v];
    last = v;
    if (u < cum) return static_cast<TokenId>(v);
  }
  if (last < 0) throw Error("categorical: distribution has no mass");
  return static_cast<TokenId>(last);  // rounding left u >= cum
}

void SamplerConfig::validate() const {
  if (epochs < 1) throw ConfigError("sampler: epochs must be >= 1");
  if (!energy) throw ConfigError("sampler: energy model missing");
  if (!proposal) throw ConfigError("sampler: proposal model missing");
}

Sequence init_prompted(const Sequence& prompt, std::size_t total_length) {
  if (prompt.size() >= total_length)
    throw Error("init_prompted: prompt length " + std::to_string(prompt.size()) +
                " leaves nothing to generate at length " + std::to_string(total_length));
  std::vector<TokenId> ids(total_length, Vocabulary::kMask);
  std::vector<bool> frozen(total_length, false);
  for (std::size_t i = 0; i < prompt.size(); ++i) {
    ids[i] = prompt[i];
    frozen[i] = true;
  }
  return Sequence(std::move(ids), std::move(frozen));
}

Sequence init_revision(const Sequence& source,
                       const std::optional<std::vector<std::size_t>>& frozen_positions) {
  if (source.empty()) throw Error("init_revision: empty source");
  Sequence out(source.ids());
  if (frozen_positions) {
    for (std::size_t i : *frozen_positions) {
      if (i >= out.size())
        throw Error("init_revision: frozen position " + std::to_string(i) + " out of range");
      out.set_frozen(i, true);
    }
  }
  if (!out.sampleable()) throw Error("init_revision: every position is frozen");
  return out;
}

double accept_prob(double e_cur, double e_prop, double log_q_fwd, double log_q_rev) {
  if (!std::isfinite(e_cur) || !std::isfinite(e_prop) || !std::isfinite(log_q_fwd) ||
      !std::isfinite(log_q_rev))
    throw Error("accept_prob: non-finite input");
  const double log_ratio = (e_cur - e_prop) + log_q_rev - log_q_fwd;
  return std::exp(std::min(0.0, log_ratio));
}

StepResult step(const Sequence& x, std::size_t i, const EnergyModel& energy,
                const MaskedConditionalModel& proposal, Rng& rng,
                std::optional<double> current_energy) {
  if (i >= x.size()) throw Error("step: position " + std::to_string(i) + " out of range");
  if (x.frozen(i)) throw Error("step: position " + std::to_string(i) + " is frozen");

  Sequence masked = x;
  masked.set(i, Vocabulary::kMask);
  const Distribution q = proposal.conditional(masked, i);
  const TokenId proposed = rng.categorical(q);
  const double u = rng.uniform();

  const double e_cur = current_energy ? *current_energy : total_energy(x, energy);

  StepResult out;
  out.move.position = i;
  out.move.old_id = x[i];
  out.move.proposed_id = proposed;
  out.move.log_q_fwd = std::log(q[proposed]);
  const bool old_in_support = x[i] >= 0 && x[i] < q.size() && q[x[i]] > 0.0;
  out.move.leaves_support = !old_in_support;
  out.move.log_q_rev = old_in_support ? std::log(q[x[i]]) : out.move.log_q_fwd;

  out.record.position = i;
  out.record.old_id = x[i];
  out.record.new_id = proposed;

  if (proposed == x[i]) {
    out.next = x;
    out.energy = e_cur;
    out.record.delta_e = 0.0;
    out.record.accept_prob = 1.0;
    out.record.accepted = true;
    out.record.total_e = e_cur;
    return out;
  }

  Sequence candidate = x;
  candidate.set(i, proposed);
  const double e_prop = total_energy(candidate, energy);
  const double a = out.move.leaves_support
                       ? 1.0
                       : accept_prob(e_cur, e_prop, out.move.log_q_fwd, out.move.log_q_rev);
  out.record.delta_e = e_prop - e_cur;
  out.record.accept_prob = a;
  out.record.accepted = u < a;
  if (out.record.accepted) {
    out.next = std::move(candidate);
    out.energy = e_prop;
  } else {
    out.next = x;
    out.energy = e_cur;
  }
  out.record.total_e = out.energy;
  return out;
}

ChainResult run_chain(const Sequence& init, const SamplerConfig& config) {
  config.validate();
  if (!init.sampleable()) throw Error("run_chain: initial sequence has no revisable position");

  Rng rng(config.seed);
  const auto revisable = init.revisable_positions();
  const std::size_t n = revisable.size();

  ChainResult result;
  result.initial = init;
  result.trace.reserve(static_cast<std::size_t>(config.epochs) * n);

  Sequence cur = init;
  double e_cur = total_energy(cur, *config.energy);
  std::size_t accepted = 0;
  std::vector<std::size_t> order = revisable;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    if (config.order == PositionOrder::kRandomPermutation) {
      order = revisable;
      for (std::size_t k = n; k > 1; --k) std::swap(order[k - 1], order[rng.index(k)]);
    } else {
      for (std::size_t k = 0; k < n; ++k) order[k] = revisable[rng.index(n)];
    }
    for (std::size_t pos : order) {
      auto s = step(cur, pos, *config.energy, *config.proposal, rng, e_cur);
      s.record.step = result.trace.size();
      accepted += s.record.accepted;
      result.trace.push_back(s.record);
      cur = std::move(s.next);
      e_cur = s.energy;
    }
  }
  result.final = std::move(cur);
  result.final_energy = e_cur;
  result.acceptance_rate =
      result.trace.empty() ? 0.0
                           : static_cast<double>(accepted) / static_cast<double>(result.trace.size());
  return result;
}

std::vector<ChainResult> run_ensemble(const std::vector<Sequence>& inits,
                                      const SamplerConfig& config, std::size_t n_chains,
                                      unsigned threads) {
  if (n_chains == 0) throw Error("run_ensemble: n_chains must be >= 1");
  if (inits.empty()) throw Error("run_ensemble: no initial sequences");
  if (inits.size() != 1 && inits.size() != n_chains)
    throw Error("run_ensemble: expected 1 or " + std::to_string(n_chains) + " initial sequences");
  config.validate();

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<ChainResult> results(n_chains);
  auto run_one = [&](std::size_t c) {
    SamplerConfig cfg = config;
    cfg.seed = config.seed + c;
    results[c] = run_chain(inits.size() == 1 ? inits[0] : inits[c], cfg);
  };
  if (threads == 1 || n_chains == 1) {
    for (std::size_t c = 0; c < n_chains; ++c) run_one(c);
    return results;
  }
  // Chains are claimed in strides; each writes only its own slot.
  std::vector<std::future<void>> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.push_back(std::async(std::launch::async, [&, t] {
      for (std::size_t c = t; c < n_chains; c += threads) run_one(c);
    }));
  }
  for (auto& w : workers) w.get();
  return results;
}

}  // namespace mixmatch
