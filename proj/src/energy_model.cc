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

#include "mixmatch/energy_model.h"

#include <cmath>

#include <spdlog/spdlog.h>

#include "mixmatch/errors.h"

namespace mixmatch {

namespace {

void check_weight(const WeightedExpert& we) {
  if (!we.expert) throw Error("energy model: null expert");
  if (!std::isfinite(we.weight))
    throw Error("energy model: non-finite weight for expert '" + we.expert->name() + "'");
  if (we.weight < 0.0)
    spdlog::warn("energy model: negative weight {} for expert '{}'", we.weight, we.expert->name());
}

}  // namespace

EnergyModel::EnergyModel(std::vector<WeightedExpert> experts) : experts_(std::move(experts)) {
  for (const auto& we : experts_) check_weight(we);
}

EnergyModel& EnergyModel::add(std::shared_ptr<const EnergyExpert> expert, double weight) {
  WeightedExpert we{std::move(expert), weight};
  check_weight(we);
  experts_.push_back(std::move(we));
  return *this;
}

EnergyModel EnergyModel::concat(const EnergyModel& other) const {
  auto all = experts_;
  all.insert(all.end(), other.experts_.begin(), other.experts_.end());
  return EnergyModel(std::move(all));
}

EnergyModel EnergyModel::scaled(double factor) const {
  auto all = experts_;
  for (auto& we : all) we.weight *= factor;
  return EnergyModel(std::move(all));
}

EnergyBreakdown combined_energy(const Sequence& x, const EnergyModel& model) {
  EnergyBreakdown out;
  out.components.reserve(model.size());
  for (std::size_t k = 0; k < model.size(); ++k) {
    const auto& we = model.experts()[k];
    double e;
    try {
      e = we.expert->evaluate(x);
    } catch (const std::exception& ex) {
      throw Error("expert #" + std::to_string(k) + " (" + we.expert->name() + "): " + ex.what());
    }
    out.components.push_back(e);
    out.total += we.weight * e;
  }
  return out;
}

double total_energy(const Sequence& x, const EnergyModel& model) {
  return combined_energy(x, model).total;
}

}  // namespace mixmatch
