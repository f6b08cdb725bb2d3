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

#ifndef MIXMATCH_ENERGY_MODEL_H_
#define MIXMATCH_ENERGY_MODEL_H_

#include <memory>
#include <vector>

#include "mixmatch/experts.h"

namespace mixmatch {

struct WeightedExpert {
  std::shared_ptr<const EnergyExpert> expert;
  double weight = 1.0;
};

// Ordered weighted sum of expert energies. Immutable once handed to a
// sampler.
class EnergyModel {
 public:
  EnergyModel() = default;
  explicit EnergyModel(std::vector<WeightedExpert> experts);

  // Weight must be finite; negative weights are accepted with a warning.
  EnergyModel& add(std::shared_ptr<const EnergyExpert> expert, double weight);

  const std::vector<WeightedExpert>& experts() const { return experts_; }
  std::size_t size() const { return experts_.size(); }
  bool empty() const { return experts_.empty(); }

  // Experts of `this` followed by experts of `other`.
  EnergyModel concat(const EnergyModel& other) const;
  // Every weight multiplied by `factor`.
  EnergyModel scaled(double factor) const;

 private:
  std::vector<WeightedExpert> experts_;
};

struct EnergyBreakdown {
  std::vector<double> components;  // unweighted, in expert order
  double total = 0.0;
};

// Evaluates each expert and sums weight * energy left to right. A failing
// expert is reported with its index and name.
EnergyBreakdown combined_energy(const Sequence& x, const EnergyModel& model);

double total_energy(const Sequence& x, const EnergyModel& model);

}  // namespace mixmatch

#endif  // MIXMATCH_ENERGY_MODEL_H_
