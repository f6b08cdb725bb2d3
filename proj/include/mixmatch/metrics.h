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

#ifndef MIXMATCH_METRICS_H_
#define MIXMATCH_METRICS_H_

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "mixmatch/classifier.h"
#include "mixmatch/sequence.h"

namespace mixmatch {

inline constexpr double kBleuEpsilon = 1e-9;

// Fraction of samples whose predicted class is `target`.
double internal_accuracy(const std::vector<Sequence>& samples, const Classifier& clf, int target);

// Mean per-pair Hamming distance.
double mean_hamming(const std::vector<Sequence>& samples, const std::vector<Sequence>& sources);

// Unique n-grams over total n-grams across all samples. Samples shorter
// than n are skipped with a warning.
double distinct_n(const std::vector<Sequence>& samples, std::size_t n);

// Corpus BLEU with one reference per hypothesis: geometric mean of clipped
// n-gram precisions (zero precisions replaced by 1e-9) times the brevity
// penalty min(1, exp(1 - r/c)).
double corpus_bleu(const std::vector<Sequence>& hypotheses,
                   const std::vector<Sequence>& references, std::size_t max_n = 4);

struct EvalReport {
  std::optional<double> mean_hamming_to_source;
  std::optional<double> internal_classifier_target_rate;
  std::optional<double> distinct_1;
  std::optional<double> distinct_2;
  std::optional<double> distinct_3;
  std::optional<double> corpus_bleu;
  double mean_total_energy = 0.0;
  double acceptance_rate = 0.0;
};

// snake_case keys; absent values are null.
nlohmann::ordered_json to_json(const EvalReport& report);

}  // namespace mixmatch

#endif  // MIXMATCH_METRICS_H_
