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

#include "mixmatch/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <spdlog/spdlog.h>

#include "mixmatch/errors.h"
#include "mixmatch/experts.h"

namespace mixmatch {

namespace {

using Ngram = std::vector<TokenId>;

std::map<Ngram, long> ngram_counts(const Sequence& s, std::size_t n) {
  std::map<Ngram, long> out;
  if (s.size() < n) return out;
  for (std::size_t i = 0; i + n <= s.size(); ++i)
    ++out[Ngram(s.ids().begin() + static_cast<long>(i), s.ids().begin() + static_cast<long>(i + n))];
  return out;
}

}  // namespace

double internal_accuracy(const std::vector<Sequence>& samples, const Classifier& clf, int target) {
  if (samples.empty()) throw Error("internal_accuracy: no samples");
  std::size_t hits = 0;
  for (const auto& s : samples) hits += predict(clf, s) == target;
  return static_cast<double>(hits) / static_cast<double>(samples.size());
}

double mean_hamming(const std::vector<Sequence>& samples, const std::vector<Sequence>& sources) {
  if (samples.size() != sources.size())
    throw Error("mean_hamming: " + std::to_string(samples.size()) + " samples vs " +
                std::to_string(sources.size()) + " sources");
  if (samples.empty()) throw Error("mean_hamming: no samples");
  double sum = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) sum += hamming_energy(samples[k], sources[k]);
  return sum / static_cast<double>(samples.size());
}

double distinct_n(const std::vector<Sequence>& samples, std::size_t n) {
  if (n == 0) throw Error("distinct_n: n must be >= 1");
  std::set<Ngram> unique;
  std::size_t total = 0, skipped = 0;
  for (const auto& s : samples) {
    if (s.size() < n) {
      ++skipped;
      continue;
    }
    for (std::size_t i = 0; i + n <= s.size(); ++i) {
      unique.emplace(s.ids().begin() + static_cast<long>(i),
                     s.ids().begin() + static_cast<long>(i + n));
      ++total;
    }
  }
  if (skipped) spdlog::warn("distinct-{}: skipped {} samples shorter than {}", n, skipped, n);
  if (total == 0) throw Error("distinct_n: no sample has length >= " + std::to_string(n));
  return static_cast<double>(unique.size()) / static_cast<double>(total);
}

double corpus_bleu(const std::vector<Sequence>& hypotheses,
                   const std::vector<Sequence>& references, std::size_t max_n) {
  if (hypotheses.empty()) throw Error("corpus_bleu: empty corpus");
  if (hypotheses.size() != references.size())
    throw Error("corpus_bleu: hypothesis/reference count mismatch");
  if (max_n == 0) throw Error("corpus_bleu: max_n must be >= 1");

  std::vector<double> matched(max_n, 0.0), possible(max_n, 0.0);
  double hyp_len = 0.0, ref_len = 0.0;
  for (std::size_t k = 0; k < hypotheses.size(); ++k) {
    hyp_len += static_cast<double>(hypotheses[k].size());
    ref_len += static_cast<double>(references[k].size());
    for (std::size_t n = 1; n <= max_n; ++n) {
      const auto hyp = ngram_counts(hypotheses[k], n);
      const auto ref = ngram_counts(references[k], n);
      for (const auto& [gram, c] : hyp) {
        auto it = ref.find(gram);
        matched[n - 1] += static_cast<double>(std::min(c, it == ref.end() ? 0L : it->second));
        possible[n - 1] += static_cast<double>(c);
      }
    }
  }
  if (hyp_len == 0.0) return 0.0;

  double log_sum = 0.0;
  for (std::size_t n = 0; n < max_n; ++n) {
    const double p = possible[n] > 0.0 ? matched[n] / possible[n] : 0.0;
    log_sum += std::log(p > 0.0 ? p : kBleuEpsilon);
  }
  const double bp = std::min(1.0, std::exp(1.0 - ref_len / hyp_len));
  return bp * std::exp(log_sum / static_cast<double>(max_n));
}

nlohmann::ordered_json to_json(const EvalReport& r) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::ordered_json {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json j;
  j["mean_hamming_to_source"] = opt(r.mean_hamming_to_source);
  j["internal_classifier_target_rate"] = opt(r.internal_classifier_target_rate);
  j["distinct_1"] = opt(r.distinct_1);
  j["distinct_2"] = opt(r.distinct_2);
  j["distinct_3"] = opt(r.distinct_3);
  j["corpus_bleu"] = opt(r.corpus_bleu);
  j["mean_total_energy"] = r.mean_total_energy;
  j["acceptance_rate"] = r.acceptance_rate;
  return j;
}

}  // namespace mixmatch
