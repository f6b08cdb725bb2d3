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

#include "mixmatch/experts.h"

#include <algorithm>
#include <cmath>

#include <spdlog/spdlog.h>

#include "mixmatch/corpus.h"
#include "mixmatch/errors.h"

namespace mixmatch {

std::string_view to_string(ExpertKind kind) {
  switch (kind) {
    case ExpertKind::kMlm: return "mlm";
    case ExpertKind::kDiscriminator: return "discriminator";
    case ExpertKind::kHamming: return "hamming";
    case ExpertKind::kFuzzy: return "fuzzy";
    case ExpertKind::kLexicon: return "lexicon";
    case ExpertKind::kJoint: return "joint";
    case ExpertKind::kRemote: return "remote";
  }
  return "unknown";
}

double hamming_energy(const Sequence& x, const Sequence& reference) {
  if (x.size() != reference.size())
    throw Error("hamming: length mismatch (" + std::to_string(x.size()) + " vs " +
                std::to_string(reference.size()) + ")");
  long diff = 0;
  for (std::size_t i = 0; i < x.size(); ++i) diff += x[i] != reference[i];
  return static_cast<double>(diff);
}

namespace {

Eigen::MatrixXd normalized_rows(const Sequence& x, const EmbeddingTable& emb) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(x.size()), emb.dim());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (static_cast<std::size_t>(x[i]) >= emb.vocab_size() || x[i] < 0)
      throw Error("fuzzy: token id " + std::to_string(x[i]) + " has no embedding");
    const double norm = emb.row(x[i]).norm();
    if (norm == 0.0)
      throw Error("fuzzy: zero-norm embedding for token id " + std::to_string(x[i]));
    m.row(static_cast<Eigen::Index>(i)) = emb.row(x[i]) / norm;
  }
  return m;
}

}  // namespace

double fuzzy_energy(const Sequence& x, const Sequence& reference, const EmbeddingTable& emb) {
  if (x.empty() || reference.empty()) throw Error("fuzzy: empty sequence");
  const Eigen::MatrixXd cand = normalized_rows(x, emb);
  const Eigen::MatrixXd ref = normalized_rows(reference, emb);
  const Eigen::MatrixXd sim = cand * ref.transpose();
  const double precision = sim.rowwise().maxCoeff().mean();
  const double recall = sim.colwise().maxCoeff().mean();
  const double denom = precision + recall;
  const double f1 = denom == 0.0 ? 0.0 : 2.0 * precision * recall / denom;
  return 1.0 - f1;
}

double lexicon_energy(const Sequence& x, const std::unordered_set<TokenId>& lexicon) {
  long hits = 0;
  for (TokenId id : x.ids()) hits += lexicon.count(id) > 0;
  return -static_cast<double>(hits);
}

double disc_energy(const Sequence& x, const Classifier& clf, int target, DiscriminatorMode mode) {
  if (target < 0 || static_cast<std::size_t>(target) >= clf.num_classes())
    throw Error("discriminator: unknown class " + std::to_string(target));
  if (mode == DiscriminatorMode::kRawLogit) return -clf.logits(x)[target];
  const double p = clf.posterior(x)[target];
  return -std::log(std::max(p, kPosteriorFloor));
}

double mlm_energy(const Sequence& x, const MaskedConditionalModel& mlm) {
  double e = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) e -= mlm.log_score(x, i);
  return e;
}

DiscriminatorExpert::DiscriminatorExpert(std::shared_ptr<const Classifier> clf, int target,
                                         DiscriminatorMode mode)
    : clf_(std::move(clf)), target_(target), mode_(mode) {
  if (target_ < 0 || static_cast<std::size_t>(target_) >= clf_->num_classes())
    throw Error("discriminator: unknown class " + std::to_string(target_));
}

std::unordered_set<TokenId> load_lexicon(const std::filesystem::path& path,
                                         const Vocabulary& vocab) {
  std::unordered_set<TokenId> out;
  std::size_t dropped = 0;
  for (const auto& tok : read_lines(path)) {
    if (auto id = vocab.find(tok); id && vocab.is_regular(*id))
      out.insert(*id);
    else
      ++dropped;
  }
  if (dropped) spdlog::warn("lexicon {}: {} entries not in vocabulary", path.string(), dropped);
  return out;
}

}  // namespace mixmatch
