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

#ifndef MIXMATCH_EXPERTS_H_
#define MIXMATCH_EXPERTS_H_

#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>

#include "mixmatch/classifier.h"
#include "mixmatch/conditional_model.h"
#include "mixmatch/embeddings.h"
#include "mixmatch/sequence.h"
#include "mixmatch/tabular_joint.h"

namespace mixmatch {

// Posterior floor applied before the log in the discriminator energy.
inline constexpr double kPosteriorFloor = 1e-12;

enum class ExpertKind { kMlm, kDiscriminator, kHamming, kFuzzy, kLexicon, kJoint, kRemote };

std::string_view to_string(ExpertKind kind);

enum class DiscriminatorMode {
  kNegLogPosterior,  // -log max(p(target | x), 1e-12)
  kRawLogit,         // -logit(target | x)
};

// Number of positions where the ids differ.
double hamming_energy(const Sequence& x, const Sequence& reference);

// 1 - F1 of greedy cosine matching between the token embeddings of x and the
// reference (precision averages over x, recall over the reference).
double fuzzy_energy(const Sequence& x, const Sequence& reference, const EmbeddingTable& emb);

// Negative count of positions holding a lexicon token.
double lexicon_energy(const Sequence& x, const std::unordered_set<TokenId>& lexicon);

double disc_energy(const Sequence& x, const Classifier& clf, int target,
                   DiscriminatorMode mode = DiscriminatorMode::kNegLogPosterior);

// -sum_i log_score(x_i | x with i masked), one masked pass per position.
double mlm_energy(const Sequence& x, const MaskedConditionalModel& mlm);

// A black-box scorer of whole sequences. evaluate() must be a pure function
// of the sequence and safe for concurrent calls.
class EnergyExpert {
 public:
  virtual ~EnergyExpert() = default;
  virtual ExpertKind kind() const = 0;
  virtual std::string name() const { return std::string(to_string(kind())); }
  virtual double evaluate(const Sequence& x) const = 0;
};

class MlmExpert : public EnergyExpert {
 public:
  explicit MlmExpert(std::shared_ptr<const MaskedConditionalModel> model)
      : model_(std::move(model)) {}
  ExpertKind kind() const override { return ExpertKind::kMlm; }
  double evaluate(const Sequence& x) const override { return mlm_energy(x, *model_); }

 private:
  std::shared_ptr<const MaskedConditionalModel> model_;
};

class DiscriminatorExpert : public EnergyExpert {
 public:
  DiscriminatorExpert(std::shared_ptr<const Classifier> clf, int target,
                      DiscriminatorMode mode = DiscriminatorMode::kNegLogPosterior);
  ExpertKind kind() const override { return ExpertKind::kDiscriminator; }
  double evaluate(const Sequence& x) const override {
    return disc_energy(x, *clf_, target_, mode_);
  }
  int target() const { return target_; }
  const Classifier& classifier() const { return *clf_; }

 private:
  std::shared_ptr<const Classifier> clf_;
  int target_;
  DiscriminatorMode mode_;
};

class HammingExpert : public EnergyExpert {
 public:
  explicit HammingExpert(Sequence reference) : reference_(std::move(reference)) {}
  ExpertKind kind() const override { return ExpertKind::kHamming; }
  double evaluate(const Sequence& x) const override { return hamming_energy(x, reference_); }

 private:
  Sequence reference_;
};

class FuzzyExpert : public EnergyExpert {
 public:
  FuzzyExpert(Sequence reference, std::shared_ptr<const EmbeddingTable> emb)
      : reference_(std::move(reference)), emb_(std::move(emb)) {}
  ExpertKind kind() const override { return ExpertKind::kFuzzy; }
  double evaluate(const Sequence& x) const override {
    return fuzzy_energy(x, reference_, *emb_);
  }

 private:
  Sequence reference_;
  std::shared_ptr<const EmbeddingTable> emb_;
};

// Topic and agency control: rewards every occurrence of a listed token.
class LexiconExpert : public EnergyExpert {
 public:
  explicit LexiconExpert(std::unordered_set<TokenId> lexicon, std::string label = "lexicon")
      : lexicon_(std::move(lexicon)), label_(std::move(label)) {}
  ExpertKind kind() const override { return ExpertKind::kLexicon; }
  std::string name() const override { return label_; }
  double evaluate(const Sequence& x) const override { return lexicon_energy(x, lexicon_); }

 private:
  std::unordered_set<TokenId> lexicon_;
  std::string label_;
};

// -log p(x) under an explicit joint table. Used as an exact target in
// verification runs.
class JointExpert : public EnergyExpert {
 public:
  explicit JointExpert(std::shared_ptr<const TabularJoint> joint) : joint_(std::move(joint)) {}
  ExpertKind kind() const override { return ExpertKind::kJoint; }
  double evaluate(const Sequence& x) const override { return -joint_->log_probability(x); }

 private:
  std::shared_ptr<const TabularJoint> joint_;
};

// Reads a lexicon file (one token per line). Tokens missing from the
// vocabulary are dropped.
std::unordered_set<TokenId> load_lexicon(const std::filesystem::path& path, const Vocabulary& vocab);

}  // namespace mixmatch

#endif  // MIXMATCH_EXPERTS_H_
