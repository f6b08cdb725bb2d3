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

#ifndef MIXMATCH_CLASSIFIER_H_
#define MIXMATCH_CLASSIFIER_H_

#include <string>
#include <vector>

#include <Eigen/Core>

#include "mixmatch/corpus.h"
#include "mixmatch/sequence.h"

namespace mixmatch {

// Attribute discriminator. Implementations must be safe for concurrent
// const use.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual std::size_t num_classes() const = 0;
  virtual const std::vector<std::string>& class_names() const = 0;

  // Unnormalized per-class log-scores.
  virtual Eigen::VectorXd logits(const Sequence& x) const = 0;

  // Softmax of logits; sums to 1.
  Eigen::VectorXd posterior(const Sequence& x) const;

  // Class id for a name, or -1.
  int class_id(const std::string& name) const;
};

// Multinomial Naive Bayes over bag-of-tokens with add-k smoothing. Reserved
// ids ([MASK], [UNK]) carry no evidence and are skipped.
class NaiveBayes : public Classifier {
 public:
  // `log_likelihood` is num_classes x vocab_size.
  NaiveBayes(std::vector<std::string> class_names, Eigen::VectorXd log_prior,
             Eigen::MatrixXd log_likelihood, double k);

  std::size_t num_classes() const override { return class_names_.size(); }
  const std::vector<std::string>& class_names() const override { return class_names_; }
  Eigen::VectorXd logits(const Sequence& x) const override;

  const Eigen::VectorXd& log_prior() const { return log_prior_; }
  const Eigen::MatrixXd& log_likelihood() const { return log_likelihood_; }
  double smoothing() const { return k_; }
  std::size_t vocab_size() const { return static_cast<std::size_t>(log_likelihood_.cols()); }

 private:
  std::vector<std::string> class_names_;
  Eigen::VectorXd log_prior_;
  Eigen::MatrixXd log_likelihood_;
  double k_;
};

NaiveBayes fit_nb_classifier(const Corpus& corpus, std::size_t vocab_size, double k = 0.1);

// Normalized posterior vector.
Eigen::VectorXd classify(const Classifier& clf, const Sequence& x);

// Argmax of the posterior, lowest class id on ties.
int predict(const Classifier& clf, const Sequence& x);

// Fraction of corpus lines whose prediction matches the label.
double training_accuracy(const Classifier& clf, const Corpus& corpus);

}  // namespace mixmatch

#endif  // MIXMATCH_CLASSIFIER_H_
