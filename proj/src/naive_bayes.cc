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

#include <cmath>
#include <set>

#include "mixmatch/classifier.h"
#include "mixmatch/errors.h"

namespace mixmatch {

Eigen::VectorXd Classifier::posterior(const Sequence& x) const {
  Eigen::VectorXd z = logits(x);
  const double m = z.maxCoeff();
  Eigen::VectorXd p = (z.array() - m).exp();
  return p / p.sum();
}

int Classifier::class_id(const std::string& name) const {
  const auto& names = class_names();
  for (std::size_t c = 0; c < names.size(); ++c)
    if (names[c] == name) return static_cast<int>(c);
  return -1;
}

NaiveBayes::NaiveBayes(std::vector<std::string> class_names, Eigen::VectorXd log_prior,
                       Eigen::MatrixXd log_likelihood, double k)
    : class_names_(std::move(class_names)),
      log_prior_(std::move(log_prior)),
      log_likelihood_(std::move(log_likelihood)),
      k_(k) {
  const auto c = static_cast<Eigen::Index>(class_names_.size());
  if (c < 2) throw Error("naive bayes: need at least 2 classes");
  if (log_prior_.size() != c || log_likelihood_.rows() != c)
    throw Error("naive bayes: parameter shapes disagree with class count");
}

Eigen::VectorXd NaiveBayes::logits(const Sequence& x) const {
  Eigen::VectorXd z = log_prior_;
  for (TokenId id : x.ids()) {
    if (id < Vocabulary::kFirstRegular || id >= log_likelihood_.cols()) continue;
    z += log_likelihood_.col(id);
  }
  return z;
}

NaiveBayes fit_nb_classifier(const Corpus& corpus, std::size_t vocab_size, double k) {
  if (!corpus.labeled() || corpus.labels.size() != corpus.lines.size())
    throw Error("naive bayes: corpus must be labeled on every line");
  if (!(k > 0.0)) throw Error("naive bayes: smoothing k must be > 0");
  const std::set<int> present(corpus.labels.begin(), corpus.labels.end());
  if (present.size() < 2) throw Error("naive bayes: need at least 2 classes, got " +
                                      std::to_string(present.size()));

  const auto n_classes = static_cast<Eigen::Index>(corpus.class_names.size());
  const auto v = static_cast<Eigen::Index>(vocab_size);
  const double n_regular = static_cast<double>(vocab_size - Vocabulary::kFirstRegular);

  Eigen::VectorXd class_count = Eigen::VectorXd::Zero(n_classes);
  Eigen::MatrixXd token_count = Eigen::MatrixXd::Zero(n_classes, v);
  for (std::size_t n = 0; n < corpus.lines.size(); ++n) {
    const int c = corpus.labels[n];
    class_count[c] += 1.0;
    for (TokenId id : corpus.lines[n].ids())
      if (id >= Vocabulary::kFirstRegular && id < v) token_count(c, id) += 1.0;
  }

  Eigen::VectorXd log_prior = (class_count.array() / class_count.sum()).log();
  Eigen::MatrixXd log_lik = Eigen::MatrixXd::Zero(n_classes, v);
  for (Eigen::Index c = 0; c < n_classes; ++c) {
    const double total = token_count.row(c).sum();
    for (Eigen::Index t = Vocabulary::kFirstRegular; t < v; ++t)
      log_lik(c, t) = std::log((token_count(c, t) + k) / (total + k * n_regular));
  }
  // Classes with no examples would get log(0) priors.
  for (Eigen::Index c = 0; c < n_classes; ++c)
    if (class_count[c] == 0.0) throw Error("naive bayes: class '" + corpus.class_names[c] +
                                           "' has no examples");
  return NaiveBayes(corpus.class_names, std::move(log_prior), std::move(log_lik), k);
}

Eigen::VectorXd classify(const Classifier& clf, const Sequence& x) { return clf.posterior(x); }

int predict(const Classifier& clf, const Sequence& x) {
  Eigen::VectorXd p = clf.posterior(x);
  Eigen::Index best = 0;
  for (Eigen::Index c = 1; c < p.size(); ++c)
    if (p[c] > p[best]) best = c;
  return static_cast<int>(best);
}

double training_accuracy(const Classifier& clf, const Corpus& corpus) {
  if (corpus.lines.empty()) throw Error("training accuracy: empty corpus");
  std::size_t hits = 0;
  for (std::size_t n = 0; n < corpus.lines.size(); ++n)
    if (predict(clf, corpus.lines[n]) == corpus.labels[n]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(corpus.lines.size());
}

}  // namespace mixmatch
