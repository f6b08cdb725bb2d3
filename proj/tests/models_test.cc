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
#include <random>

#include <gtest/gtest.h>

#include "mixmatch/classifier.h"
#include "mixmatch/corpus.h"
#include "mixmatch/embeddings.h"
#include "mixmatch/errors.h"
#include "mixmatch/model_io.h"
#include "mixmatch/neighbor_mlm.h"
#include "mixmatch/state_space.h"
#include "mixmatch/tabular_joint.h"
#include "test_util.h"

namespace mixmatch {
namespace {

using testing::letters;
using testing::scratch_dir;
using testing::write_file;

Corpus corpus_of(const std::vector<std::string>& lines, const Vocabulary& v) {
  return make_corpus(lines, v);
}

void expect_normalized_over_regular(const Distribution& p) {
  EXPECT_DOUBLE_EQ(p[Vocabulary::kMask], 0.0);
  EXPECT_DOUBLE_EQ(p[Vocabulary::kUnk], 0.0);
  EXPECT_NEAR(p.sum(), 1.0, 1e-12);
  for (Eigen::Index i = Vocabulary::kFirstRegular; i < p.size(); ++i) EXPECT_GT(p[i], 0.0);
}

TEST(NeighborMlm, TallyOfTriples) {
  const auto v = letters(2);
  const TokenId a = v.id("a"), b = v.id("b");
  const auto m = fit_neighbor_mlm(corpus_of({"a b a"}, v), v.size());
  EXPECT_DOUBLE_EQ(m.count(a, b, a), 1.0);
  EXPECT_DOUBLE_EQ(m.count(NeighborMlm::kBoundary, a, b), 1.0);
  EXPECT_DOUBLE_EQ(m.count(b, a, NeighborMlm::kBoundary), 1.0);
  EXPECT_DOUBLE_EQ(m.count(a, a, a), 0.0);
}

TEST(NeighborMlm, ArgmaxFollowsCounts) {
  const auto v = letters(3);
  const auto m = fit_neighbor_mlm(corpus_of({"a b a b"}, v), v.size());
  Distribution p = m.context_distribution(v.id("a"), v.id("a"));
  Eigen::Index best = 0;
  p.maxCoeff(&best);
  EXPECT_EQ(best, v.id("b"));
  expect_normalized_over_regular(p);
}

TEST(NeighborMlm, UnseenContextIsUniform) {
  const auto v = letters(4);
  const auto m = fit_neighbor_mlm(corpus_of({"a b"}, v), v.size(), 0.3);
  const Distribution p = m.context_distribution(v.id("d"), v.id("d"));
  for (TokenId t = Vocabulary::kFirstRegular; t < static_cast<TokenId>(v.size()); ++t)
    EXPECT_NEAR(p[t], 0.25, 1e-15);
}

TEST(NeighborMlm, LargeSmoothingApproachesUniform) {
  const auto v = letters(3);
  const auto m = fit_neighbor_mlm(corpus_of({"a b a", "a b a", "a c a"}, v), v.size(), 1e9);
  const Distribution p = m.context_distribution(v.id("a"), v.id("a"));
  for (TokenId t = Vocabulary::kFirstRegular; t < 5; ++t) EXPECT_NEAR(p[t], 1.0 / 3.0, 1e-8);
}

TEST(NeighborMlm, ConditionalIgnoresCurrentToken) {
  const auto v = letters(3);
  const auto m = fit_neighbor_mlm(corpus_of({"a b c", "a c c", "b a c"}, v), v.size());
  Sequence x = tokenize("a b c", v);
  const Distribution p1 = m.conditional(x, 1);
  x.set(1, Vocabulary::kMask);
  EXPECT_TRUE(p1.isApprox(m.conditional(x, 1)));
  expect_normalized_over_regular(p1);
  EXPECT_THROW(m.conditional(x, 3), std::out_of_range);
}

TEST(NeighborMlm, LogScoreIsSmoothedCount) {
  const auto v = letters(2);
  const auto m = fit_neighbor_mlm(corpus_of({"a b a", "a b a"}, v), v.size(), 0.1);
  const Sequence x = tokenize("a b a", v);
  EXPECT_NEAR(m.log_score(x, 1), std::log(2.1), 1e-15);
}

TEST(NeighborMlm, ReservedCentersCarryNoMass) {
  const auto v = letters(2);
  // "zzz" maps to [UNK]; it must not appear as a center.
  const auto m = fit_neighbor_mlm(corpus_of({"a zzz a", "a b a"}, v), v.size(), 0.1);
  expect_normalized_over_regular(m.context_distribution(v.id("a"), v.id("a")));
  EXPECT_NEAR(m.context_distribution(v.id("a"), v.id("a"))[v.id("b")], 1.1 / 1.2, 1e-15);
}

TEST(StateSpace, LexicographicIndexing) {
  const StateSpace s(4, 2);  // regular ids 2, 3
  EXPECT_EQ(s.num_states(), 4u);
  EXPECT_EQ(s.state(0).ids(), (std::vector<TokenId>{2, 2}));
  EXPECT_EQ(s.state(1).ids(), (std::vector<TokenId>{2, 3}));
  EXPECT_EQ(s.state(2).ids(), (std::vector<TokenId>{3, 2}));
  for (std::size_t n = 0; n < s.num_states(); ++n) EXPECT_EQ(s.index(s.state(n)), n);
  EXPECT_THROW(s.index(Sequence({0, 2})), Error);
  EXPECT_THROW(s.index(Sequence({2})), Error);
}

TEST(StateSpace, SaturatesInsteadOfOverflowing) {
  EXPECT_EQ(StateSpace(1002, 40).num_states(), SIZE_MAX);
}

TEST(TabularJoint, UniformConditionals) {
  const auto t = TabularJoint::Uniform(4, 2);
  for (std::size_t n = 0; n < 4; ++n)
    for (std::size_t i = 0; i < 2; ++i) {
      const Distribution p = t.conditional(t.space().state(n), i);
      EXPECT_NEAR(p[2], 0.5, 1e-15);
      EXPECT_NEAR(p[3], 0.5, 1e-15);
    }
}

TEST(TabularJoint, ConditionalIsRowNormalization) {
  // p(aa)=0.4, p(ab)=0.4, p(ba)=0.1, p(bb)=0.1
  Eigen::VectorXd probs(4);
  probs << 0.4, 0.4, 0.1, 0.1;
  const TabularJoint t(StateSpace(4, 2), probs);
  const Distribution p = t.conditional(Sequence({2, 2}), 1);
  EXPECT_NEAR(p[2], 0.5, 1e-12);
  EXPECT_NEAR(p[3], 0.5, 1e-12);
  // Column at position 0 given b in slot 1: 0.4 / (0.4 + 0.1).
  const Distribution q = t.conditional(Sequence({2, 3}), 0);
  EXPECT_NEAR(q[2], 0.8, 1e-12);
  EXPECT_NEAR(t.log_score(Sequence({3, 3}), 0), std::log(0.2), 1e-12);
}

TEST(TabularJoint, RejectsInvalidTables) {
  Eigen::VectorXd bad(4);
  bad << 0.5, 0.5, 0.0, 0.0;
  EXPECT_THROW(TabularJoint(StateSpace(4, 2), bad), Error);
  Eigen::VectorXd unnorm = Eigen::VectorXd::Constant(4, 0.3);
  EXPECT_THROW(TabularJoint(StateSpace(4, 2), unnorm), Error);
}

TEST(TabularJoint, RandomIsNormalizedAndSeeded) {
  std::mt19937_64 r1(3), r2(3);
  const auto a = TabularJoint::Random(5, 3, r1);
  const auto b = TabularJoint::Random(5, 3, r2);
  EXPECT_NEAR(a.probabilities().sum(), 1.0, 1e-12);
  EXPECT_GT(a.probabilities().minCoeff(), 0.0);
  EXPECT_EQ(a.probabilities(), b.probabilities());
}

Corpus separable_corpus(const Vocabulary& v) {
  return make_labeled_corpus({{"pos", "good fine good"},
                              {"pos", "fine good x"},
                              {"neg", "bad awful y"},
                              {"neg", "awful bad bad"}},
                             v);
}

TEST(NaiveBayes, SeparableCorpusIsLearned) {
  const auto v = build_vocab({"good fine x bad awful y"}, 1);
  const auto c = separable_corpus(v);
  const auto clf = fit_nb_classifier(c, v.size());
  EXPECT_DOUBLE_EQ(training_accuracy(clf, c), 1.0);
  EXPECT_EQ(clf.class_names(), (std::vector<std::string>{"neg", "pos"}));
  EXPECT_EQ(predict(clf, tokenize("good", v)), clf.class_id("pos"));
  EXPECT_EQ(clf.class_id("nope"), -1);
}

TEST(NaiveBayes, SymmetricCountsGiveEvenPosterior) {
  const auto v = build_vocab({"a b"}, 1);
  const auto c = make_labeled_corpus({{"p", "a b"}, {"q", "b a"}}, v);
  const auto clf = fit_nb_classifier(c, v.size());
  const auto post = classify(clf, tokenize("a a b", v));
  EXPECT_NEAR(post[0], 0.5, 1e-12);
  EXPECT_NEAR(post[1], 0.5, 1e-12);
  // Ties go to the lowest class id.
  EXPECT_EQ(predict(clf, tokenize("a", v)), 0);
}

TEST(NaiveBayes, NoFeaturesGivesPrior) {
  const auto v = build_vocab({"a b"}, 1);
  const auto c = make_labeled_corpus({{"p", "a"}, {"p", "a"}, {"p", "b"}, {"q", "b"}}, v);
  const auto clf = fit_nb_classifier(c, v.size());
  // Empty sequence and reserved-only sequence carry no evidence.
  for (const auto& x : {Sequence(), Sequence({Vocabulary::kMask, Vocabulary::kUnk})}) {
    const auto post = classify(clf, x);
    EXPECT_NEAR(post[0], 0.75, 1e-12);
    EXPECT_NEAR(post[1], 0.25, 1e-12);
  }
}

TEST(NaiveBayes, NeedsTwoClasses) {
  const auto v = build_vocab({"a"}, 1);
  EXPECT_THROW(fit_nb_classifier(make_labeled_corpus({{"p", "a"}}, v), v.size()), Error);
}

TEST(NaiveBayes, PosteriorSumsToOne) {
  const auto v = build_vocab({"good fine x bad awful y"}, 1);
  const auto clf = fit_nb_classifier(separable_corpus(v), v.size());
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<TokenId> tok(0, static_cast<TokenId>(v.size()) - 1);
  for (int n = 0; n < 50; ++n) {
    std::vector<TokenId> ids(5);
    for (auto& t : ids) t = tok(rng);
    EXPECT_NEAR(classify(clf, Sequence(ids)).sum(), 1.0, 1e-12);
  }
}

TEST(Embeddings, LoadAndFallbacks) {
  const auto dir = scratch_dir();
  const auto v = letters(3);
  write_file(dir / "e.txt", "a 1 0\nb 0 1\n");
  const auto e = EmbeddingTable::Load(dir / "e.txt", v);
  EXPECT_EQ(e.dim(), 2);
  EXPECT_DOUBLE_EQ(e.row(v.id("a"))(0), 1.0);
  // c is absent and there is no [UNK] row: mean of loaded vectors.
  EXPECT_DOUBLE_EQ(e.row(v.id("c"))(0), 0.5);
  EXPECT_DOUBLE_EQ(e.row(v.id("c"))(1), 0.5);

  write_file(dir / "u.txt", "a 1 0\n[UNK] 3 4\n");
  const auto u = EmbeddingTable::Load(dir / "u.txt", v);
  EXPECT_DOUBLE_EQ(u.row(v.id("b"))(1), 4.0);

  write_file(dir / "bad.txt", "a 1 0\nb 1\n");
  EXPECT_THROW(EmbeddingTable::Load(dir / "bad.txt", v), Error);
}

TEST(ModelIo, NeighborMlmRoundTrip) {
  const auto dir = scratch_dir();
  const auto v = build_vocab({"a b c a b"}, 1);
  const auto m = fit_neighbor_mlm(make_corpus({"a b c a b", "c c a"}, v), v.size(), 0.25);
  save_neighbor_mlm(dir / "mlm.json", m, v);
  const auto back = load_neighbor_mlm(dir / "mlm.json", v);
  EXPECT_EQ(back.smoothing(), 0.25);
  const Sequence x = tokenize("a b c", v);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back.conditional(x, i), m.conditional(x, i));
    EXPECT_EQ(back.log_score(x, i), m.log_score(x, i));
  }
}

TEST(ModelIo, NaiveBayesRoundTrip) {
  const auto dir = scratch_dir();
  const auto v = build_vocab({"good fine x bad awful y"}, 1);
  const auto clf = fit_nb_classifier(separable_corpus(v), v.size());
  save_naive_bayes(dir / "clf.json", clf, v);
  const auto back = load_naive_bayes(dir / "clf.json", v);
  EXPECT_EQ(back.class_names(), clf.class_names());
  EXPECT_EQ(back.log_prior(), clf.log_prior());
  EXPECT_EQ(back.log_likelihood(), clf.log_likelihood());
}

TEST(ModelIo, RejectsForeignVocabulary) {
  const auto dir = scratch_dir();
  const auto v = build_vocab({"a b"}, 1);
  save_neighbor_mlm(dir / "mlm.json", fit_neighbor_mlm(make_corpus({"a b"}, v), v.size()), v);
  EXPECT_THROW(load_neighbor_mlm(dir / "mlm.json", build_vocab({"a c"}, 1)), Error);
  write_file(dir / "junk.json", "{\"format\": \"something else\"}");
  EXPECT_THROW(load_neighbor_mlm(dir / "junk.json", v), Error);
  EXPECT_THROW(load_naive_bayes(dir / "mlm.json", v), Error);
}

}  // namespace
}  // namespace mixmatch
