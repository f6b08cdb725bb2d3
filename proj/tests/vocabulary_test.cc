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

#include <stdexcept>

#include <gtest/gtest.h>

#include "mixmatch/corpus.h"
#include "mixmatch/errors.h"
#include "mixmatch/sequence.h"
#include "mixmatch/strings.h"
#include "mixmatch/vocabulary.h"
#include "test_util.h"

namespace mixmatch {
namespace {

using testing::scratch_dir;
using testing::write_file;

TEST(BuildVocab, CountsEveryToken) {
  const auto v = build_vocab({"a b", "a c"}, 1);
  EXPECT_EQ(v.size(), 5u);
  EXPECT_EQ(v.token(Vocabulary::kMask), "[MASK]");
  EXPECT_EQ(v.token(Vocabulary::kUnk), "[UNK]");
  // Most frequent first, then lexicographic.
  EXPECT_EQ(v.token(2), "a");
  EXPECT_EQ(v.token(3), "b");
  EXPECT_EQ(v.token(4), "c");
}

TEST(BuildVocab, MinCountThreshold) {
  const auto v = build_vocab({"a b", "a c"}, 2);
  EXPECT_EQ(v.size(), 3u);
  EXPECT_TRUE(v.find("a").has_value());
  EXPECT_FALSE(v.find("b").has_value());
}

TEST(BuildVocab, EmptyCorpusIsAnError) {
  EXPECT_THROW(build_vocab({}, 1), Error);
}

TEST(Vocabulary, IdTokenBijection) {
  const auto v = build_vocab({"x y z x", "w y"}, 1);
  for (TokenId id = 0; id < static_cast<TokenId>(v.size()); ++id) EXPECT_EQ(v.id(v.token(id)), id);
  EXPECT_EQ(v.id("never-seen"), Vocabulary::kUnk);
  EXPECT_THROW(v.token(static_cast<TokenId>(v.size())), std::out_of_range);
  EXPECT_THROW(v.token(-1), std::out_of_range);
}

TEST(Vocabulary, RejectsDuplicatesAndReservedStrings) {
  EXPECT_THROW(Vocabulary::FromTokens({"a", "a"}), Error);
  EXPECT_THROW(Vocabulary::FromTokens({"[MASK]"}), Error);
}

TEST(Vocabulary, SaveLoadRoundTrip) {
  const auto dir = scratch_dir();
  const auto v = build_vocab({"the cat sat", "the dog"}, 1);
  v.Save(dir / "vocab.txt");
  const auto back = Vocabulary::Load(dir / "vocab.txt");
  EXPECT_EQ(back, v);
  EXPECT_EQ(back.Hash(), v.Hash());
  EXPECT_EQ(back.id("[MASK]"), Vocabulary::kMask);
  EXPECT_EQ(back.id("[UNK]"), Vocabulary::kUnk);
}

TEST(Vocabulary, LoadRequiresReservedHeader) {
  const auto dir = scratch_dir();
  write_file(dir / "bad.txt", "a\nb\n");
  EXPECT_THROW(Vocabulary::Load(dir / "bad.txt"), Error);
  EXPECT_THROW(Vocabulary::Load(dir / "missing.txt"), Error);
}

TEST(Vocabulary, HashDependsOnOrder) {
  EXPECT_NE(Vocabulary::FromTokens({"a", "b"}).Hash(), Vocabulary::FromTokens({"b", "a"}).Hash());
  EXPECT_EQ(Vocabulary::FromTokens({"a", "b"}).HashHex().size(), 16u);
}

TEST(Tokenize, KnownTokens) {
  const auto v = testing::letters(3);
  const auto s = tokenize("a b", v);
  EXPECT_EQ(s.ids(), (std::vector<TokenId>{v.id("a"), v.id("b")}));
  EXPECT_EQ(s.frozen_mask(), (std::vector<bool>{false, false}));
}

TEST(Tokenize, UnknownMapsToUnk) {
  const auto v = testing::letters(3);
  EXPECT_EQ(tokenize("a zzz", v).ids(), (std::vector<TokenId>{v.id("a"), Vocabulary::kUnk}));
}

TEST(Tokenize, EmptyTextIsNotSampleable) {
  const auto s = tokenize("", testing::letters(2));
  EXPECT_TRUE(s.empty());
  EXPECT_FALSE(s.sampleable());
}

TEST(Detokenize, Basics) {
  const auto v = testing::letters(3);
  EXPECT_EQ(detokenize(Sequence({v.id("a"), v.id("b")}), v), "a b");
  EXPECT_EQ(detokenize(Sequence({Vocabulary::kMask}), v), "[MASK]");
  EXPECT_THROW(detokenize(Sequence({99}), v), std::exception);
}

TEST(Detokenize, RoundTripsKnownText) {
  const auto v = build_vocab({"one two three two one"}, 1);
  const std::string text = "three one two two";
  EXPECT_EQ(detokenize(tokenize(text, v), v), text);
}

TEST(Sequence, FrozenMaskLengthMustMatch) {
  EXPECT_THROW(Sequence({2, 3}, {true}), std::exception);
}

TEST(Sequence, RevisablePositions) {
  Sequence s({2, 3, 4}, {true, false, true});
  EXPECT_EQ(s.revisable_positions(), (std::vector<std::size_t>{1}));
  EXPECT_TRUE(s.sampleable());
  s.set_frozen(1, true);
  EXPECT_FALSE(s.sampleable());
}

TEST(Sequence, ValidateChecksIds) {
  const auto v = testing::letters(2);
  EXPECT_NO_THROW(validate(Sequence({0, 1, 2, 3}), v));
  EXPECT_THROW(validate(Sequence({4}), v), Error);
}

TEST(Strings, SplitJoinTrim) {
  EXPECT_EQ(split_whitespace("  a \t b\n"), (std::vector<std::string>{"a", "b"}));
  EXPECT_TRUE(split_whitespace("   ").empty());
  EXPECT_EQ(join({"a", "b", "c"}, ", "), "a, b, c");
  EXPECT_EQ(trim("  x y \n"), "x y");
}

TEST(Corpus, ReadLinesSkipsBlankLines) {
  const auto dir = scratch_dir();
  write_file(dir / "c.txt", "a b  \n\n  \nc\n");
  EXPECT_EQ(read_lines(dir / "c.txt"), (std::vector<std::string>{"a b", "c"}));
}

TEST(Corpus, MissingFileNamesThePath) {
  try {
    read_lines("/nonexistent/corpus.txt");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/corpus.txt"), std::string::npos);
  }
}

TEST(Corpus, ParseLabeledReportsLineNumber) {
  const auto ok = parse_labeled({"pos\tgood food", "neg\tbad food"});
  ASSERT_EQ(ok.size(), 2u);
  EXPECT_EQ(ok[1].label, "neg");
  EXPECT_EQ(ok[1].text, "bad food");
  try {
    parse_labeled({"pos\tfine", "no tab here"}, "data.tsv");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("data.tsv:2"), std::string::npos) << e.what();
  }
}

TEST(Corpus, ClassIdsFollowLabelOrder) {
  const auto v = build_vocab({"x y"}, 1);
  const auto c = make_labeled_corpus({{"zeta", "x"}, {"alpha", "y"}, {"zeta", "y"}}, v);
  EXPECT_EQ(c.class_names, (std::vector<std::string>{"alpha", "zeta"}));
  EXPECT_EQ(c.labels, (std::vector<int>{1, 0, 1}));
  EXPECT_TRUE(c.labeled());
}

}  // namespace
}  // namespace mixmatch
