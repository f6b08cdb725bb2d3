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

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "mixmatch/errors.h"
#include "mixmatch/run_config.h"
#include "test_util.h"

namespace mixmatch {
namespace {

using nlohmann::json;
using testing::scratch_dir;
using testing::write_file;

// Minimal model directory: the files only need to exist for validation.
std::filesystem::path fake_model_dir(const std::filesystem::path& dir) {
  for (const char* f : {"vocab.txt", "mlm.json", "classifier.json"}) write_file(dir / "m" / f, "x");
  write_file(dir / "prompts.txt", "the movie\n");
  write_file(dir / "src.txt", "the movie was bad\n");
  write_file(dir / "lex.txt", "decided\n");
  write_file(dir / "emb.txt", "a 1 0\n");
  return dir / "m";
}

std::string error_of(const json& j, const std::filesystem::path& base, const RunOverrides& ov = {}) {
  try {
    parse_run_config(j, base, ov);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(Presets, EncodeNamedWeights) {
  const Preset* p = find_preset("prompted-sentiment");
  ASSERT_NE(p, nullptr);
  EXPECT_EQ(p->task, Task::kGenerate);
  EXPECT_EQ(p->epochs, 15);
  ASSERT_EQ(p->experts.size(), 2u);
  EXPECT_EQ(p->experts[1].kind, ExpertKind::kDiscriminator);
  EXPECT_EQ(p->experts[1].weight, 40.0);

  const Preset* f = find_preset("formality-disc-up");
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(f->experts[1].weight, 140.0);
  EXPECT_EQ(f->experts[2].weight, 15.0);
  EXPECT_EQ(f->experts[3].weight, 100.0);

  const Preset* a = find_preset("agency");
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(a->experts[1].weight, 100.0);
  EXPECT_EQ(a->experts[2].weight, 50.0);
  EXPECT_EQ(a->experts[3].weight, 100.0);

  EXPECT_EQ(find_preset("sentiment-disc-up")->experts[2].weight, 25.0);
  EXPECT_EQ(find_preset("sentiment-hamming-up")->experts[2].weight, 50.0);
  EXPECT_EQ(find_preset("nope"), nullptr);
}

TEST(RunConfig, PresetWithRelativePaths) {
  const auto dir = scratch_dir();
  fake_model_dir(dir);
  const json j = {{"preset", "prompted-sentiment"}, {"model_dir", "m"}, {"target", "pos"},
                  {"prompts", "prompts.txt"}, {"seed", 5}};
  const auto cfg = parse_run_config(j, dir);
  EXPECT_EQ(cfg.task, Task::kGenerate);
  EXPECT_EQ(cfg.epochs, 15);
  EXPECT_EQ(cfg.seed, 5u);
  EXPECT_EQ(cfg.model_dir, dir / "m");
  EXPECT_EQ(cfg.prompts, dir / "prompts.txt");
  EXPECT_EQ(cfg.samples_per_prompt, 20u);
}

TEST(RunConfig, OverridesTakePrecedence) {
  const auto dir = scratch_dir();
  fake_model_dir(dir);
  const json j = {{"preset", "sentiment-hamming-up"}, {"model_dir", "m"}, {"target", "pos"},
                  {"source", "src.txt"}, {"seed", 5}, {"weights", {{"hamming", 7}}}};
  RunOverrides ov;
  ov.seed = 99;
  ov.output_dir = dir / "o";
  ov.trace = true;
  ov.weights = {{"discriminator", 3.0}};
  ov.remote_experts = {parse_remote_expert_flag("http://localhost:1:bert:0.5")};
  const auto cfg = parse_run_config(j, dir, ov);
  EXPECT_EQ(cfg.seed, 99u);
  EXPECT_EQ(cfg.output_dir, dir / "o");
  EXPECT_TRUE(cfg.trace);
  EXPECT_EQ(cfg.experts[1].weight, 3.0);
  EXPECT_EQ(cfg.experts[2].weight, 7.0);
  ASSERT_EQ(cfg.experts.size(), 4u);
  EXPECT_EQ(cfg.experts[3].kind, ExpertKind::kRemote);
  EXPECT_EQ(cfg.experts[3].weight, 0.5);
}

TEST(RunConfig, PresetFlagReplacesConfigPreset) {
  const auto dir = scratch_dir();
  fake_model_dir(dir);
  const json j = {{"preset", "sentiment-hamming-up"}, {"model_dir", "m"}, {"target", "pos"},
                  {"source", "src.txt"}};
  RunOverrides ov;
  ov.preset = "sentiment-disc-up";
  EXPECT_EQ(parse_run_config(j, dir, ov).experts[2].weight, 25.0);
}

TEST(RunConfig, ExplicitExperts) {
  const auto dir = scratch_dir();
  fake_model_dir(dir);
  const json j = json::parse(R"({
    "task": "revise", "model_dir": "m", "source": "src.txt", "epochs": 3,
    "position_order": "with_replacement",
    "experts": [
      {"kind": "mlm"},
      {"kind": "discriminator", "weight": 10, "target": "neg", "mode": "raw_logit"},
      {"kind": "lexicon", "weight": 2, "name": "topic", "lexicon": "lex.txt"},
      {"kind": "fuzzy", "weight": 3, "embeddings": "emb.txt"}
    ]})");
  const auto cfg = parse_run_config(j, dir);
  ASSERT_EQ(cfg.experts.size(), 4u);
  EXPECT_EQ(cfg.experts[1].target, "neg");
  EXPECT_EQ(cfg.experts[1].mode, DiscriminatorMode::kRawLogit);
  EXPECT_EQ(cfg.experts[2].label, "topic");
  EXPECT_EQ(cfg.experts[2].resource, dir / "lex.txt");
  EXPECT_EQ(cfg.order, PositionOrder::kWithReplacement);
}

TEST(RunConfig, AllErrorsListedTogether) {
  const auto dir = scratch_dir();
  fake_model_dir(dir);
  const json j = json::parse(R"({
    "task": "generate", "model_dir": "m", "prompts": "missing.txt", "epochs": 0,
    "experts": [{"kind": "mlm", "weight": "heavy"}, {"kind": "hamming"}, {"kind": "telepathy"}]
  })");
  const std::string msg = error_of(j, dir);
  EXPECT_NE(msg.find("missing.txt"), std::string::npos) << msg;
  EXPECT_NE(msg.find("'epochs'"), std::string::npos) << msg;
  EXPECT_NE(msg.find("'weight' must be a number"), std::string::npos) << msg;
  EXPECT_NE(msg.find("only valid for task 'revise'"), std::string::npos) << msg;
  EXPECT_NE(msg.find("telepathy"), std::string::npos) << msg;
}

TEST(RunConfig, Rejections) {
  const auto dir = scratch_dir();
  fake_model_dir(dir);
  auto base = [] {
    return json{{"task", "revise"}, {"model_dir", "m"}, {"source", "src.txt"},
                {"experts", json::array({{{"kind", "mlm"}}})}};
  };
  EXPECT_EQ(error_of(base(), dir), "");

  auto j = base();
  j["experts"].push_back({{"kind", "discriminator"}});
  EXPECT_NE(error_of(j, dir).find("no target class"), std::string::npos);

  j = base();
  j["task"] = "dream";
  EXPECT_NE(error_of(j, dir).find("'task'"), std::string::npos);

  j = base();
  j["preset"] = "made-up";
  EXPECT_NE(error_of(j, dir).find("unknown preset"), std::string::npos);

  j = base();
  j["weights"] = {{"ghost", 1.0}};
  EXPECT_NE(error_of(j, dir).find("ghost"), std::string::npos);

  j = base();
  j["experts"][0]["target"] = 5;  // wrong JSON type inside an entry
  EXPECT_NE(error_of(j, dir), "");

  j = base();
  j["model_dir"] = "nowhere";
  EXPECT_NE(error_of(j, dir).find("vocab.txt"), std::string::npos);

  j = base();
  j["experts"].push_back({{"kind", "remote"}, {"url", "ftp://x"}, {"name", "r"}});
  EXPECT_NE(error_of(j, dir).find("http://"), std::string::npos);

  EXPECT_THROW(parse_run_config(json::array(), dir), ConfigError);
}

TEST(RunConfig, PromptMustLeaveRoomToGenerate) {
  const auto dir = scratch_dir();
  fake_model_dir(dir);
  const json j = {{"task", "generate"}, {"model_dir", "m"}, {"prompts", "prompts.txt"},
                  {"length", 2}, {"experts", json::array({{{"kind", "mlm"}}})}};
  EXPECT_NE(error_of(j, dir).find("not shorter than length"), std::string::npos);
}

TEST(RunConfig, LoadFromFile) {
  const auto dir = scratch_dir();
  fake_model_dir(dir);
  write_file(dir / "c.json", R"({"preset": "agency", "model_dir": "m", "target": "high",
    "lexicon": "lex.txt", "source": "src.txt"})");
  const auto cfg = load_run_config(dir / "c.json");
  EXPECT_EQ(cfg.preset, "agency");
  EXPECT_EQ(cfg.lexicon, dir / "lex.txt");
  write_file(dir / "bad.json", "{ not json");
  EXPECT_THROW(load_run_config(dir / "bad.json"), ConfigError);
  EXPECT_THROW(load_run_config(dir / "absent.json"), ConfigError);
}

}  // namespace
}  // namespace mixmatch
