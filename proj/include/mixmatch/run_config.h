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

#ifndef MIXMATCH_RUN_CONFIG_H_
#define MIXMATCH_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mixmatch/experts.h"
#include "mixmatch/remote.h"
#include "mixmatch/sampler.h"

namespace mixmatch {

enum class Task { kGenerate, kRevise };

struct ExpertSpec {
  ExpertKind kind = ExpertKind::kMlm;
  double weight = 1.0;
  std::string label;                   // lookup key for --weight overrides
  std::optional<std::string> target;   // discriminator class name
  DiscriminatorMode mode = DiscriminatorMode::kNegLogPosterior;
  std::filesystem::path resource;      // lexicon or embedding file
  RemoteExpertEndpoint endpoint;       // kind == kRemote
};

struct ProposalSpec {
  bool remote = false;
  RemoteExpertEndpoint endpoint;
};

struct RunConfig {
  Task task = Task::kGenerate;
  std::optional<std::string> preset;
  std::filesystem::path model_dir;
  std::string target;  // class the discriminator steers toward
  std::vector<ExpertSpec> experts;
  ProposalSpec proposal;
  int epochs = 8;
  std::uint64_t seed = 0;
  std::size_t length = 8;
  std::size_t samples_per_prompt = 20;
  std::size_t samples_per_source = 1;
  std::filesystem::path prompts;
  std::filesystem::path source;
  std::filesystem::path revisable;  // optional per-line revisable positions
  std::filesystem::path embeddings;
  std::filesystem::path lexicon;
  PositionOrder order = PositionOrder::kRandomPermutation;
  unsigned threads = 0;
  std::filesystem::path output_dir = "out";
  bool trace = false;
};

// Named hyperparameter sets. Each fills task, epochs and the expert list.
struct Preset {
  std::string name;
  Task task;
  int epochs;
  std::vector<ExpertSpec> experts;
  std::string description;
};

const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);

// Command-line values that take precedence over the config file.
struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> output_dir;
  bool trace = false;
  std::optional<std::string> preset;
  std::vector<RemoteExpertFlag> remote_experts;
  std::vector<std::pair<std::string, double>> weights;  // label=value
};

// Parses and validates. Relative paths resolve against `base_dir`. Every
// problem found is listed in one ConfigError.
RunConfig parse_run_config(const nlohmann::json& j, const std::filesystem::path& base_dir,
                           const RunOverrides& overrides = {});
RunConfig load_run_config(const std::filesystem::path& path, const RunOverrides& overrides = {});

// Checks referenced files and cross-field constraints; returns all errors.
std::vector<std::string> validation_errors(const RunConfig& config);

}  // namespace mixmatch

#endif  // MIXMATCH_RUN_CONFIG_H_
