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

#ifndef MIXMATCH_COMMANDS_H_
#define MIXMATCH_COMMANDS_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "mixmatch/classifier.h"
#include "mixmatch/embeddings.h"
#include "mixmatch/energy_model.h"
#include "mixmatch/metrics.h"
#include "mixmatch/neighbor_mlm.h"
#include "mixmatch/run_config.h"
#include "mixmatch/verification.h"

namespace mixmatch {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitVerification = 3;

struct TrainOptions {
  std::filesystem::path corpus;   // plain text, one example per line
  std::filesystem::path labeled;  // label<TAB>text
  double k = 0.1;
  int min_count = 1;
  std::filesystem::path out_dir;
};

struct TrainSummary {
  std::size_t vocab_size = 0;
  std::size_t mlm_contexts = 0;
  std::vector<std::string> classes;
  double train_accuracy = 0.0;
};

// Writes vocab.txt, mlm.json and classifier.json into out_dir.
TrainSummary cmd_train(const TrainOptions& options, std::ostream& log);

// Everything a run needs, loaded once and shared read-only across chains.
struct Resources {
  std::shared_ptr<const Vocabulary> vocab;
  std::shared_ptr<const MaskedConditionalModel> mlm;
  std::shared_ptr<const MaskedConditionalModel> proposal;
  std::shared_ptr<const NaiveBayes> classifier;
  std::shared_ptr<const EmbeddingTable> embeddings;
  std::vector<std::shared_ptr<const std::unordered_set<TokenId>>> lexicons;  // per expert slot
  int target = -1;
};

Resources load_resources(const RunConfig& config);

// Energy model for one chain. `reference` is the source sequence for
// Hamming and fuzzy experts (revision only).
EnergyModel build_energy_model(const RunConfig& config, const Resources& res,
                               const Sequence* reference);

struct RunOutputs {
  std::vector<std::string> samples;
  std::vector<Sequence> sequences;
  EvalReport report;
};

// Both write samples.txt and report.json (and traces/ when tracing) into
// config.output_dir.
RunOutputs cmd_generate(const RunConfig& config, std::ostream& log);
RunOutputs cmd_revise(const RunConfig& config, std::ostream& log);

struct VerifyOptions {
  std::string scale = "tiny";  // tiny | small
  std::optional<std::size_t> alphabet;  // overrides the TV-check space
  std::optional<std::size_t> length;
  std::uint64_t seed = 7;
  bool mutate = false;  // run detailed balance with the corrupted acceptance
};

std::vector<verification::CheckResult> cmd_verify(const VerifyOptions& options, std::ostream& out);

}  // namespace mixmatch

#endif  // MIXMATCH_COMMANDS_H_
