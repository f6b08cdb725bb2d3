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

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "mixmatch/commands.h"
#include "mixmatch/errors.h"

namespace {

using namespace mixmatch;

std::pair<std::string, double> parse_weight(const std::string& flag) {
  const auto eq = flag.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("--weight expects label=value, got '" + flag + "'");
  const std::string value = flag.substr(eq + 1);
  std::size_t used = 0;
  double w = 0.0;
  try {
    w = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size())
    throw ConfigError("--weight " + flag + ": '" + value + "' is not a number");
  return {flag.substr(0, eq), w};
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_pattern("[%l] %v");
  CLI::App app{"mixmatch: training-free attribute-controlled text sampling"};
  app.require_subcommand(1);

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "fit the masked model and classifier");
  train_cmd->add_option("--corpus", train.corpus, "plain-text corpus")->required();
  train_cmd->add_option("--labeled", train.labeled, "label<TAB>text file")->required();
  train_cmd->add_option("--out", train.out_dir, "model directory")->required();
  train_cmd->add_option("--k", train.k, "add-k smoothing")->capture_default_str();
  train_cmd->add_option("--min-count", train.min_count, "vocabulary cutoff")->capture_default_str();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir, preset;
  bool trace = false;
  std::vector<std::string> remote_flags, weight_flags;
  auto add_run_options = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "run configuration (JSON)")->required();
    cmd->add_option("--seed", seed, "base seed");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_flag("--trace", trace, "write per-step traces");
    cmd->add_option("--preset", preset, "named hyperparameter preset");
    cmd->add_option("--remote-expert", remote_flags, "url:name:weight (repeatable)");
    cmd->add_option("--weight", weight_flags, "label=value weight override (repeatable)");
  };
  auto* gen_cmd = app.add_subcommand("generate", "prompted generation");
  add_run_options(gen_cmd);
  auto* rev_cmd = app.add_subcommand("revise", "revise source sentences");
  add_run_options(rev_cmd);

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "sampler correctness checks");
  verify_cmd->add_option("--scale", verify.scale, "tiny | small")->capture_default_str();
  verify_cmd->add_option("--alphabet", verify.alphabet, "regular tokens in the check space");
  verify_cmd->add_option("--length", verify.length, "sequence length of the check space");
  verify_cmd->add_option("--seed", verify.seed, "seed")->capture_default_str();
  verify_cmd->add_flag("--mutate", verify.mutate, "use the sign-flipped acceptance");

  auto* presets_cmd = app.add_subcommand("presets", "list hyperparameter presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*train_cmd) {
      cmd_train(train, std::cout);
    } else if (*gen_cmd || *rev_cmd) {
      RunOverrides ov;
      ov.seed = seed;
      if (out_dir) ov.output_dir = *out_dir;
      ov.trace = trace;
      ov.preset = preset;
      for (const auto& f : remote_flags) ov.remote_experts.push_back(parse_remote_expert_flag(f));
      for (const auto& f : weight_flags) ov.weights.push_back(parse_weight(f));
      const RunConfig cfg = load_run_config(config_path, ov);
      if (*gen_cmd)
        cmd_generate(cfg, std::cout);
      else
        cmd_revise(cfg, std::cout);
    } else if (*verify_cmd) {
      bool ok = true;
      for (const auto& r : cmd_verify(verify, std::cout)) ok &= r.passed;
      return ok ? kExitOk : kExitVerification;
    } else if (*presets_cmd) {
      for (const auto& p : presets()) {
        std::cout << p.name << "  (" << (p.task == Task::kGenerate ? "generate" : "revise") << ")\n"
                  << "    " << p.description << "\n";
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
