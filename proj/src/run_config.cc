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

#include "mixmatch/run_config.h"

#include <cmath>
#include <fstream>

#include "mixmatch/corpus.h"
#include "mixmatch/errors.h"
#include "mixmatch/strings.h"

namespace mixmatch {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

ExpertSpec expert(ExpertKind kind, double weight, std::string label = "") {
  ExpertSpec s;
  s.kind = kind;
  s.weight = weight;
  s.label = label.empty() ? std::string(to_string(kind)) : std::move(label);
  return s;
}

std::optional<ExpertKind> kind_from_string(const std::string& s) {
  for (auto k : {ExpertKind::kMlm, ExpertKind::kDiscriminator, ExpertKind::kHamming,
                 ExpertKind::kFuzzy, ExpertKind::kLexicon, ExpertKind::kRemote})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() || base.empty() ? path : (base / path).lexically_normal();
}

}  // namespace

const std::vector<Preset>& presets() {
  using K = ExpertKind;
  static const std::vector<Preset> kPresets = {
      {"prompted-sentiment", Task::kGenerate, 15,
       {expert(K::kMlm, 1.0), expert(K::kDiscriminator, 40.0)},
       "prompted sentiment generation: E_mlm + 40 E_disc, 15 epochs"},
      {"sentiment-disc-up", Task::kRevise, 8,
       {expert(K::kMlm, 1.0), expert(K::kDiscriminator, 100.0), expert(K::kHamming, 25.0)},
       "sentiment transfer favouring the discriminator: alpha=100, beta=25, 8 epochs"},
      {"sentiment-hamming-up", Task::kRevise, 8,
       {expert(K::kMlm, 1.0), expert(K::kDiscriminator, 100.0), expert(K::kHamming, 50.0)},
       "sentiment transfer favouring faithfulness: alpha=100, beta=50, 8 epochs"},
      {"formality-disc-up", Task::kRevise, 5,
       {expert(K::kMlm, 1.0), expert(K::kDiscriminator, 140.0), expert(K::kHamming, 15.0),
        expert(K::kFuzzy, 100.0)},
       "formality transfer favouring the discriminator: alpha=140, beta=15, gamma=100, 5 epochs"},
      {"formality-bertscore-up", Task::kRevise, 5,
       {expert(K::kMlm, 1.0), expert(K::kDiscriminator, 140.0), expert(K::kHamming, 50.0),
        expert(K::kFuzzy, 300.0)},
       "formality transfer favouring similarity: alpha=140, beta=50, gamma=300, 5 epochs"},
      {"agency", Task::kRevise, 8,
       {expert(K::kMlm, 1.0), expert(K::kDiscriminator, 100.0), expert(K::kHamming, 50.0),
        expert(K::kLexicon, 100.0, "agency")},
       "agency debiasing: alpha=100, beta=50, theta=100, 8 epochs"},
      {"agency-verb-replace", Task::kRevise, 30,
       {expert(K::kMlm, 1.0), expert(K::kDiscriminator, 100.0), expert(K::kHamming, 50.0),
        expert(K::kLexicon, 100.0, "agency")},
       "agency debiasing revising only the given verb: alpha=100, beta=50, theta=100, 30 epochs"},
  };
  return kPresets;
}

const Preset* find_preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return &p;
  return nullptr;
}

namespace {

RunConfig parse_checked(const json& j, const fs::path& base_dir, const RunOverrides& ov) {
  std::vector<std::string> errors;
  RunConfig cfg;
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");

  auto get_string = [&](const char* key) -> std::optional<std::string> {
    if (!j.contains(key)) return std::nullopt;
    if (!j[key].is_string()) {
      errors.push_back(std::string("'") + key + "' must be a string");
      return std::nullopt;
    }
    return j[key].get<std::string>();
  };
  auto get_uint = [&](const char* key) -> std::optional<std::uint64_t> {
    if (!j.contains(key)) return std::nullopt;
    if (!j[key].is_number_integer() || j[key].get<std::int64_t>() < 0) {
      errors.push_back(std::string("'") + key + "' must be a non-negative integer");
      return std::nullopt;
    }
    return j[key].get<std::uint64_t>();
  };

  std::optional<std::string> preset_name = ov.preset ? ov.preset : get_string("preset");
  if (preset_name) {
    if (const Preset* p = find_preset(*preset_name)) {
      cfg.preset = p->name;
      cfg.task = p->task;
      cfg.epochs = p->epochs;
      cfg.experts = p->experts;
    } else {
      errors.push_back("unknown preset '" + *preset_name + "'");
    }
  }

  if (auto task = get_string("task")) {
    if (*task == "generate")
      cfg.task = Task::kGenerate;
    else if (*task == "revise")
      cfg.task = Task::kRevise;
    else
      errors.push_back("'task' must be 'generate' or 'revise', got '" + *task + "'");
  } else if (!preset_name) {
    errors.push_back("'task' is required when no preset is given");
  }

  if (auto v = get_string("model_dir")) cfg.model_dir = resolve(base_dir, *v);
  if (auto v = get_string("target")) cfg.target = *v;
  if (auto v = get_string("prompts")) cfg.prompts = resolve(base_dir, *v);
  if (auto v = get_string("source")) cfg.source = resolve(base_dir, *v);
  if (auto v = get_string("revisable")) cfg.revisable = resolve(base_dir, *v);
  if (auto v = get_string("embeddings")) cfg.embeddings = resolve(base_dir, *v);
  if (auto v = get_string("lexicon")) cfg.lexicon = resolve(base_dir, *v);
  if (auto v = get_string("output_dir")) cfg.output_dir = resolve(base_dir, *v);
  if (auto v = get_uint("epochs")) cfg.epochs = static_cast<int>(*v);
  if (auto v = get_uint("seed")) cfg.seed = *v;
  if (auto v = get_uint("length")) cfg.length = *v;
  if (auto v = get_uint("samples_per_prompt")) cfg.samples_per_prompt = *v;
  if (auto v = get_uint("samples_per_source")) cfg.samples_per_source = *v;
  if (auto v = get_uint("threads")) cfg.threads = static_cast<unsigned>(*v);
  if (j.contains("trace")) {
    if (j["trace"].is_boolean())
      cfg.trace = j["trace"].get<bool>();
    else
      errors.push_back("'trace' must be a boolean");
  }
  if (auto v = get_string("position_order")) {
    if (*v == "permutation")
      cfg.order = PositionOrder::kRandomPermutation;
    else if (*v == "with_replacement")
      cfg.order = PositionOrder::kWithReplacement;
    else
      errors.push_back("'position_order' must be 'permutation' or 'with_replacement'");
  }

  if (j.contains("experts")) {
    if (!j["experts"].is_array()) {
      errors.push_back("'experts' must be an array");
    } else {
      cfg.experts.clear();
      std::size_t n = 0;
      for (const auto& e : j["experts"]) {
        const std::string where = "experts[" + std::to_string(n++) + "]";
        if (!e.is_object() || !e.contains("kind") || !e["kind"].is_string()) {
          errors.push_back(where + ": needs a string 'kind'");
          continue;
        }
        auto kind = kind_from_string(e["kind"].get<std::string>());
        if (!kind) {
          errors.push_back(where + ": unknown kind '" + e["kind"].get<std::string>() + "'");
          continue;
        }
        ExpertSpec s = expert(*kind, 1.0, e.value("name", ""));
        if (e.contains("weight")) {
          if (e["weight"].is_number())
            s.weight = e["weight"].get<double>();
          else
            errors.push_back(where + ": 'weight' must be a number");
        }
        if (e.contains("target")) s.target = e.value("target", "");
        if (e.contains("mode")) {
          const auto mode = e.value("mode", "");
          if (mode == "neg_log_posterior")
            s.mode = DiscriminatorMode::kNegLogPosterior;
          else if (mode == "raw_logit")
            s.mode = DiscriminatorMode::kRawLogit;
          else
            errors.push_back(where + ": 'mode' must be 'neg_log_posterior' or 'raw_logit'");
        }
        if (e.contains("lexicon")) s.resource = resolve(base_dir, e.value("lexicon", ""));
        if (e.contains("embeddings")) s.resource = resolve(base_dir, e.value("embeddings", ""));
        if (*kind == ExpertKind::kRemote) {
          s.endpoint.base_url = e.value("url", "");
          s.endpoint.name = e.value("name", "");
          s.endpoint.timeout_ms = e.value("timeout_ms", s.endpoint.timeout_ms);
          s.endpoint.retries = e.value("retries", s.endpoint.retries);
          s.label = "remote:" + s.endpoint.name;
        }
        cfg.experts.push_back(std::move(s));
      }
    }
  }

  if (j.contains("proposal")) {
    const auto& p = j["proposal"];
    const auto kind = p.is_object() ? p.value("kind", "") : "";
    if (kind == "neighbor") {
      cfg.proposal.remote = false;
    } else if (kind == "remote") {
      cfg.proposal.remote = true;
      cfg.proposal.endpoint.base_url = p.value("url", "");
      cfg.proposal.endpoint.name = p.value("name", "");
      cfg.proposal.endpoint.timeout_ms = p.value("timeout_ms", cfg.proposal.endpoint.timeout_ms);
      cfg.proposal.endpoint.retries = p.value("retries", cfg.proposal.endpoint.retries);
    } else {
      errors.push_back("'proposal.kind' must be 'neighbor' or 'remote'");
    }
  }

  // Weight overrides: config "weights" object, then --weight flags.
  std::vector<std::pair<std::string, double>> weight_overrides;
  if (j.contains("weights")) {
    if (!j["weights"].is_object()) {
      errors.push_back("'weights' must be an object of label: number");
    } else {
      for (const auto& [label, w] : j["weights"].items()) {
        if (w.is_number())
          weight_overrides.emplace_back(label, w.get<double>());
        else
          errors.push_back("weights." + label + " must be a number");
      }
    }
  }
  weight_overrides.insert(weight_overrides.end(), ov.weights.begin(), ov.weights.end());
  for (const auto& [label, w] : weight_overrides) {
    bool hit = false;
    for (auto& s : cfg.experts) {
      if (s.label == label) {
        s.weight = w;
        hit = true;
      }
    }
    if (!hit) errors.push_back("weight override for unknown expert '" + label + "'");
  }

  for (const auto& flag : ov.remote_experts) {
    ExpertSpec s = expert(ExpertKind::kRemote, flag.weight, "remote:" + flag.endpoint.name);
    s.endpoint = flag.endpoint;
    cfg.experts.push_back(std::move(s));
  }
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.output_dir) cfg.output_dir = *ov.output_dir;
  if (ov.trace) cfg.trace = true;

  auto more = validation_errors(cfg);
  errors.insert(errors.end(), more.begin(), more.end());
  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ConfigError(msg);
  }
  return cfg;
}

}  // namespace

RunConfig parse_run_config(const json& j, const fs::path& base_dir, const RunOverrides& ov) {
  try {
    return parse_checked(j, base_dir, ov);
  } catch (const json::exception& e) {
    // A field of the wrong JSON type deep inside an expert or proposal entry.
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
}

RunConfig load_run_config(const fs::path& path, const RunOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_run_config(j, path.parent_path(), overrides);
}

std::vector<std::string> validation_errors(const RunConfig& cfg) {
  std::vector<std::string> errors;
  auto need_file = [&](const fs::path& p, const std::string& what) {
    if (p.empty())
      errors.push_back(what + " is required");
    else if (!fs::is_regular_file(p))
      errors.push_back(what + " not found: " + p.string());
  };

  if (cfg.epochs < 1) errors.push_back("'epochs' must be >= 1");
  if (cfg.experts.empty()) errors.push_back("no experts configured");

  need_file(cfg.model_dir / "vocab.txt", "vocabulary (model_dir/vocab.txt)");
  if (!cfg.proposal.remote) need_file(cfg.model_dir / "mlm.json", "masked model (model_dir/mlm.json)");

  for (std::size_t n = 0; n < cfg.experts.size(); ++n) {
    const auto& s = cfg.experts[n];
    const std::string where = "expert '" + s.label + "'";
    if (!std::isfinite(s.weight)) errors.push_back(where + ": weight must be finite");
    switch (s.kind) {
      case ExpertKind::kMlm:
        if (cfg.proposal.remote) need_file(cfg.model_dir / "mlm.json", where + ": model_dir/mlm.json");
        break;
      case ExpertKind::kDiscriminator:
        need_file(cfg.model_dir / "classifier.json", where + ": model_dir/classifier.json");
        if (s.target.value_or(cfg.target).empty())
          errors.push_back(where + ": no target class ('target')");
        break;
      case ExpertKind::kHamming:
        if (cfg.task == Task::kGenerate)
          errors.push_back(where + ": needs a source sequence; only valid for task 'revise'");
        break;
      case ExpertKind::kFuzzy:
        if (cfg.task == Task::kGenerate)
          errors.push_back(where + ": needs a source sequence; only valid for task 'revise'");
        need_file(s.resource.empty() ? cfg.embeddings : s.resource, where + ": embeddings file");
        break;
      case ExpertKind::kLexicon:
        need_file(s.resource.empty() ? cfg.lexicon : s.resource, where + ": lexicon file");
        break;
      case ExpertKind::kRemote:
        try {
          s.endpoint.validate();
        } catch (const ConfigError& e) {
          errors.push_back(e.what());
        }
        break;
      case ExpertKind::kJoint:
        errors.push_back(where + ": kind 'joint' is not configurable");
        break;
    }
  }
  if (cfg.proposal.remote) {
    try {
      cfg.proposal.endpoint.validate();
    } catch (const ConfigError& e) {
      errors.push_back(std::string("proposal: ") + e.what());
    }
  }

  if (cfg.task == Task::kGenerate) {
    if (cfg.length < 1) errors.push_back("'length' must be >= 1");
    if (cfg.samples_per_prompt < 1) errors.push_back("'samples_per_prompt' must be >= 1");
    need_file(cfg.prompts, "'prompts' file");
    if (fs::is_regular_file(cfg.prompts)) {
      auto lines = read_lines(cfg.prompts);
      if (lines.empty()) errors.push_back("'prompts' file has no prompts");
      for (std::size_t n = 0; n < lines.size(); ++n) {
        if (split_whitespace(lines[n]).size() >= cfg.length)
          errors.push_back(cfg.prompts.string() + ":" + std::to_string(n + 1) +
                           ": prompt is not shorter than length " + std::to_string(cfg.length));
      }
    }
  } else {
    if (cfg.samples_per_source < 1) errors.push_back("'samples_per_source' must be >= 1");
    need_file(cfg.source, "'source' file");
    if (!cfg.revisable.empty()) need_file(cfg.revisable, "'revisable' file");
  }
  return errors;
}

}  // namespace mixmatch
