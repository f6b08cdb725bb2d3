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

#include "mixmatch/commands.h"

#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "mixmatch/corpus.h"
#include "mixmatch/errors.h"
#include "mixmatch/model_io.h"
#include "mixmatch/oracle.h"
#include "mixmatch/remote.h"
#include "mixmatch/sampler.h"
#include "mixmatch/strings.h"
#include "mixmatch/trace_io.h"

namespace mixmatch {

namespace fs = std::filesystem;

TrainSummary cmd_train(const TrainOptions& opt, std::ostream& log) {
  if (!(opt.k > 0.0)) throw ConfigError("train: smoothing k must be > 0");
  if (opt.min_count < 1) throw ConfigError("train: min_count must be >= 1");
  if (opt.out_dir.empty()) throw ConfigError("train: output directory is required");

  const auto plain = read_lines(opt.corpus);
  const auto labeled_raw = read_lines(opt.labeled);
  const auto labeled = parse_labeled(labeled_raw, opt.labeled.string());

  std::vector<std::string> all_text = plain;
  for (const auto& l : labeled) all_text.push_back(l.text);
  const Vocabulary vocab = build_vocab(all_text, opt.min_count);

  const Corpus mlm_corpus = make_corpus(all_text, vocab);
  const Corpus clf_corpus = make_labeled_corpus(labeled, vocab);
  const NeighborMlm mlm = fit_neighbor_mlm(mlm_corpus, vocab.size(), opt.k);
  const NaiveBayes clf = fit_nb_classifier(clf_corpus, vocab.size(), opt.k);

  fs::create_directories(opt.out_dir);
  vocab.Save(opt.out_dir / "vocab.txt");
  save_neighbor_mlm(opt.out_dir / "mlm.json", mlm, vocab);
  save_naive_bayes(opt.out_dir / "classifier.json", clf, vocab);

  TrainSummary summary;
  summary.vocab_size = vocab.size();
  summary.mlm_contexts = mlm.counts().size();
  summary.classes = clf.class_names();
  summary.train_accuracy = training_accuracy(clf, clf_corpus);

  log << "vocabulary: " << summary.vocab_size << " tokens\n"
      << "masked model: " << summary.mlm_contexts << " contexts from " << mlm_corpus.size()
      << " lines (k=" << opt.k << ")\n"
      << "classifier: " << summary.classes.size() << " classes [" << join(summary.classes, ", ")
      << "], train accuracy " << summary.train_accuracy << "\n";
  return summary;
}

namespace {

std::string discriminator_target(const RunConfig& cfg) {
  if (!cfg.target.empty()) return cfg.target;
  for (const auto& s : cfg.experts)
    if (s.kind == ExpertKind::kDiscriminator && s.target) return *s.target;
  return "";
}

void throw_if_invalid(const RunConfig& cfg) {
  auto errors = validation_errors(cfg);
  if (errors.empty()) return;
  std::string msg = "invalid configuration:";
  for (const auto& e : errors) msg += "\n  - " + e;
  throw ConfigError(msg);
}

// Runs fn(0..n-1) over `threads` workers; each index is visited exactly once.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads == 1 || n <= 1) {
    for (std::size_t c = 0; c < n; ++c) fn(c);
    return;
  }
  std::vector<std::future<void>> workers;
  for (unsigned t = 0; t < threads; ++t)
    workers.push_back(std::async(std::launch::async, [&, t] {
      for (std::size_t c = t; c < n; c += threads) fn(c);
    }));
  for (auto& w : workers) w.get();
}

std::optional<double> try_distinct(const std::vector<Sequence>& samples, std::size_t n) {
  try {
    return distinct_n(samples, n);
  } catch (const Error&) {
    return std::nullopt;
  }
}

void fill_common_report(const std::vector<ChainResult>& chains, const Resources& res,
                        RunOutputs& out) {
  std::size_t steps = 0, accepted = 0;
  double energy = 0.0;
  for (const auto& c : chains) {
    steps += c.trace.size();
    for (const auto& r : c.trace) accepted += r.accepted;
    energy += c.final_energy;
    out.sequences.push_back(c.final);
    out.samples.push_back(detokenize(c.final, *res.vocab));
  }
  out.report.acceptance_rate =
      steps ? static_cast<double>(accepted) / static_cast<double>(steps) : 0.0;
  out.report.mean_total_energy = energy / static_cast<double>(chains.size());
  out.report.distinct_1 = try_distinct(out.sequences, 1);
  out.report.distinct_2 = try_distinct(out.sequences, 2);
  out.report.distinct_3 = try_distinct(out.sequences, 3);
  if (res.classifier && res.target >= 0)
    out.report.internal_classifier_target_rate =
        internal_accuracy(out.sequences, *res.classifier, res.target);
}

void write_outputs(const RunConfig& cfg, const std::vector<ChainResult>& chains,
                   const RunOutputs& out, std::ostream& log) {
  fs::create_directories(cfg.output_dir);
  {
    std::ofstream f(cfg.output_dir / "samples.txt");
    if (!f) throw Error("cannot write " + (cfg.output_dir / "samples.txt").string());
    for (const auto& s : out.samples) f << s << '\n';
  }
  {
    std::ofstream f(cfg.output_dir / "report.json");
    if (!f) throw Error("cannot write " + (cfg.output_dir / "report.json").string());
    f << to_json(out.report).dump(2) << '\n';
  }
  if (cfg.trace) {
    const fs::path dir = cfg.output_dir / "traces";
    fs::create_directories(dir);
    for (std::size_t c = 0; c < chains.size(); ++c) {
      char name[32];
      std::snprintf(name, sizeof(name), "chain_%05zu", c);
      std::ofstream csv(dir / (std::string(name) + ".csv"));
      write_trace_csv(csv, chains[c]);
      std::ofstream jsonl(dir / (std::string(name) + ".jsonl"));
      write_trace_jsonl(jsonl, chains[c]);
    }
  }
  log << "wrote " << out.samples.size() << " samples to " << (cfg.output_dir / "samples.txt").string()
      << "\n"
      << to_json(out.report).dump(2) << "\n";
}

SamplerConfig sampler_config(const RunConfig& cfg, const Resources& res,
                             std::shared_ptr<const EnergyModel> energy, std::uint64_t seed) {
  SamplerConfig sc;
  sc.epochs = cfg.epochs;
  sc.seed = seed;
  sc.order = cfg.order;
  sc.energy = std::move(energy);
  sc.proposal = res.proposal;
  return sc;
}

}  // namespace

Resources load_resources(const RunConfig& cfg) {
  Resources res;
  auto vocab = std::make_shared<Vocabulary>(Vocabulary::Load(cfg.model_dir / "vocab.txt"));
  res.vocab = vocab;
  if (fs::is_regular_file(cfg.model_dir / "mlm.json"))
    res.mlm = std::make_shared<NeighborMlm>(load_neighbor_mlm(cfg.model_dir / "mlm.json", *vocab));
  if (cfg.proposal.remote)
    res.proposal = std::make_shared<RemoteConditionalModel>(cfg.proposal.endpoint, vocab);
  else
    res.proposal = res.mlm;
  if (!res.proposal) throw ConfigError("no proposal model available");

  bool need_clf = false;
  for (const auto& s : cfg.experts) need_clf |= s.kind == ExpertKind::kDiscriminator;
  const auto clf_path = cfg.model_dir / "classifier.json";
  if (need_clf || fs::is_regular_file(clf_path))
    res.classifier = std::make_shared<NaiveBayes>(load_naive_bayes(clf_path, *vocab));

  std::vector<std::string> errors;
  const auto target_name = discriminator_target(cfg);
  if (res.classifier && !target_name.empty()) {
    res.target = res.classifier->class_id(target_name);
    if (res.target < 0) errors.push_back("unknown target class '" + target_name + "'");
  }
  for (const auto& s : cfg.experts) {
    if (s.kind == ExpertKind::kDiscriminator && s.target &&
        res.classifier->class_id(*s.target) < 0)
      errors.push_back("expert '" + s.label + "': unknown target class '" + *s.target + "'");
  }
  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ConfigError(msg);
  }

  res.lexicons.resize(cfg.experts.size());
  for (std::size_t n = 0; n < cfg.experts.size(); ++n) {
    const auto& s = cfg.experts[n];
    if (s.kind == ExpertKind::kLexicon)
      res.lexicons[n] = std::make_shared<std::unordered_set<TokenId>>(
          load_lexicon(s.resource.empty() ? cfg.lexicon : s.resource, *vocab));
    if (s.kind == ExpertKind::kFuzzy && !res.embeddings)
      res.embeddings = std::make_shared<EmbeddingTable>(
          EmbeddingTable::Load(s.resource.empty() ? cfg.embeddings : s.resource, *vocab));
  }
  return res;
}

EnergyModel build_energy_model(const RunConfig& cfg, const Resources& res,
                               const Sequence* reference) {
  EnergyModel model;
  for (std::size_t n = 0; n < cfg.experts.size(); ++n) {
    const auto& s = cfg.experts[n];
    switch (s.kind) {
      case ExpertKind::kMlm:
        if (!res.mlm) throw ConfigError("mlm expert needs model_dir/mlm.json");
        model.add(std::make_shared<MlmExpert>(res.mlm), s.weight);
        break;
      case ExpertKind::kDiscriminator: {
        const int target = s.target ? res.classifier->class_id(*s.target) : res.target;
        model.add(std::make_shared<DiscriminatorExpert>(res.classifier, target, s.mode), s.weight);
        break;
      }
      case ExpertKind::kHamming:
        if (!reference) throw ConfigError("hamming expert needs a source sequence");
        model.add(std::make_shared<HammingExpert>(Sequence(reference->ids())), s.weight);
        break;
      case ExpertKind::kFuzzy:
        if (!reference) throw ConfigError("fuzzy expert needs a source sequence");
        model.add(std::make_shared<FuzzyExpert>(Sequence(reference->ids()), res.embeddings),
                  s.weight);
        break;
      case ExpertKind::kLexicon:
        model.add(std::make_shared<LexiconExpert>(*res.lexicons.at(n), s.label), s.weight);
        break;
      case ExpertKind::kRemote:
        model.add(std::make_shared<RemoteEnergyExpert>(s.endpoint, res.vocab), s.weight);
        break;
      case ExpertKind::kJoint:
        throw ConfigError("joint expert is not configurable");
    }
  }
  return model;
}

RunOutputs cmd_generate(const RunConfig& cfg, std::ostream& log) {
  if (cfg.task != Task::kGenerate) throw ConfigError("config task is not 'generate'");
  throw_if_invalid(cfg);
  const Resources res = load_resources(cfg);

  std::vector<Sequence> inits;
  for (const auto& line : read_lines(cfg.prompts)) {
    const Sequence seed_text = init_prompted(tokenize(line, *res.vocab), cfg.length);
    for (std::size_t r = 0; r < cfg.samples_per_prompt; ++r) inits.push_back(seed_text);
  }
  auto energy = std::make_shared<const EnergyModel>(build_energy_model(cfg, res, nullptr));
  const auto chains =
      run_ensemble(inits, sampler_config(cfg, res, energy, cfg.seed), inits.size(), cfg.threads);

  RunOutputs out;
  fill_common_report(chains, res, out);
  write_outputs(cfg, chains, out, log);
  return out;
}

RunOutputs cmd_revise(const RunConfig& cfg, std::ostream& log) {
  if (cfg.task != Task::kRevise) throw ConfigError("config task is not 'revise'");
  throw_if_invalid(cfg);
  const Resources res = load_resources(cfg);

  std::vector<Sequence> sources;
  for (const auto& line : read_lines(cfg.source)) sources.push_back(tokenize(line, *res.vocab));

  std::vector<Sequence> inits;
  if (cfg.revisable.empty()) {
    for (const auto& s : sources) inits.push_back(init_revision(s));
  } else {
    const auto lines = read_lines(cfg.revisable);
    if (lines.size() != sources.size())
      throw ConfigError("'revisable' has " + std::to_string(lines.size()) + " lines but source has " +
                        std::to_string(sources.size()));
    for (std::size_t n = 0; n < sources.size(); ++n) {
      std::vector<bool> revisable(sources[n].size(), false);
      for (const auto& field : split_whitespace(lines[n])) {
        std::size_t pos = 0;
        try {
          pos = std::stoul(field);
        } catch (const std::exception&) {
          throw ConfigError(cfg.revisable.string() + ":" + std::to_string(n + 1) +
                            ": bad position '" + field + "'");
        }
        if (pos >= revisable.size())
          throw ConfigError(cfg.revisable.string() + ":" + std::to_string(n + 1) + ": position " +
                            field + " out of range");
        revisable[pos] = true;
      }
      std::vector<std::size_t> frozen;
      for (std::size_t i = 0; i < revisable.size(); ++i)
        if (!revisable[i]) frozen.push_back(i);
      inits.push_back(init_revision(sources[n], frozen));
    }
  }

  const std::size_t per = cfg.samples_per_source;
  std::vector<std::shared_ptr<const EnergyModel>> energies;
  for (const auto& s : sources)
    energies.push_back(std::make_shared<const EnergyModel>(build_energy_model(cfg, res, &s)));

  std::vector<ChainResult> chains(sources.size() * per);
  parallel_for(chains.size(), cfg.threads, [&](std::size_t c) {
    const std::size_t n = c / per;
    chains[c] = run_chain(inits[n], sampler_config(cfg, res, energies[n], cfg.seed + c));
  });

  RunOutputs out;
  fill_common_report(chains, res, out);
  std::vector<Sequence> paired;
  for (std::size_t c = 0; c < chains.size(); ++c) paired.push_back(sources[c / per]);
  out.report.mean_hamming_to_source = mean_hamming(out.sequences, paired);
  out.report.corpus_bleu = corpus_bleu(out.sequences, paired);
  write_outputs(cfg, chains, out, log);
  return out;
}

std::vector<verification::CheckResult> cmd_verify(const VerifyOptions& opt, std::ostream& out) {
  namespace v = verification;
  if (opt.scale != "tiny" && opt.scale != "small")
    throw ConfigError("verify: scale must be 'tiny' or 'small'");
  const bool small = opt.scale == "small";
  const std::size_t alphabet = opt.alphabet.value_or(small ? 4 : 3);
  const std::size_t length = opt.length.value_or(small ? 4 : 3);
  if (alphabet < 2 || length < 1) throw ConfigError("verify: need alphabet >= 2 and length >= 1");
  const std::size_t db_alphabet = opt.alphabet.value_or(small ? 3 : 2);
  const std::size_t db_length = opt.length.value_or(small ? 3 : 2);
  {
    const StateSpace tv_space(alphabet + Vocabulary::kFirstRegular, length);
    const StateSpace db_space(db_alphabet + Vocabulary::kFirstRegular, db_length);
    if (tv_space.num_states() > kEnumerationLimit)
      throw ConfigError("verify: V^L = " + std::to_string(tv_space.num_states()) +
                        " exceeds the enumeration limit " + std::to_string(kEnumerationLimit));
    if (db_space.num_states() > kDetailedBalanceLimit)
      throw ConfigError("verify: V^L = " + std::to_string(db_space.num_states()) +
                        " exceeds the detailed-balance limit " +
                        std::to_string(kDetailedBalanceLimit));
  }

  std::vector<v::CheckResult> results;
  auto report = [&](std::string name, double measured, double threshold, bool below) {
    v::CheckResult r{std::move(name), measured, threshold,
                     below ? measured <= threshold : measured > threshold, below ? "<=" : ">"};
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << format_real(r.measured) << ' '
        << r.relation << ' ' << r.threshold << '\n';
    results.push_back(std::move(r));
  };

  double gibbs = 0.0;
  for (std::size_t a = 2; a <= 3; ++a)
    for (std::size_t l = 2; l <= 3; ++l)
      gibbs = std::max(gibbs, v::gibbs_limit_deviation(a, l, opt.seed + a * 10 + l));
  report("gibbs_limit_acceptance", gibbs, v::kGibbsLimitTolerance, true);

  report(opt.mutate ? "detailed_balance (mutated acceptance)" : "detailed_balance",
         v::detailed_balance_violation(db_alphabet, db_length, opt.seed, opt.mutate),
         v::kDetailedBalanceTolerance, true);
  if (!opt.mutate)
    report("mutation_fixture_detected",
           v::detailed_balance_violation(db_alphabet, db_length, opt.seed, true),
           v::kMutationDetectionFloor, false);

  const std::size_t steps = small ? 200'000 : 60'000;
  const auto tv = v::tv_convergence(alphabet, length, steps, opt.seed);
  report("tv_convergence (" + std::to_string(tv.steps) + " steps, " + std::to_string(tv.kept) +
             " kept)",
         tv.tv, v::kTvThreshold, true);

  report("determinism", v::chain_is_deterministic(opt.seed) ? 0.0 : 1.0, 0.0, true);
  return results;
}

}  // namespace mixmatch
