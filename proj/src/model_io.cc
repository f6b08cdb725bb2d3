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

#include "mixmatch/model_io.h"

#include <fstream>

#include "mixmatch/errors.h"

namespace mixmatch {

namespace {

constexpr const char* kMlmFormat = "mixmatch.neighbor_mlm";
constexpr const char* kNbFormat = "mixmatch.naive_bayes";

void check_header(const nlohmann::json& j, const char* format, const Vocabulary& vocab) {
  if (!j.is_object() || j.value("format", "") != format)
    throw Error(std::string("model file is not a ") + format + " document");
  if (j.value("version", -1) != kModelFormatVersion)
    throw Error(std::string(format) + ": unsupported version");
  if (j.value("vocab_hash", "") != vocab.HashHex())
    throw Error(std::string(format) + ": vocabulary hash mismatch (model " +
                j.value("vocab_hash", "?") + ", vocabulary " + vocab.HashHex() + ")");
  if (j.value("vocab_size", std::size_t{0}) != vocab.size())
    throw Error(std::string(format) + ": vocabulary size mismatch");
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

}  // namespace

nlohmann::ordered_json to_json(const NeighborMlm& mlm, const Vocabulary& vocab) {
  nlohmann::ordered_json j;
  j["format"] = kMlmFormat;
  j["version"] = kModelFormatVersion;
  j["vocab_hash"] = vocab.HashHex();
  j["vocab_size"] = mlm.vocab_size();
  j["k"] = mlm.smoothing();
  auto counts = nlohmann::ordered_json::array();
  for (const auto& [ctx, cc] : mlm.counts())
    for (const auto& [center, n] : cc.centers)
      counts.push_back({ctx.first, ctx.second, center, n});
  j["counts"] = std::move(counts);
  return j;
}

NeighborMlm neighbor_mlm_from_json(const nlohmann::json& j, const Vocabulary& vocab) {
  check_header(j, kMlmFormat, vocab);
  std::map<NeighborMlm::Context, NeighborMlm::ContextCounts> counts;
  try {
    for (const auto& row : j.at("counts")) {
      const auto left = row.at(0).get<TokenId>();
      const auto right = row.at(1).get<TokenId>();
      const auto center = row.at(2).get<TokenId>();
      counts[{left, right}].centers[center] += row.at(3).get<double>();
    }
    return NeighborMlm(vocab.size(), j.at("k").get<double>(), std::move(counts));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string(kMlmFormat) + ": " + e.what());
  }
}

nlohmann::ordered_json to_json(const NaiveBayes& clf, const Vocabulary& vocab) {
  nlohmann::ordered_json j;
  j["format"] = kNbFormat;
  j["version"] = kModelFormatVersion;
  j["vocab_hash"] = vocab.HashHex();
  j["vocab_size"] = clf.vocab_size();
  j["k"] = clf.smoothing();
  j["classes"] = clf.class_names();
  const auto& prior = clf.log_prior();
  j["log_prior"] = std::vector<double>(prior.data(), prior.data() + prior.size());
  auto rows = nlohmann::ordered_json::array();
  for (Eigen::Index c = 0; c < clf.log_likelihood().rows(); ++c) {
    Eigen::VectorXd row = clf.log_likelihood().row(c).transpose();
    rows.push_back(std::vector<double>(row.data(), row.data() + row.size()));
  }
  j["log_likelihood"] = std::move(rows);
  return j;
}

NaiveBayes naive_bayes_from_json(const nlohmann::json& j, const Vocabulary& vocab) {
  check_header(j, kNbFormat, vocab);
  try {
    auto classes = j.at("classes").get<std::vector<std::string>>();
    auto prior = j.at("log_prior").get<std::vector<double>>();
    auto rows = j.at("log_likelihood").get<std::vector<std::vector<double>>>();
    Eigen::MatrixXd lik(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(vocab.size()));
    for (std::size_t c = 0; c < rows.size(); ++c) {
      if (rows[c].size() != vocab.size()) throw Error(std::string(kNbFormat) + ": bad row width");
      lik.row(static_cast<Eigen::Index>(c)) =
          Eigen::Map<const Eigen::RowVectorXd>(rows[c].data(), static_cast<Eigen::Index>(rows[c].size()));
    }
    return NaiveBayes(std::move(classes),
                      Eigen::Map<const Eigen::VectorXd>(prior.data(), static_cast<Eigen::Index>(prior.size())),
                      std::move(lik), j.at("k").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string(kNbFormat) + ": " + e.what());
  }
}

void save_neighbor_mlm(const std::filesystem::path& path, const NeighborMlm& mlm,
                       const Vocabulary& vocab) {
  write_json(path, to_json(mlm, vocab));
}

NeighborMlm load_neighbor_mlm(const std::filesystem::path& path, const Vocabulary& vocab) {
  return neighbor_mlm_from_json(read_json(path), vocab);
}

void save_naive_bayes(const std::filesystem::path& path, const NaiveBayes& clf,
                      const Vocabulary& vocab) {
  write_json(path, to_json(clf, vocab));
}

NaiveBayes load_naive_bayes(const std::filesystem::path& path, const Vocabulary& vocab) {
  return naive_bayes_from_json(read_json(path), vocab);
}

}  // namespace mixmatch
