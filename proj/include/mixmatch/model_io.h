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

#ifndef MIXMATCH_MODEL_IO_H_
#define MIXMATCH_MODEL_IO_H_

#include <filesystem>

#include <nlohmann/json.hpp>

#include "mixmatch/classifier.h"
#include "mixmatch/neighbor_mlm.h"
#include "mixmatch/vocabulary.h"

namespace mixmatch {

inline constexpr int kModelFormatVersion = 1;

// Model files are JSON documents carrying a format tag, a version and the
// hash of the vocabulary they were trained with. Loading rejects a file
// whose hash does not match the supplied vocabulary.
nlohmann::ordered_json to_json(const NeighborMlm& mlm, const Vocabulary& vocab);
NeighborMlm neighbor_mlm_from_json(const nlohmann::json& j, const Vocabulary& vocab);

nlohmann::ordered_json to_json(const NaiveBayes& clf, const Vocabulary& vocab);
NaiveBayes naive_bayes_from_json(const nlohmann::json& j, const Vocabulary& vocab);

void save_neighbor_mlm(const std::filesystem::path& path, const NeighborMlm& mlm,
                       const Vocabulary& vocab);
NeighborMlm load_neighbor_mlm(const std::filesystem::path& path, const Vocabulary& vocab);

void save_naive_bayes(const std::filesystem::path& path, const NaiveBayes& clf,
                      const Vocabulary& vocab);
NaiveBayes load_naive_bayes(const std::filesystem::path& path, const Vocabulary& vocab);

}  // namespace mixmatch

#endif  // MIXMATCH_MODEL_IO_H_
