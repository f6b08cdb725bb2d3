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

#ifndef MIXMATCH_EMBEDDINGS_H_
#define MIXMATCH_EMBEDDINGS_H_

#include <filesystem>

#include <Eigen/Core>

#include "mixmatch/vocabulary.h"

namespace mixmatch {

// Dense token embeddings, one row per vocabulary id.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(Eigen::MatrixXd vectors) : vectors_(std::move(vectors)) {}

  // Reads `token v1 ... vd` lines. Tokens absent from the file get the
  // [UNK] vector if the file has one, otherwise the mean of all vectors.
  static EmbeddingTable Load(const std::filesystem::path& path, const Vocabulary& vocab);

  Eigen::Index dim() const { return vectors_.cols(); }
  std::size_t vocab_size() const { return static_cast<std::size_t>(vectors_.rows()); }
  const Eigen::MatrixXd& vectors() const { return vectors_; }
  auto row(TokenId id) const { return vectors_.row(id); }

 private:
  Eigen::MatrixXd vectors_;
};

}  // namespace mixmatch

#endif  // MIXMATCH_EMBEDDINGS_H_
