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

#include "mixmatch/embeddings.h"

#include <fstream>
#include <vector>

#include "mixmatch/errors.h"
#include "mixmatch/strings.h"

namespace mixmatch {

EmbeddingTable EmbeddingTable::Load(const std::filesystem::path& path, const Vocabulary& vocab) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open embedding file: " + path.string());

  const auto v = static_cast<Eigen::Index>(vocab.size());
  Eigen::Index d = -1;
  Eigen::MatrixXd table;
  std::vector<bool> seen(vocab.size(), false);
  Eigen::VectorXd sum;
  long n_loaded = 0;

  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_whitespace(line);
    if (fields.empty()) continue;
    const auto where = path.string() + ":" + std::to_string(line_no);
    if (fields.size() < 2) throw Error(where + ": expected token followed by values");
    const auto dim = static_cast<Eigen::Index>(fields.size() - 1);
    if (d < 0) {
      d = dim;
      table = Eigen::MatrixXd::Zero(v, d);
      sum = Eigen::VectorXd::Zero(d);
    } else if (dim != d) {
      throw Error(where + ": dimension " + std::to_string(dim) + " != " + std::to_string(d));
    }
    Eigen::VectorXd vec(d);
    for (Eigen::Index j = 0; j < d; ++j) {
      try {
        std::size_t used = 0;
        vec[j] = std::stod(fields[static_cast<std::size_t>(j) + 1], &used);
        if (used != fields[static_cast<std::size_t>(j) + 1].size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw Error(where + ": bad number '" + fields[static_cast<std::size_t>(j) + 1] + "'");
      }
    }
    sum += vec;
    ++n_loaded;
    if (auto id = vocab.find(fields[0])) {
      table.row(*id) = vec.transpose();
      seen[static_cast<std::size_t>(*id)] = true;
    }
  }
  if (d < 0) throw Error("embedding file is empty: " + path.string());

  Eigen::RowVectorXd fallback = seen[Vocabulary::kUnk]
                                    ? Eigen::RowVectorXd(table.row(Vocabulary::kUnk))
                                    : Eigen::RowVectorXd((sum / static_cast<double>(n_loaded)).transpose());
  for (Eigen::Index id = 0; id < v; ++id)
    if (!seen[static_cast<std::size_t>(id)]) table.row(id) = fallback;
  return EmbeddingTable(std::move(table));
}

}  // namespace mixmatch
