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

#ifndef MIXMATCH_CORPUS_H_
#define MIXMATCH_CORPUS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mixmatch/sequence.h"
#include "mixmatch/vocabulary.h"

namespace mixmatch {

struct LabeledLine {
  std::string label;
  std::string text;
};

// Tokenized training data. When labeled, `labels[i]` indexes `class_names`
// and covers every line.
struct Corpus {
  std::vector<Sequence> lines;
  std::vector<int> labels;
  std::vector<std::string> class_names;

  bool labeled() const { return !class_names.empty(); }
  std::size_t size() const { return lines.size(); }
};

// Reads non-empty lines (trailing whitespace stripped). Errors name the path.
std::vector<std::string> read_lines(const std::filesystem::path& path);

// Parses `label<TAB>text` lines. Errors carry 1-based line numbers.
std::vector<LabeledLine> parse_labeled(const std::vector<std::string>& lines,
                                       const std::string& source_name = "<input>");

Corpus make_corpus(const std::vector<std::string>& lines, const Vocabulary& vocab);

// Class ids are assigned in lexicographic order of label strings.
Corpus make_labeled_corpus(const std::vector<LabeledLine>& lines, const Vocabulary& vocab);

}  // namespace mixmatch

#endif  // MIXMATCH_CORPUS_H_
