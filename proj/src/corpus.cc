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

#include "mixmatch/corpus.h"

#include <algorithm>
#include <fstream>
#include <map>

#include "mixmatch/errors.h"
#include "mixmatch/strings.h"

namespace mixmatch {

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

std::vector<LabeledLine> parse_labeled(const std::vector<std::string>& lines,
                                       const std::string& source_name) {
  std::vector<LabeledLine> out;
  out.reserve(lines.size());
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto& line = lines[n];
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(source_name + ":" + std::to_string(n + 1) + ": expected label<TAB>text");
    }
    auto label = std::string(trim(std::string_view(line).substr(0, tab)));
    auto text = std::string(trim(std::string_view(line).substr(tab + 1)));
    if (label.empty())
      throw Error(source_name + ":" + std::to_string(n + 1) + ": empty label");
    out.push_back({std::move(label), std::move(text)});
  }
  return out;
}

Corpus make_corpus(const std::vector<std::string>& lines, const Vocabulary& vocab) {
  Corpus corpus;
  corpus.lines.reserve(lines.size());
  for (const auto& line : lines) corpus.lines.push_back(tokenize(line, vocab));
  return corpus;
}

Corpus make_labeled_corpus(const std::vector<LabeledLine>& lines, const Vocabulary& vocab) {
  Corpus corpus;
  std::map<std::string, int> ids;
  for (const auto& l : lines) ids.emplace(l.label, 0);
  for (auto& [name, id] : ids) {
    id = static_cast<int>(corpus.class_names.size());
    corpus.class_names.push_back(name);
  }
  for (const auto& l : lines) {
    corpus.lines.push_back(tokenize(l.text, vocab));
    corpus.labels.push_back(ids.at(l.label));
  }
  return corpus;
}

}  // namespace mixmatch
