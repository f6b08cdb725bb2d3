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

#include "mixmatch/vocabulary.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mixmatch/errors.h"
#include "mixmatch/strings.h"

namespace mixmatch {

std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  return text;
}

Vocabulary::Vocabulary() {
  tokens_ = {std::string(kMaskToken), std::string(kUnkToken)};
  index_[tokens_[0]] = kMask;
  index_[tokens_[1]] = kUnk;
}

Vocabulary Vocabulary::FromTokens(const std::vector<std::string>& regular) {
  Vocabulary vocab;
  for (const auto& tok : regular) {
    if (tok.empty()) throw Error("vocabulary: empty token");
    if (vocab.index_.count(tok)) throw Error("vocabulary: duplicate token '" + tok + "'");
    const auto id = static_cast<TokenId>(vocab.tokens_.size());
    vocab.tokens_.push_back(tok);
    vocab.index_.emplace(tok, id);
  }
  return vocab;
}

Vocabulary Vocabulary::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open vocabulary file: " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (t.empty()) continue;
    lines.emplace_back(t);
  }
  if (lines.size() < 2 || lines[0] != kMaskToken || lines[1] != kUnkToken) {
    throw Error(path.string() + ": first two lines must be " + std::string(kMaskToken) +
                " and " + std::string(kUnkToken));
  }
  return FromTokens(std::vector<std::string>(lines.begin() + 2, lines.end()));
}

void Vocabulary::Save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write vocabulary file: " + path.string());
  for (const auto& tok : tokens_) out << tok << '\n';
}

TokenId Vocabulary::id(std::string_view token) const {
  return find(token).value_or(kUnk);
}

std::optional<TokenId> Vocabulary::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& Vocabulary::token(TokenId id) const {
  if (!contains(id)) throw std::out_of_range("token id out of range: " + std::to_string(id));
  return tokens_[static_cast<std::size_t>(id)];
}

std::uint64_t Vocabulary::Hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& tok : tokens_) {
    for (unsigned char c : tok) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= static_cast<unsigned char>('\n');
    h *= 1099511628211ULL;
  }
  return h;
}

std::string Vocabulary::HashHex() const {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << Hash();
  return os.str();
}

Vocabulary build_vocab(const std::vector<std::string>& lines, int min_count) {
  if (lines.empty()) throw Error("empty corpus");
  if (min_count < 1) throw Error("min_count must be >= 1");
  std::map<std::string, long> counts;
  for (const auto& line : lines) {
    for (auto& tok : split_whitespace(line)) {
      if (tok == Vocabulary::kMaskToken || tok == Vocabulary::kUnkToken) continue;
      ++counts[tok];
    }
  }
  std::vector<std::pair<std::string, long>> kept;
  for (auto& [tok, n] : counts)
    if (n >= min_count) kept.emplace_back(tok, n);
  // std::map already gives lexicographic order; stable_sort keeps it for ties.
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> tokens;
  tokens.reserve(kept.size());
  for (auto& [tok, n] : kept) tokens.push_back(tok);
  return Vocabulary::FromTokens(tokens);
}

}  // namespace mixmatch
