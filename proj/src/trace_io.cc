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

#include "mixmatch/trace_io.h"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace mixmatch {

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_trace_csv(std::ostream& out, const ChainResult& chain) {
  out << kTraceCsvHeader << '\n';
  for (const auto& r : chain.trace) {
    out << r.step << ',' << r.position << ',' << r.old_id << ',' << r.new_id << ','
        << format_real(r.delta_e) << ',' << format_real(r.accept_prob) << ','
        << (r.accepted ? 1 : 0) << ',' << format_real(r.total_e) << '\n';
  }
}

void write_trace_jsonl(std::ostream& out, const ChainResult& chain) {
  for (const auto& r : chain.trace) {
    nlohmann::ordered_json j;
    j["step"] = r.step;
    j["position"] = r.position;
    j["old_id"] = r.old_id;
    j["new_id"] = r.new_id;
    j["delta_e"] = r.delta_e;
    j["accept_prob"] = r.accept_prob;
    j["accepted"] = r.accepted;
    j["total_e"] = r.total_e;
    out << j.dump() << '\n';
  }
}

}  // namespace mixmatch
