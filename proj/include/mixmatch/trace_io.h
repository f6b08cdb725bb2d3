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

#ifndef MIXMATCH_TRACE_IO_H_
#define MIXMATCH_TRACE_IO_H_

#include <ostream>
#include <string>

#include "mixmatch/sampler.h"

namespace mixmatch {

inline constexpr const char* kTraceCsvHeader =
    "step,position,old_id,new_id,delta_e,accept_prob,accepted,total_e";

// Reals are written with 17 significant digits so they round-trip exactly.
void write_trace_csv(std::ostream& out, const ChainResult& chain);
void write_trace_jsonl(std::ostream& out, const ChainResult& chain);

std::string format_real(double value);

}  // namespace mixmatch

#endif  // MIXMATCH_TRACE_IO_H_
