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

#ifndef MIXMATCH_REMOTE_H_
#define MIXMATCH_REMOTE_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mixmatch/conditional_model.h"
#include "mixmatch/experts.h"
#include "mixmatch/vocabulary.h"

namespace mixmatch {

// Wire protocol (JSON over HTTP, UTF-8):
//   POST {base}/v1/energy       {"expert": name, "tokens": [...]}  -> {"energy": x}
//   POST {base}/v1/conditional  {"position": i, "tokens": [...]}   -> {"logprobs": [...], "tokens": [...]}
inline constexpr const char* kEnergyPath = "/v1/energy";
inline constexpr const char* kConditionalPath = "/v1/conditional";
inline constexpr double kConditionalTolerance = 1e-3;
// Mass mixed uniformly into remote conditionals so every local token stays
// proposable.
inline constexpr double kRemoteProposalFloor = 1e-6;

struct RemoteExpertEndpoint {
  std::string base_url;  // http://host:port[/prefix]
  std::string name;
  int timeout_ms = 10000;
  int retries = 2;  // extra attempts after the first

  void validate() const;
};

// `--remote-expert url:name:weight`; the url may itself contain colons.
struct RemoteExpertFlag {
  RemoteExpertEndpoint endpoint;
  double weight = 1.0;
};
RemoteExpertFlag parse_remote_expert_flag(std::string_view flag);

struct RemoteConditional {
  std::vector<std::string> tokens;
  std::vector<double> logprobs;  // normalized on return
};

// Request bodies, byte-exact.
std::string energy_request_body(const std::string& expert, const std::vector<std::string>& tokens);
std::string conditional_request_body(const std::vector<std::string>& tokens, std::size_t position);

// Response validation. Throws ProtocolError.
double parse_energy_response(const std::string& body);
RemoteConditional parse_conditional_response(const std::string& body);

// POSTs with retries and exponential backoff (100 ms, doubling). Connection
// failures, timeouts and 5xx responses are retried; 4xx are not.
std::string post_json(const RemoteExpertEndpoint& endpoint, const std::string& path,
                      const std::string& body);

double remote_energy(const RemoteExpertEndpoint& endpoint, const std::vector<std::string>& tokens);
RemoteConditional remote_conditional(const RemoteExpertEndpoint& endpoint,
                                     const std::vector<std::string>& tokens, std::size_t position);

class RemoteEnergyExpert : public EnergyExpert {
 public:
  RemoteEnergyExpert(RemoteExpertEndpoint endpoint, std::shared_ptr<const Vocabulary> vocab);
  ExpertKind kind() const override { return ExpertKind::kRemote; }
  std::string name() const override { return "remote:" + endpoint_.name; }
  double evaluate(const Sequence& x) const override;

 private:
  RemoteExpertEndpoint endpoint_;
  std::shared_ptr<const Vocabulary> vocab_;
};

// Proposal served by a remote masked LM, restricted to the local
// vocabulary. Tokens outside it are dropped with a warning.
class RemoteConditionalModel : public MaskedConditionalModel {
 public:
  RemoteConditionalModel(RemoteExpertEndpoint endpoint, std::shared_ptr<const Vocabulary> vocab);
  std::size_t vocab_size() const override { return vocab_->size(); }

  // Maps a server response onto local ids.
  Distribution to_local(const RemoteConditional& remote) const;

 protected:
  Distribution DoConditional(const Sequence& x, std::size_t i) const override;
  double DoLogScore(const Sequence& x, std::size_t i) const override;

 private:
  RemoteExpertEndpoint endpoint_;
  std::shared_ptr<const Vocabulary> vocab_;
};

}  // namespace mixmatch

#endif  // MIXMATCH_REMOTE_H_
