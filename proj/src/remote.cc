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

#include "mixmatch/remote.h"

#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "mixmatch/errors.h"

namespace mixmatch {

using nlohmann::json;

void RemoteExpertEndpoint::validate() const {
  if (name.empty()) throw ConfigError("remote expert: empty name");
  if (timeout_ms <= 0) throw ConfigError("remote expert '" + name + "': timeout must be > 0");
  if (retries < 0) throw ConfigError("remote expert '" + name + "': retries must be >= 0");
  if (base_url.rfind("http://", 0) != 0 && base_url.rfind("https://", 0) != 0)
    throw ConfigError("remote expert '" + name + "': url must start with http:// or https://");
}

RemoteExpertFlag parse_remote_expert_flag(std::string_view flag) {
  const auto last = flag.rfind(':');
  if (last == std::string_view::npos || last == 0)
    throw ConfigError("--remote-expert expects url:name:weight, got '" + std::string(flag) + "'");
  const auto mid = flag.rfind(':', last - 1);
  if (mid == std::string_view::npos)
    throw ConfigError("--remote-expert expects url:name:weight, got '" + std::string(flag) + "'");
  RemoteExpertFlag out;
  out.endpoint.base_url = std::string(flag.substr(0, mid));
  out.endpoint.name = std::string(flag.substr(mid + 1, last - mid - 1));
  const std::string weight(flag.substr(last + 1));
  try {
    std::size_t used = 0;
    out.weight = std::stod(weight, &used);
    if (used != weight.size()) throw std::invalid_argument(weight);
  } catch (const std::exception&) {
    throw ConfigError("--remote-expert: bad weight '" + weight + "'");
  }
  if (!std::isfinite(out.weight)) throw ConfigError("--remote-expert: weight must be finite");
  out.endpoint.validate();
  return out;
}

std::string energy_request_body(const std::string& expert, const std::vector<std::string>& tokens) {
  json j;
  j["expert"] = expert;
  j["tokens"] = tokens;
  return j.dump();
}

std::string conditional_request_body(const std::vector<std::string>& tokens,
                                     std::size_t position) {
  json j;
  j["position"] = position;
  j["tokens"] = tokens;
  return j.dump();
}

double parse_energy_response(const std::string& body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("energy response is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("energy") || !j["energy"].is_number())
    throw ProtocolError("energy response lacks a numeric 'energy' field");
  const double e = j["energy"].get<double>();
  if (!std::isfinite(e)) throw ProtocolError("energy response is not finite");
  return e;
}

RemoteConditional parse_conditional_response(const std::string& body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("conditional response is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("tokens") || !j.contains("logprobs") ||
      !j["tokens"].is_array() || !j["logprobs"].is_array())
    throw ProtocolError("conditional response needs 'tokens' and 'logprobs' arrays");
  RemoteConditional out;
  try {
    out.tokens = j["tokens"].get<std::vector<std::string>>();
    out.logprobs = j["logprobs"].get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("conditional response has wrong element types: ") + e.what());
  }
  if (out.tokens.size() != out.logprobs.size())
    throw ProtocolError("conditional response: " + std::to_string(out.tokens.size()) +
                        " tokens but " + std::to_string(out.logprobs.size()) + " logprobs");
  if (out.tokens.empty()) throw ProtocolError("conditional response is empty");
  double mass = 0.0;
  for (double lp : out.logprobs) {
    if (std::isnan(lp) || lp == std::numeric_limits<double>::infinity())
      throw ProtocolError("conditional response: invalid logprob");
    mass += std::exp(lp);
  }
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw ProtocolError("conditional response cannot be normalized");
  if (std::abs(mass - 1.0) > kConditionalTolerance)
    spdlog::warn("remote conditional: probabilities sum to {:.6f}; renormalizing", mass);
  const double log_mass = std::log(mass);
  for (double& lp : out.logprobs) lp -= log_mass;
  return out;
}

namespace {

struct ParsedUrl {
  std::string scheme_host_port;
  std::string prefix;
};

ParsedUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  const auto path_start = url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (path_start == std::string::npos) return {url, ""};
  std::string prefix = url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {url.substr(0, path_start), prefix};
}

}  // namespace

std::string post_json(const RemoteExpertEndpoint& endpoint, const std::string& path,
                      const std::string& body) {
  endpoint.validate();
  const auto url = split_url(endpoint.base_url);
  const auto timeout = std::chrono::milliseconds(endpoint.timeout_ms);
  auto backoff = std::chrono::milliseconds(100);
  std::string last_error;
  for (int attempt = 0; attempt <= endpoint.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    httplib::Client cli(url.scheme_host_port);
    cli.set_connection_timeout(timeout);
    cli.set_read_timeout(timeout);
    cli.set_write_timeout(timeout);
    auto res = cli.Post(url.prefix + path, body, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
    } else if (res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
    } else if (res->status != 200) {
      throw ProtocolError("remote expert '" + endpoint.name + "' " + path + ": HTTP " +
                          std::to_string(res->status) + " " + res->body);
    } else {
      return res->body;
    }
    spdlog::warn("remote expert '{}' {} attempt {} failed: {}", endpoint.name, path, attempt + 1,
                 last_error);
  }
  throw TransportError("remote expert '" + endpoint.name + "' " + path + " failed after " +
                       std::to_string(endpoint.retries + 1) + " attempts: " + last_error);
}

double remote_energy(const RemoteExpertEndpoint& endpoint, const std::vector<std::string>& tokens) {
  return parse_energy_response(post_json(endpoint, kEnergyPath,
                                         energy_request_body(endpoint.name, tokens)));
}

RemoteConditional remote_conditional(const RemoteExpertEndpoint& endpoint,
                                     const std::vector<std::string>& tokens, std::size_t position) {
  if (position >= tokens.size())
    throw Error("remote conditional: position " + std::to_string(position) + " out of range");
  return parse_conditional_response(
      post_json(endpoint, kConditionalPath, conditional_request_body(tokens, position)));
}

RemoteEnergyExpert::RemoteEnergyExpert(RemoteExpertEndpoint endpoint,
                                       std::shared_ptr<const Vocabulary> vocab)
    : endpoint_(std::move(endpoint)), vocab_(std::move(vocab)) {
  endpoint_.validate();
}

double RemoteEnergyExpert::evaluate(const Sequence& x) const {
  return remote_energy(endpoint_, token_strings(x, *vocab_));
}

RemoteConditionalModel::RemoteConditionalModel(RemoteExpertEndpoint endpoint,
                                               std::shared_ptr<const Vocabulary> vocab)
    : endpoint_(std::move(endpoint)), vocab_(std::move(vocab)) {
  endpoint_.validate();
  if (vocab_->regular_size() == 0) throw Error("remote conditional: empty local vocabulary");
}

Distribution RemoteConditionalModel::to_local(const RemoteConditional& remote) const {
  Distribution p = Distribution::Zero(static_cast<Eigen::Index>(vocab_->size()));
  double kept = 0.0;
  std::size_t dropped = 0;
  for (std::size_t k = 0; k < remote.tokens.size(); ++k) {
    auto id = vocab_->find(remote.tokens[k]);
    if (!id || !vocab_->is_regular(*id)) {
      ++dropped;
      continue;
    }
    const double pk = std::exp(remote.logprobs[k]);
    p[*id] += pk;
    kept += pk;
  }
  if (dropped)
    spdlog::warn("remote conditional: dropped {} tokens ({:.4f} mass) outside the local vocabulary",
                 dropped, 1.0 - kept);
  const double uniform = 1.0 / static_cast<double>(vocab_->regular_size());
  auto tail = p.tail(p.size() - Vocabulary::kFirstRegular);
  if (kept > 0.0)
    tail = (1.0 - kRemoteProposalFloor) * (tail / kept).array() + kRemoteProposalFloor * uniform;
  else
    tail.setConstant(uniform);
  return p;
}

Distribution RemoteConditionalModel::DoConditional(const Sequence& x, std::size_t i) const {
  auto tokens = token_strings(x, *vocab_);
  tokens[i] = std::string(Vocabulary::kMaskToken);
  return to_local(remote_conditional(endpoint_, tokens, i));
}

double RemoteConditionalModel::DoLogScore(const Sequence& x, std::size_t i) const {
  // Reserved tokens have no proposal mass; score them at the floor.
  const double floor = kRemoteProposalFloor / static_cast<double>(vocab_->regular_size());
  return std::log(std::max(DoConditional(x, i)[x[i]], floor));
}

}  // namespace mixmatch
