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

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "mixmatch/energy_model.h"
#include "mixmatch/errors.h"
#include "mixmatch/remote.h"
#include "mixmatch/sampler.h"
#include "test_util.h"

// After the Eigen-based headers: <resolv.h> defines a _res macro.
#include <httplib.h>

namespace mixmatch {
namespace {

using nlohmann::json;

std::vector<json> load_fixtures() {
  std::vector<json> out;
  const auto dir = testing::source_path("tests/fixtures/remote");
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) out.push_back(json::parse(std::ifstream(f)));
  return out;
}

const json& fixture(const std::string& name) {
  static const std::vector<json> all = load_fixtures();
  for (const auto& f : all)
    if (f["name"] == name) return f;
  throw std::runtime_error("no fixture " + name);
}

// Answers only requests whose body matches a golden fixture byte for byte.
class FixtureServer {
 public:
  FixtureServer() {
    auto handler = [this](const httplib::Request& req, httplib::Response& res) {
      ++hits_;
      {
        std::lock_guard<std::mutex> lock(mu_);
        last_body_ = req.body;
      }
      if (delay_ms_ > 0) std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms_.load()));
      if (fail_first_ > 0) {
        --fail_first_;
        res.status = 503;
        res.set_content(R"({"error": "busy"})", "application/json");
        return;
      }
      for (const auto& f : load_fixtures()) {
        std::string path = req.path;
        if (path.rfind("/prefix", 0) == 0) path = path.substr(7);
        if (f["path"] == path && f["request_body"] == req.body) {
          res.status = f["status"].get<int>();
          res.set_content(f["response"].get<std::string>(), "application/json");
          return;
        }
      }
      res.status = 400;
      res.set_content(R"({"error": "no matching fixture"})", "application/json");
    };
    server_.Post("/v1/energy", handler);
    server_.Post("/v1/conditional", handler);
    server_.Post("/prefix/v1/energy", handler);
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FixtureServer() {
    server_.stop();
    thread_.join();
  }

  RemoteExpertEndpoint endpoint(const std::string& name, int timeout_ms = 2000) const {
    RemoteExpertEndpoint e;
    e.base_url = "http://127.0.0.1:" + std::to_string(port_);
    e.name = name;
    e.timeout_ms = timeout_ms;
    return e;
  }

  int hits() const { return hits_; }
  std::string last_body() {
    std::lock_guard<std::mutex> lock(mu_);
    return last_body_;
  }
  void set_delay_ms(int ms) { delay_ms_ = ms; }
  void fail_first(int n) { fail_first_ = n; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> hits_{0};
  std::atomic<int> delay_ms_{0};
  std::atomic<int> fail_first_{0};
  std::mutex mu_;
  std::string last_body_;
};

std::vector<std::string> request_tokens(const json& f) {
  return f["request"]["tokens"].get<std::vector<std::string>>();
}

TEST(RemoteWire, RequestBodiesMatchFixturesExactly) {
  for (const auto& name : {"energy_echo_zero", "energy_unicode_tokens", "energy_nan"}) {
    const auto& f = fixture(name);
    EXPECT_EQ(energy_request_body(f["request"]["expert"], request_tokens(f)),
              f["request_body"].get<std::string>())
        << name;
  }
  for (const auto& name : {"conditional_two_tokens", "conditional_mass_090"}) {
    const auto& f = fixture(name);
    EXPECT_EQ(conditional_request_body(request_tokens(f), f["request"]["position"]),
              f["request_body"].get<std::string>())
        << name;
  }
}

TEST(RemoteWire, ParseEnergy) {
  EXPECT_EQ(parse_energy_response(R"({"energy": 1.5})"), 1.5);
  EXPECT_THROW(parse_energy_response(R"({"energy": NaN})"), ProtocolError);
  EXPECT_THROW(parse_energy_response(R"({"energy": "1"})"), ProtocolError);
  EXPECT_THROW(parse_energy_response(R"({"value": 1})"), ProtocolError);
  EXPECT_THROW(parse_energy_response("not json"), ProtocolError);
  EXPECT_THROW(parse_energy_response(R"({"energy": 1e400})"), ProtocolError);
}

TEST(RemoteWire, ParseConditional) {
  const auto c = parse_conditional_response(
      R"({"tokens": ["a", "b"], "logprobs": [-0.6931471805599453, -0.6931471805599453]})");
  EXPECT_NEAR(std::exp(c.logprobs[0]) + std::exp(c.logprobs[1]), 1.0, 1e-12);
  EXPECT_THROW(parse_conditional_response(R"({"tokens": [], "logprobs": []})"), ProtocolError);
  EXPECT_THROW(parse_conditional_response(R"({"tokens": ["a"], "logprobs": [1, 2]})"),
               ProtocolError);
  EXPECT_THROW(parse_conditional_response(R"({"tokens": [1], "logprobs": [0]})"), ProtocolError);
  // All mass at -inf cannot be normalized.
  EXPECT_THROW(parse_conditional_response(R"({"tokens": ["a"], "logprobs": [-1e400]})"),
               ProtocolError);
}

TEST(RemoteWire, FlagParsing) {
  const auto f = parse_remote_expert_flag("http://localhost:8080:bert:2.5");
  EXPECT_EQ(f.endpoint.base_url, "http://localhost:8080");
  EXPECT_EQ(f.endpoint.name, "bert");
  EXPECT_EQ(f.weight, 2.5);
  EXPECT_THROW(parse_remote_expert_flag("http://localhost:8080:bert"), ConfigError);
  EXPECT_THROW(parse_remote_expert_flag("localhost:bert:1"), ConfigError);
  EXPECT_THROW(parse_remote_expert_flag("http://h:1:bert:abc"), ConfigError);
  EXPECT_THROW(parse_remote_expert_flag("http://h:1:bert:inf"), ConfigError);
}

class RemoteFixtureTest : public ::testing::Test {
 protected:
  FixtureServer server;

  void expect_fixture_result(const std::string& name) {
    const auto& f = fixture(name);
    const auto& expect = f["expect"];
    auto call = [&] {
      if (f["path"] == kEnergyPath)
        return json(remote_energy(server.endpoint(f["request"]["expert"]), request_tokens(f)));
      const auto c = remote_conditional(server.endpoint("mlm"), request_tokens(f),
                                        f["request"]["position"].get<std::size_t>());
      json j;
      j["tokens"] = c.tokens;
      std::vector<double> probs;
      for (double lp : c.logprobs) probs.push_back(std::exp(lp));
      j["probs"] = probs;
      return j;
    };
    if (expect.contains("error")) {
      EXPECT_THROW(call(), ProtocolError) << name;
      return;
    }
    const json got = call();
    EXPECT_EQ(server.last_body(), f["request_body"].get<std::string>()) << name;
    if (expect.contains("energy")) {
      EXPECT_EQ(got.get<double>(), expect["energy"].get<double>()) << name;
    } else {
      EXPECT_EQ(got["tokens"], expect["tokens"]) << name;
      double total = 0.0;
      for (std::size_t k = 0; k < expect["probs"].size(); ++k) {
        EXPECT_NEAR(got["probs"][k].get<double>(), expect["probs"][k].get<double>(), 1e-12) << name;
        total += got["probs"][k].get<double>();
      }
      EXPECT_NEAR(total, 1.0, kConditionalTolerance);
    }
  }
};

TEST_F(RemoteFixtureTest, EchoExpertReturnsZero) { expect_fixture_result("energy_echo_zero"); }
TEST_F(RemoteFixtureTest, DiscriminatorEnergy) { expect_fixture_result("energy_discriminator"); }
TEST_F(RemoteFixtureTest, UnicodeTokens) { expect_fixture_result("energy_unicode_tokens"); }
TEST_F(RemoteFixtureTest, NanEnergyIsAProtocolError) { expect_fixture_result("energy_nan"); }
TEST_F(RemoteFixtureTest, TwoTokenConditional) { expect_fixture_result("conditional_two_tokens"); }
TEST_F(RemoteFixtureTest, MismatchedLengths) {
  expect_fixture_result("conditional_mismatched_lengths");
}
TEST_F(RemoteFixtureTest, LowMassIsRenormalized) { expect_fixture_result("conditional_mass_090"); }

TEST_F(RemoteFixtureTest, ClientErrorsAreNotRetried) {
  expect_fixture_result("energy_unknown_expert");
  EXPECT_EQ(server.hits(), 1);
}

TEST_F(RemoteFixtureTest, ServerErrorsAreRetried) {
  server.fail_first(2);
  EXPECT_EQ(remote_energy(server.endpoint("echo"), {"the", "movie", "was", "good"}), 0.0);
  EXPECT_EQ(server.hits(), 3);
}

TEST_F(RemoteFixtureTest, PersistentServerErrorsExhaustRetries) {
  server.fail_first(100);
  auto ep = server.endpoint("echo");
  ep.retries = 1;
  EXPECT_THROW(remote_energy(ep, {"the", "movie", "was", "good"}), TransportError);
  EXPECT_EQ(server.hits(), 2);
}

TEST_F(RemoteFixtureTest, TimeoutIsRetriedThenFails) {
  server.set_delay_ms(400);
  auto ep = server.endpoint("echo", 100);
  ep.retries = 2;
  const auto start = std::chrono::steady_clock::now();
  EXPECT_THROW(remote_energy(ep, {"the", "movie", "was", "good"}), TransportError);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  // Three attempts of ~100 ms plus 100 + 200 ms of backoff.
  EXPECT_GE(elapsed, std::chrono::milliseconds(550));
  server.set_delay_ms(0);
}

TEST_F(RemoteFixtureTest, UrlPrefixIsKept) {
  auto ep = server.endpoint("echo");
  ep.base_url += "/prefix/";
  EXPECT_EQ(remote_energy(ep, {"the", "movie", "was", "good"}), 0.0);
}

TEST(RemoteTransport, UnreachableServer) {
  RemoteExpertEndpoint ep;
  ep.base_url = "http://127.0.0.1:9";
  ep.name = "x";
  ep.timeout_ms = 200;
  ep.retries = 1;
  EXPECT_THROW(remote_energy(ep, {"a"}), TransportError);
}

TEST_F(RemoteFixtureTest, RemoteEnergyExpertInAModel) {
  auto vocab = std::make_shared<Vocabulary>(Vocabulary::FromTokens({"the", "food", "was", "bad"}));
  EnergyModel m;
  m.add(std::make_shared<RemoteEnergyExpert>(server.endpoint("sentiment"), vocab), 2.0);
  EXPECT_EQ(total_energy(tokenize("the food was bad", *vocab), m), 5.0);
}

TEST_F(RemoteFixtureTest, ConditionalRestrictedToLocalVocabulary) {
  auto vocab = std::make_shared<Vocabulary>(Vocabulary::FromTokens({"the", "was", "good", "bad", "ok"}));
  const RemoteConditionalModel model(server.endpoint("mlm"), vocab);
  const Sequence x = tokenize("the ok was", *vocab);
  const Distribution p = model.conditional(x, 1);
  EXPECT_EQ(server.last_body(), fixture("conditional_out_of_vocabulary")["request_body"]);
  EXPECT_EQ(p[Vocabulary::kMask], 0.0);
  EXPECT_EQ(p[Vocabulary::kUnk], 0.0);
  EXPECT_NEAR(p.sum(), 1.0, 1e-12);
  // "zzz" is dropped; good:bad keeps its 2:1 ratio; every local token is proposable.
  EXPECT_NEAR(p[vocab->id("good")] / p[vocab->id("bad")], 2.0, 1e-5);
  EXPECT_GT(p[vocab->id("ok")], 0.0);
  EXPECT_LT(p[vocab->id("ok")], 1e-6);
  EXPECT_NEAR(model.log_score(tokenize("the good was", *vocab), 1), std::log(p[vocab->id("good")]),
              1e-12);
}

TEST_F(RemoteFixtureTest, SamplerRunsAgainstRemoteProposal) {
  auto vocab = std::make_shared<Vocabulary>(Vocabulary::FromTokens({"the", "was", "good", "bad"}));
  SamplerConfig cfg;
  cfg.epochs = 3;
  cfg.energy = std::make_shared<EnergyModel>();
  cfg.proposal = std::make_shared<RemoteConditionalModel>(server.endpoint("mlm"), vocab);
  Sequence init = tokenize("the good was", *vocab);
  init = init_revision(init, std::vector<std::size_t>{0, 2});
  const auto r = run_chain(init, cfg);
  EXPECT_EQ(r.trace.size(), 3u);
  EXPECT_EQ(r.final[0], vocab->id("the"));
}

}  // namespace
}  // namespace mixmatch
