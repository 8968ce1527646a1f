// Copyright 2026 The bogrid Authors
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

#include <gtest/gtest.h>

#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "bogrid/generator.hpp"
#include "bogrid/option_grid.hpp"
#include "bogrid/service.hpp"

namespace {

using namespace bogrid;
using nlohmann::json;

TEST(ServiceHandler, HealthAndOptions) {
  const auto h = handle_request("GET", "/health", "");
  EXPECT_EQ(h.status, 200);
  EXPECT_EQ(json::parse(h.body)["status"], "ok");
  const auto o = handle_request("GET", "/options", "");
  EXPECT_EQ(o.status, 200);
  EXPECT_EQ(o.body, OptionGrid::builtin_json());
  const json j = json::parse(o.body);
  EXPECT_EQ(j["rows"].size(), 12u);
  EXPECT_EQ(j["rules"].size(), 3u);
}

TEST(ServiceHandler, RenderDefaultsMatchesGenerate) {
  const auto r = handle_request("POST", "/render", R"({"selection": {}})");
  ASSERT_EQ(r.status, 200);
  const json j = json::parse(r.body);
  const GenerationResult g = generate(OptionGrid::builtin().defaults());
  EXPECT_EQ(j["script"], g.script);
  EXPECT_EQ(j["digest"], g.digest);
}

TEST(ServiceHandler, RenderIncompatibleListsRules) {
  const auto r = handle_request("POST", "/render", R"({"selection": {"custom_threshold": "on"}})");
  ASSERT_EQ(r.status, 422);
  const json j = json::parse(r.body);
  EXPECT_EQ(j["error"], "incompatible");
  ASSERT_EQ(j["failed_rules"].size(), 1u);
  EXPECT_EQ(j["failed_rules"][0]["id"], "R1");
  EXPECT_EQ(j["failed_rules"][0]["reason"], OptionGrid::builtin().rules()[0].reason);
  EXPECT_EQ(j["cross_out_map"].size(), 12u);
  EXPECT_FALSE(j.contains("script"));
}

TEST(ServiceHandler, CrossOut) {
  const auto r = handle_request("POST", "/crossout", R"({"selection": {"objective": "single"}})");
  ASSERT_EQ(r.status, 200);
  const json j = json::parse(r.body);
  EXPECT_EQ(j["cross_out_map"]["custom_threshold"], json::array({"on"}));
  EXPECT_EQ(j["cross_out_map"]["objective"], json::array());
}

TEST(ServiceHandler, BadRequests) {
  EXPECT_EQ(handle_request("POST", "/render", "{").status, 400);
  EXPECT_EQ(handle_request("POST", "/render", R"({"nope": 1})").status, 400);
  EXPECT_EQ(handle_request("POST", "/render", R"({"selection": {"colour": "red"}})").status, 400);
  EXPECT_EQ(handle_request("POST", "/render", R"({"selection": {"objective": 3}})").status, 400);
  EXPECT_EQ(handle_request("GET", "/render", "").status, 404);
  EXPECT_EQ(handle_request("GET", "/nowhere", "").status, 404);
}

class ServiceHttp : public ::testing::Test {
 protected:
  void SetUp() override {
    port_ = server_.bind("127.0.0.1", 0);
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
  }
  void TearDown() override {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }
  httplib::Client client() { return httplib::Client("127.0.0.1", port_); }

  Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST_F(ServiceHttp, EndpointsOverTheWire) {
  auto c = client();
  auto health = c.Get("/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(health->get_header_value("Content-Type"), "application/json");

  auto options = c.Get("/options");
  ASSERT_TRUE(options);
  EXPECT_EQ(options->body, OptionGrid::builtin_json());

  auto render = c.Post("/render", R"({"selection": {"objective": "multi"}})", "application/json");
  ASSERT_TRUE(render);
  EXPECT_EQ(render->status, 200);
  Selection multi = OptionGrid::builtin().defaults();
  multi["objective"] = "multi";
  EXPECT_EQ(json::parse(render->body)["script"], generate(multi).script);

  auto bad = c.Post("/render", R"({"selection": {"model": "fully_bayesian", "task": "multi"}})", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 422);
  EXPECT_EQ(json::parse(bad->body)["failed_rules"][0]["id"], "R3");

  auto cross = c.Post("/crossout", R"({"selection": {}})", "application/json");
  ASSERT_TRUE(cross);
  EXPECT_EQ(cross->status, 200);

  auto missing = c.Get("/missing");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  EXPECT_EQ(json::parse(missing->body)["error"], "not_found");
}

TEST_F(ServiceHttp, ConcurrentRendersAgree) {
  const std::string expected = handle_request("POST", "/render", R"({"selection": {"categorical": "on"}})").body;
  std::vector<std::thread> workers;
  std::vector<std::string> bodies(8);
  for (int i = 0; i < 8; ++i) {
    workers.emplace_back([&, i] {
      auto c = client();
      auto r = c.Post("/render", R"({"selection": {"categorical": "on"}})", "application/json");
      if (r) bodies[i] = r->body;
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& b : bodies) EXPECT_EQ(b, expected);
}

}  // namespace
