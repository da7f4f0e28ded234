/*
 * Copyright 2026 The IEMA Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "iema/interface/service.h"

#include <set>
#include <thread>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "httplib.h"
#include "iema/grammar/earley.h"
#include "iema/grammar/iema_grammar.h"
#include "iema/interface/html_export.h"
#include "iema/interface/http_server.h"
#include "iema/session/bundle.h"
#include "iema/testing/players.h"

namespace iema::interface {
namespace {

using nlohmann::json;
using ::testing::HasSubstr;

class ServiceTest : public ::testing::Test {
 protected:
  ServiceTest()
      : service_(testing::Players(), testing::PlayersModel("gbm"),
                 {.seed = 11}) {}

  HttpResponse Call(const std::string& method, const std::string& path,
                    const json& body = nullptr) {
    return service_.Handle(
        {method, path, body.is_null() ? std::string() : body.dump()});
  }

  std::string NewSession() {
    const HttpResponse created = Call("POST", "/sessions");
    EXPECT_EQ(created.status, 201) << created.body;
    return json::parse(created.body)["id"];
  }

  Service service_;
};

TEST_F(ServiceTest, GrammarAndSummary) {
  const HttpResponse grammar = Call("GET", "/grammar");
  ASSERT_EQ(grammar.status, 200);
  EXPECT_EQ(json::parse(grammar.body), grammar::IemaGrammar().ToJson());
  const HttpResponse summary = Call("GET", "/dataset/summary");
  ASSERT_EQ(summary.status, 200);
  const json parsed = json::parse(summary.body);
  EXPECT_EQ(parsed["n_rows"], 400);
}

TEST_F(ServiceTest, ViolationListsPermittedSteps) {
  const std::string id = NewSession();
  const HttpResponse response =
      Call("POST", "/sessions/" + id + "/steps",
           {{"symbol", "Ceteris_Paribus"}, {"instance", {{"row", 0}}}});
  EXPECT_EQ(response.status, 409);
  const json error = json::parse(response.body);
  EXPECT_EQ(error["permitted_steps"].size(), 8u);
  const json next =
      json::parse(Call("GET", "/sessions/" + id + "/next-steps").body);
  EXPECT_EQ(error["permitted_steps"], next["terminals"]);
  // The failed step left nothing behind.
  const json bundle = json::parse(Call("GET", "/sessions/" + id).body);
  EXPECT_TRUE(bundle["history"].empty());
}

TEST_F(ServiceTest, DialogueOverTheApi) {
  const std::string id = NewSession();
  size_t n = 0;
  for (const json& step : testing::DialogueScript()) {
    const HttpResponse response =
        Call("POST", "/sessions/" + id + "/steps", step);
    ASSERT_EQ(response.status, 200) << step << response.body;
    const json parsed = json::parse(response.body);
    EXPECT_EQ(parsed["payload"]["symbol"], step["symbol"]);
    // Read your writes: the next GET sees the step.
    const json bundle = json::parse(Call("GET", "/sessions/" + id).body);
    EXPECT_EQ(bundle["history"].size(), ++n);
    EXPECT_EQ(bundle["next_steps"], parsed["next_steps"]);
  }
  const HttpResponse bundle = Call("GET", "/sessions/" + id);
  ASSERT_EQ(bundle.status, 200);
  EXPECT_TRUE(session::ValidateBundle(json::parse(bundle.body)).ok());
  EXPECT_TRUE(json::parse(bundle.body).contains("parse_tree"));

  const HttpResponse html = Call("GET", "/sessions/" + id + "/export.html");
  ASSERT_EQ(html.status, 200);
  EXPECT_EQ(html.content_type.rfind("text/html", 0), 0u);
  auto embedded = ExtractBundle(html.body);
  ASSERT_TRUE(embedded.ok());
  EXPECT_EQ(*embedded, bundle.body);
}

TEST_F(ServiceTest, UndoAndErrors) {
  const std::string id = NewSession();
  EXPECT_EQ(Call("DELETE", "/sessions/" + id + "/steps/last").status, 409);
  EXPECT_EQ(Call("GET", "/sessions/ffffffffffffffff").status, 404);
  EXPECT_EQ(Call("GET", "/no/such/route").status, 404);
  EXPECT_EQ(Call("PUT", "/grammar").status, 405);
  EXPECT_EQ(service_.Handle({"POST", "/sessions/" + id + "/steps", "{"}).status,
            400);
  // Parameter errors are 422.
  EXPECT_EQ(
      Call("POST", "/sessions/" + id + "/steps",
           {{"symbol", "SHAP_Attribution"}, {"instance", {{"row", 100000}}}})
          .status,
      422);
  // LOCO needs a refittable model; the tree ensemble is not one.
  const HttpResponse loco = Call("POST", "/sessions/" + id + "/steps",
                                 {{"symbol", "LOCO_Importance"}});
  EXPECT_EQ(loco.status, 422) << loco.body;

  ASSERT_EQ(Call("POST", "/sessions/" + id + "/steps",
                 {{"symbol", "Permutational_Importance"}})
                .status,
            200);
  const HttpResponse undo = Call("DELETE", "/sessions/" + id + "/steps/last");
  ASSERT_EQ(undo.status, 200);
  const json parsed = json::parse(undo.body);
  EXPECT_EQ(parsed["history_length"], 0);
  EXPECT_EQ(parsed["next_steps"]["terminals"].size(), 8u);
}

TEST_F(ServiceTest, SessionIdsAreDistinct) {
  std::set<std::string> ids;
  for (int i = 0; i < 20; ++i) ids.insert(NewSession());
  EXPECT_EQ(ids.size(), 20u);
}

TEST_F(ServiceTest, SeedFromRequestMakesResultsReproducible) {
  auto run = [&](uint64_t seed) {
    const std::string id =
        json::parse(Call("POST", "/sessions", {{"seed", seed}}).body)["id"];
    const HttpResponse r = Call("POST", "/sessions/" + id + "/steps",
                                {{"symbol", "Permutational_Importance"}});
    return json::parse(r.body)["payload"];
  };
  EXPECT_EQ(run(5), run(5));
  EXPECT_NE(run(5), run(6));
}

TEST(HttpServerTest, ServesOverSockets) {
  Service service(testing::Players(), testing::PlayersModel("linear"), {});
  HttpServer server(service);
  ASSERT_TRUE(server.Start("127.0.0.1", 0).ok());
  ASSERT_GT(server.port(), 0);

  // Sessions driven from separate connections in parallel.
  constexpr int kClients = 4;
  std::vector<std::thread> threads;
  std::vector<int> statuses(kClients, 0);
  std::vector<size_t> lengths(kClients, 0);
  for (int c = 0; c < kClients; ++c) {
    threads.emplace_back([&, c] {
      httplib::Client client("127.0.0.1", server.port());
      auto created = client.Post("/sessions", "", "application/json");
      if (!created || created->status != 201) return;
      const std::string id = json::parse(created->body)["id"];
      int last = 0;
      for (const json& step : testing::DialogueScript()) {
        auto r = client.Post("/sessions/" + id + "/steps", step.dump(),
                             "application/json");
        last = r ? r->status : -1;
        if (last != 200) break;
      }
      statuses[c] = last;
      auto bundle = client.Get("/sessions/" + id);
      if (bundle) lengths[c] = json::parse(bundle->body)["history"].size();
    });
  }
  for (auto& t : threads) t.join();
  for (int c = 0; c < kClients; ++c) {
    EXPECT_EQ(statuses[c], 200);
    EXPECT_EQ(lengths[c], 7u);
  }

  httplib::Client client("127.0.0.1", server.port());
  auto page = client.Get("/");
  ASSERT_TRUE(page);
  EXPECT_EQ(page->status, 200);
  EXPECT_THAT(page->body, HasSubstr("iema-data"));
  server.Stop();
  server.Wait();
}

}  // namespace
}  // namespace iema::interface
