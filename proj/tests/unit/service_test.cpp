#include "tilekit/generators.hpp"
#include "tilekit/report.hpp"
#include "tilekit/service.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <atomic>
#include <mutex>

namespace tilekit {
namespace {

using nlohmann::json;

json body(const Response& r) { return json::parse(r.body); }

std::string error_code(const Response& r) { return body(r)["error"]["code"]; }

class ServiceTest : public ::testing::Test {
 protected:
  std::string create(const json& req = json::object()) {
    const Response r = service.handle("POST", "/sessions", req.dump());
    EXPECT_EQ(r.status, 201) << r.body;
    return body(r)["id"];
  }
  Response post(const std::string& id, const std::string& action, const json& req = json::object()) {
    return service.handle("POST", "/sessions/" + id + "/" + action, req.dump());
  }
  Response get(const std::string& id, const std::string& action) {
    return service.handle("GET", "/sessions/" + id + "/" + action);
  }

  // A heptagon ringed by seven hexagons, built one request at a time.
  void build_heptagon_ring(const std::string& id) {
    ASSERT_EQ(post(id, "faces", {{"sides", 7}}).status, 201);
    for (int i = 0; i < 7; ++i) ASSERT_EQ(post(id, "faces", {{"sides", 6}}).status, 201);
    for (int i = 0; i < 7; ++i) {
      const Response r = post(id, "glue", {{"a", {0, i}}, {"b", {1 + i, 0}}});
      ASSERT_EQ(r.status, 201) << r.body;
    }
    for (int i = 0; i < 7; ++i) {
      const Response r = post(id, "glue", {{"a", {1 + i, 5}}, {"b", {1 + (i + 1) % 7, 1}}});
      ASSERT_EQ(r.status, 201) << r.body;
    }
  }

  SessionService service;
};

TEST_F(ServiceTest, HeptagonRingReportsSevenHyperbolicVertices) {
  const std::string id = create();
  build_heptagon_ring(id);
  const Response r = get(id, "report");
  ASSERT_EQ(r.status, 200);
  const json doc = body(r);
  EXPECT_EQ(doc["counts"]["F"], 8);
  int interior = 0;
  for (const json& v : doc["vertices"]) {
    if (v["kind"] != "interior") continue;
    ++interior;
    EXPECT_EQ(v["config"], json({6, 6, 7}));
    EXPECT_EQ(v["defect"]["display"], "-8 4/7°");
  }
  EXPECT_EQ(interior, 7);
  // Same topology as the generated patch.
  const json generated = json::parse(format_topology(football_disk(7, 1), ReportFormat::Json));
  EXPECT_EQ(doc["counts"], generated["counts"]);
  EXPECT_EQ(doc["total_defect"], generated["total_defect"]);
}

TEST_F(ServiceTest, UndoRestoresTheEarlierReport) {
  const std::string id = create({{"preset", "football-6-1"}});
  const std::string before = get(id, "report").body;
  ASSERT_EQ(post(id, "faces", {{"sides", 3}, {"edge_length", "1"}}).status, 201);
  EXPECT_NE(get(id, "report").body, before);
  const Response u = post(id, "undo");
  ASSERT_EQ(u.status, 200);
  EXPECT_EQ(body(u)["version"], 2);
  EXPECT_EQ(body(u)["undo_depth"], 0);
  EXPECT_EQ(get(id, "report").body, before);
  const Response again = post(id, "undo");
  EXPECT_EQ(again.status, 422);
  EXPECT_EQ(error_code(again), "NothingToUndo");
}

TEST_F(ServiceTest, UndoDepthIsBounded) {
  SessionService small({.ttl = std::chrono::seconds(3600), .undo_depth = 3});
  const json created = json::parse(small.handle("POST", "/sessions", "{}").body);
  const std::string id = created["id"];
  for (int i = 0; i < 5; ++i) small.handle("POST", "/sessions/" + id + "/faces", R"({"sides": 4})");
  int undone = 0;
  while (small.handle("POST", "/sessions/" + id + "/undo").status == 200) ++undone;
  EXPECT_EQ(undone, 3);
}

TEST_F(ServiceTest, UnknownSession) {
  const Response r = get("nope", "report");
  EXPECT_EQ(r.status, 404);
  EXPECT_EQ(error_code(r), "UnknownSession");
  EXPECT_EQ(service.handle("DELETE", "/sessions/nope").status, 404);
  EXPECT_FALSE(service.snapshot("nope").has_value());
  EXPECT_FALSE(service.subscribe("nope", [](const std::string&) {}).has_value());
}

TEST_F(ServiceTest, BadRequests) {
  const std::string id = create();
  EXPECT_EQ(service.handle("POST", "/sessions/" + id + "/faces", "not json").status, 400);
  EXPECT_EQ(post(id, "faces", {{"sides", "six"}}).status, 400);
  EXPECT_EQ(post(id, "faces", json::object()).status, 400);
  EXPECT_EQ(post(id, "glue", {{"a", {0}}, {"b", {1, 0}}}).status, 400);
  EXPECT_EQ(post(id, "faces", {{"sides", 4}, {"edge_length", "x/y"}}).status, 400);
  EXPECT_EQ(service.handle("GET", "/sessions/" + id + "/report?format=xml").status, 400);
  EXPECT_EQ(service.handle("GET", "/elsewhere").status, 400);
  EXPECT_EQ(service.handle("PUT", "/sessions/" + id + "/faces").status, 400);
}

TEST_F(ServiceTest, DomainErrorsAre422) {
  const std::string id = create();
  Response r = post(id, "faces", {{"sides", 2}});
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(error_code(r), "SidesTooSmall");
  post(id, "faces", {{"sides", 4}});
  post(id, "faces", {{"sides", 4}, {"edge_length", "3/2"}});
  r = post(id, "glue", {{"a", {0, 0}}, {"b", {1, 0}}});
  EXPECT_EQ(error_code(r), "LengthMismatch");
  r = service.handle("POST", "/sessions", json{{"spec", "faces: [\n"}}.dump());
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(error_code(r), "ParseError");
  EXPECT_TRUE(body(r)["error"].contains("line"));
}

TEST_F(ServiceTest, FailedMutationLeavesVersionAlone) {
  const std::string id = create();
  ASSERT_EQ(body(post(id, "faces", {{"sides", 5}}))["version"], 1);
  post(id, "glue", {{"a", {0, 0}}, {"b", {0, 0}}});
  EXPECT_EQ(body(post(id, "faces", {{"sides", 5}}))["version"], 2);
}

TEST_F(ServiceTest, StaleExpectedVersionConflicts) {
  const std::string id = create();
  ASSERT_EQ(post(id, "faces", {{"sides", 3}, {"expected_version", 0}}).status, 201);
  const Response r = post(id, "faces", {{"sides", 3}, {"expected_version", 0}});
  EXPECT_EQ(r.status, 409);
  EXPECT_EQ(error_code(r), "ConflictingMutation");
  EXPECT_EQ(post(id, "faces", {{"sides", 3}, {"expected_version", 1}}).status, 201);
}

TEST_F(ServiceTest, MutationDuringRelaxationConflicts) {
  const std::string id = create({{"preset", "truncated-icosahedron"}});
  const Response started = post(id, "relax", {{"iters", 200000}, {"tol", 0.0}, {"async", true}});
  ASSERT_EQ(started.status, 202);
  Response r = post(id, "faces", {{"sides", 3}});
  EXPECT_EQ(r.status, 409);
  EXPECT_EQ(post(id, "relax").status, 409);
  EXPECT_EQ(post(id, "undo").status, 409);
  EXPECT_TRUE(body(get(id, "embedding"))["relaxing"]);
  r = service.handle("DELETE", "/sessions/" + id + "/relax");
  EXPECT_TRUE(body(r)["stopped"]);
  EXPECT_EQ(post(id, "faces", {{"sides", 3}}).status, 201);
}

TEST_F(ServiceTest, SyncRelaxPublishesTheResult) {
  const std::string id = create({{"preset", "cube"}});
  const Response r = post(id, "relax", {{"iters", 3000}, {"seed", 4}});
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_LT(body(r)["relax"]["max_residual"].get<double>(), 1e-4);
  const json e = body(get(id, "embedding"));
  EXPECT_FALSE(e["relaxing"]);
  EXPECT_EQ(e["frame"]["nodes"].size(), 14u);
  EXPECT_EQ(e["relax"], body(r)["relax"]);
}

TEST_F(ServiceTest, RelaxOnDisconnectedSurface) {
  const std::string id = create();
  post(id, "faces", {{"sides", 3}});
  post(id, "faces", {{"sides", 3}});
  const Response r = post(id, "relax");
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(error_code(r), "Disconnected");
}

TEST_F(ServiceTest, SpecRoundTrip) {
  const std::string id = create({{"preset", "torus-9fold"}});
  const Response spec = get(id, "spec");
  EXPECT_EQ(spec.content_type, "application/yaml");
  const std::string copy = create({{"spec", spec.body}});
  EXPECT_EQ(get(copy, "report").body, get(id, "report").body);
}

TEST_F(ServiceTest, TextReportMatchesTheLibrary) {
  const std::string id = create({{"preset", "torus-9fold"}});
  const Response r = service.handle("GET", "/sessions/" + id + "/report?format=text");
  EXPECT_EQ(r.content_type.rfind("text/plain", 0), 0u);
  EXPECT_EQ(r.body, format_topology(torus_9fold(), ReportFormat::Text));
}

TEST_F(ServiceTest, ListenersSeeMutationsInOrder) {
  const std::string id = create();
  std::mutex m;
  std::vector<json> events;
  const auto token = service.subscribe(id, [&](const std::string& doc) {
    std::lock_guard lock(m);
    events.push_back(json::parse(doc));
  });
  ASSERT_TRUE(token.has_value());
  post(id, "faces", {{"sides", 4}});
  post(id, "faces", {{"sides", 4}});
  post(id, "glue", {{"a", {0, 0}}, {"b", {1, 0}}});
  post(id, "undo");
  ASSERT_EQ(events.size(), 4u);
  for (std::size_t i = 0; i < events.size(); ++i) {
    EXPECT_EQ(events[i]["event"], "mutation");
    EXPECT_EQ(events[i]["version"], i + 1);
    EXPECT_TRUE(events[i].contains("report"));
    EXPECT_TRUE(events[i].contains("frame"));
  }
  service.unsubscribe(id, *token);
  post(id, "faces", {{"sides", 4}});
  EXPECT_EQ(events.size(), 4u);

  const json snap = json::parse(*service.snapshot(id));
  EXPECT_EQ(snap["event"], "snapshot");
  EXPECT_EQ(snap["version"], 5);
}

TEST_F(ServiceTest, AsyncRelaxStreamsFramesAndFinishes) {
  const std::string id = create({{"preset", "truncated-icosahedron"}});
  std::atomic<int> frames{0}, finished{0};
  service.subscribe(id, [&](const std::string& doc) {
    const json e = json::parse(doc);
    if (e["event"] == "relax") ++frames;
    if (e["event"] == "relaxed") ++finished;
  });
  ASSERT_EQ(post(id, "relax", {{"iters", 4000}, {"async", true}}).status, 202);
  service.wait_idle(id);
  EXPECT_EQ(finished.load(), 1);
  EXPECT_GE(frames.load(), 1);
  EXPECT_FALSE(body(get(id, "embedding"))["relax"].is_null());
}

TEST(ServiceExpiry, IdleSessionsExpire) {
  auto t = std::chrono::steady_clock::time_point{};
  ServiceOptions options;
  options.ttl = std::chrono::seconds(60);
  options.clock = [&] { return t; };
  SessionService service(options);
  const std::string a = json::parse(service.handle("POST", "/sessions", "{}").body)["id"];
  t += std::chrono::seconds(40);
  const std::string b = json::parse(service.handle("POST", "/sessions", "{}").body)["id"];
  t += std::chrono::seconds(30);
  EXPECT_EQ(service.evict_expired(), 1u);
  EXPECT_EQ(service.handle("GET", "/sessions/" + a + "/report").status, 404);
  EXPECT_EQ(service.handle("GET", "/sessions/" + b + "/report").status, 200);
  t += std::chrono::seconds(59);
  EXPECT_EQ(service.session_count(), 1u);
  t += std::chrono::seconds(2);
  EXPECT_EQ(service.evict_expired(), 1u);
  EXPECT_EQ(service.session_count(), 0u);
}

TEST(ServiceDelete, RemovesTheSession) {
  SessionService service;
  const std::string id = json::parse(service.handle("POST", "/sessions", "{}").body)["id"];
  EXPECT_EQ(service.handle("DELETE", "/sessions/" + id).status, 204);
  EXPECT_EQ(service.session_count(), 0u);
}

}  // namespace
}  // namespace tilekit
