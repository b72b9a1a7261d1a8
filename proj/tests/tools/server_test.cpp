#include "tilekit/server.hpp"
#include "tilekit/service.hpp"

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>
#include <gtest/gtest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include <thread>

namespace tilekit {
namespace {

namespace beast = boost::beast;
namespace websocket = beast::websocket;
using boost::asio::ip::tcp;
using nlohmann::json;

class ServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server = std::make_unique<Server>(service, "127.0.0.1", 0, 2);
    server->start();
    client = std::make_unique<httplib::Client>("127.0.0.1", server->port());
  }
  void TearDown() override {
    server->stop();
    server->wait();
  }

  std::string create(const json& req) {
    const auto r = client->Post("/sessions", req.dump(), "application/json");
    EXPECT_TRUE(r);
    EXPECT_EQ(r->status, 201);
    return json::parse(r->body)["id"];
  }

  struct Socket {
    boost::asio::io_context io;
    websocket::stream<tcp::socket> ws{io};

    Socket(unsigned short port, const std::string& target) {
      tcp::resolver resolver(io);
      boost::asio::connect(ws.next_layer(), resolver.resolve("127.0.0.1", std::to_string(port)));
      ws.handshake("127.0.0.1", target);
    }
    json read() {
      beast::flat_buffer buffer;
      ws.read(buffer);
      return json::parse(beast::buffers_to_string(buffer.data()));
    }
  };

  SessionService service;
  std::unique_ptr<Server> server;
  std::unique_ptr<httplib::Client> client;
};

TEST_F(ServerTest, RestRoundTrip) {
  const std::string id = create({{"preset", "torus-9fold"}});
  auto r = client->Get("/sessions/" + id + "/report?format=text");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  EXPECT_NE(r->body.find("Descartes: holds"), std::string::npos);
  EXPECT_EQ(r->get_header_value("Content-Type").rfind("text/plain", 0), 0u);

  r = client->Post("/sessions/" + id + "/faces", R"({"sides": 5})", "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 201);
  EXPECT_EQ(json::parse(r->body)["version"], 1);

  r = client->Get("/sessions/unknown/report");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 404);
  EXPECT_EQ(json::parse(r->body)["error"]["code"], "UnknownSession");

  r = client->Delete("/sessions/" + id);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 204);
}

TEST_F(ServerTest, ConcurrentClients) {
  const std::string id = create({{"preset", "cube"}});
  std::vector<std::thread> threads;
  std::atomic<int> created{0};
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      httplib::Client c("127.0.0.1", server->port());
      for (int i = 0; i < 10; ++i) {
        const auto r = c.Post("/sessions/" + id + "/faces", R"({"sides": 3})", "application/json");
        if (r && r->status == 201) ++created;
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(created.load(), 40);
  const auto r = client->Get("/sessions/" + id + "/report");
  EXPECT_EQ(json::parse(r->body)["counts"]["F"], 46);
}

TEST_F(ServerTest, LiveSocketStreamsSnapshotThenMutations) {
  const std::string id = create(json::object());
  Socket socket(server->port(), "/sessions/" + id + "/live");
  const json snap = socket.read();
  EXPECT_EQ(snap["event"], "snapshot");
  EXPECT_EQ(snap["version"], 0);

  client->Post("/sessions/" + id + "/faces", R"({"sides": 7})", "application/json");
  client->Post("/sessions/" + id + "/faces", R"({"sides": 6})", "application/json");
  client->Post("/sessions/" + id + "/glue", R"({"a": [0, 0], "b": [1, 0]})", "application/json");
  for (int v = 1; v <= 3; ++v) {
    const json e = socket.read();
    EXPECT_EQ(e["event"], "mutation");
    EXPECT_EQ(e["version"], v);
  }

  client->Post("/sessions/" + id + "/relax", R"({"iters": 2000, "async": true})", "application/json");
  for (;;) {
    const json e = socket.read();
    if (e["event"] == "relax") continue;
    EXPECT_EQ(e["event"], "relaxed");
    EXPECT_EQ(e["frame"]["nodes"].size(), 13u);  // 11 vertices, 2 centers
    break;
  }
  socket.ws.close(websocket::close_code::normal);
}

TEST_F(ServerTest, LiveSocketForUnknownSessionIsClosed) {
  Socket socket(server->port(), "/sessions/none/live");
  beast::flat_buffer buffer;
  beast::error_code ec;
  socket.ws.read(buffer, ec);
  EXPECT_EQ(ec, websocket::error::closed);
  EXPECT_EQ(socket.ws.reason().code, websocket::close_code::policy_error);
  EXPECT_EQ(std::string(socket.ws.reason().reason.c_str()), "UnknownSession");
}

}  // namespace
}  // namespace tilekit
