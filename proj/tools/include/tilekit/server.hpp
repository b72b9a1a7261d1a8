#pragma once

#include "tilekit/service.hpp"

#include <memory>
#include <string>

namespace tilekit {

// HTTP + WebSocket front end for SessionService. REST routes are forwarded to
// SessionService::handle; a WebSocket upgrade on /sessions/{id}/live streams
// that session's events, starting with a snapshot.
class Server {
 public:
  // Port 0 picks a free port; see port().
  Server(SessionService& service, const std::string& address, unsigned short port, unsigned threads = 4);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  unsigned short port() const;

  void start();
  // Blocks until stop() or, after stop_on_signals(), SIGINT/SIGTERM.
  void wait();
  void stop();
  void stop_on_signals();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tilekit
