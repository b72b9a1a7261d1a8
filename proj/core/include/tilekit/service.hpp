#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace tilekit {

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

struct ServiceOptions {
  std::chrono::seconds ttl{3600};
  std::size_t undo_depth = 64;
  // Minimum spacing of live frames pushed while relaxing.
  std::chrono::milliseconds frame_interval{34};
  // Drives session expiry only. Tests substitute a fake.
  std::function<std::chrono::steady_clock::time_point()> clock;
};

struct Session;

// Transport-independent session API. handle() is safe to call from many
// threads at once; requests against one session are serialized.
//
//   POST   /sessions                 {preset?, spec?}
//   DELETE /sessions/{id}
//   POST   /sessions/{id}/faces      {sides, edge_length?, name?, expected_version?}
//   POST   /sessions/{id}/glue       {a: [face, slot], b: [face, slot], flip?, expected_version?}
//   POST   /sessions/{id}/undo
//   GET    /sessions/{id}/report     ?format=json|text
//   GET    /sessions/{id}/spec
//   POST   /sessions/{id}/relax      {iters?, tol?, seed?, async?}
//   DELETE /sessions/{id}/relax
//   GET    /sessions/{id}/embedding
class SessionService {
 public:
  // Receives {event, version, report, frame, relax?} documents. Called from
  // request threads and from relax workers; must not call back into the service.
  using Listener = std::function<void(const std::string& document)>;

  explicit SessionService(ServiceOptions options = {});
  ~SessionService();
  SessionService(const SessionService&) = delete;
  SessionService& operator=(const SessionService&) = delete;

  Response handle(std::string_view method, std::string_view target, std::string_view body = {});

  // nullopt when the session does not exist.
  std::optional<std::size_t> subscribe(const std::string& session, Listener listener);
  void unsubscribe(const std::string& session, std::size_t token);
  // The current state as a "snapshot" event; nullopt for an unknown session.
  std::optional<std::string> snapshot(const std::string& session);

  // Blocks until the session has no relaxation running.
  void wait_idle(const std::string& session);

  std::size_t evict_expired();
  std::size_t session_count() const;

 private:
  std::shared_ptr<Session> find(const std::string& id);
  std::chrono::steady_clock::time_point now() const;

  ServiceOptions options_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace tilekit
