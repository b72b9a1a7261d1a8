#include "tilekit/service.hpp"

#include "tilekit/embedding.hpp"
#include "tilekit/errors.hpp"
#include "tilekit/generators.hpp"
#include "tilekit/report.hpp"
#include "tilekit/spec_format.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <atomic>
#include <condition_variable>
#include <deque>
#include <random>
#include <thread>
#include <vector>

namespace tilekit {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Session {
  std::string id;
  std::mutex mutex;
  std::condition_variable idle;

  Surface surface;
  std::deque<Surface> undo;
  std::uint64_t version = 0;
  std::optional<std::string> report_cache;

  std::optional<EmbeddedMesh> mesh;
  std::optional<RelaxReport> relax;
  std::optional<Error> relax_error;
  std::string frame;  // latest frame, possibly mid-relaxation
  bool relaxing = false;
  std::atomic<bool> cancel{false};
  std::thread worker;

  Clock::time_point last_used;
  std::map<std::size_t, SessionService::Listener> listeners;
  std::size_t next_token = 0;
};

namespace {

class RequestError : public Error {
 public:
  RequestError(const std::string& message) : Error(ErrorCode::BadRequest, message) {}
};

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSession: return 404;
    case ErrorCode::ConflictingMutation: return 409;
    case ErrorCode::BadRequest: return 400;
    case ErrorCode::Internal: return 500;
    default: return 422;
  }
}

Response error_response(const Error& e) {
  json err{{"code", std::string(e.code_name())}, {"message", e.what()}};
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    err["line"] = pe->line();
    err["column"] = pe->column();
  }
  return {http_status(e.code()), "application/json", json{{"error", err}}.dump() + "\n"};
}

Response ok(const json& doc, int status = 200) { return {status, "application/json", doc.dump() + "\n"}; }

json parse_body(std::string_view body) {
  if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) return json::object();
  json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw RequestError("request body must be a JSON object");
  return doc;
}

template <typename T>
std::optional<T> field(const json& doc, const char* name) {
  const auto it = doc.find(name);
  if (it == doc.end() || it->is_null()) return std::nullopt;
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (!it->is_boolean()) throw RequestError("");
    } else if constexpr (std::is_integral_v<T>) {
      if (!it->is_number_integer()) throw RequestError("");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!it->is_number()) throw RequestError("");
    } else {
      if (!it->is_string()) throw RequestError("");
    }
    return it->get<T>();
  } catch (const std::exception&) {
    throw RequestError(fmt::format("field '{}' has the wrong type", name));
  }
}

SlotRef slot_field(const json& doc, const char* name) {
  const auto it = doc.find(name);
  if (it == doc.end() || !it->is_array() || it->size() != 2 || !(*it)[0].is_number_unsigned() ||
      !(*it)[1].is_number_unsigned()) {
    throw RequestError(fmt::format("field '{}' must be [face, slot]", name));
  }
  return SlotRef{FaceId{(*it)[0].get<std::uint32_t>()}, (*it)[1].get<std::uint32_t>()};
}

Rational length_field(const json& doc) {
  const auto it = doc.find("edge_length");
  if (it == doc.end() || it->is_null()) return Rational(1);
  if (it->is_number_integer()) return Rational(it->get<std::int64_t>());
  if (it->is_string()) {
    if (auto r = parse_rational(it->get<std::string>())) return *r;
  }
  throw RequestError("edge_length must be an integer or a rational string such as \"3/2\"");
}

struct Target {
  std::vector<std::string> parts;
  std::map<std::string, std::string> query;
};

Target split_target(std::string_view target) {
  Target t;
  const auto q = target.find('?');
  std::string_view path = target.substr(0, q);
  while (!path.empty()) {
    const auto slash = path.find('/');
    if (slash != 0) t.parts.emplace_back(path.substr(0, slash));
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash + 1);
  }
  if (q != std::string_view::npos) {
    std::string_view rest = target.substr(q + 1);
    while (!rest.empty()) {
      const auto amp = rest.find('&');
      const std::string_view kv = rest.substr(0, amp);
      const auto eq = kv.find('=');
      t.query[std::string(kv.substr(0, eq))] = eq == std::string_view::npos ? "" : std::string(kv.substr(eq + 1));
      if (amp == std::string_view::npos) break;
      rest.remove_prefix(amp + 1);
    }
  }
  return t;
}

std::string new_token() {
  static std::mutex m;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(m);
  return fmt::format("{:016x}{:016x}", rng(), rng());
}

// Caller holds the session mutex.
const std::string& report_json(Session& s) {
  if (!s.report_cache) s.report_cache = format_topology(s.surface, ReportFormat::Json);
  return *s.report_cache;
}

json relax_json(const RelaxReport& r) {
  return {{"iterations", r.iterations},
          {"energy", r.energy},
          {"max_residual", r.max_residual},
          {"gradient_norm", r.gradient_norm},
          {"converged", r.converged}};
}

// The frame shown for a surface nobody has relaxed yet.
std::string initial_frame(const Surface& s) {
  try {
    return format_frame(init_embedding(s, 0));
  } catch (const Error&) {
    return "null";
  }
}

std::string event_doc(std::string_view event, std::uint64_t version, const std::string& report,
                      const std::string& frame, const json& extra = nullptr) {
  json doc{{"event", event}, {"version", version}, {"report", json::parse(report)}, {"frame", json::parse(frame)}};
  if (!extra.is_null()) doc.update(extra);
  return doc.dump();
}

void broadcast(Session& s, std::unique_lock<std::mutex>& lock, const std::string& doc) {
  std::vector<SessionService::Listener> targets;
  for (const auto& [token, l] : s.listeners) targets.push_back(l);
  lock.unlock();
  for (const auto& l : targets) l(doc);
  lock.lock();
}

// Caller holds the lock. Pushes the new state after a successful mutation.
void after_mutation(Session& s, std::unique_lock<std::mutex>& lock) {
  ++s.version;
  s.report_cache.reset();
  s.mesh.reset();
  s.relax.reset();
  s.frame.clear();
  if (s.listeners.empty()) return;
  s.frame = initial_frame(s.surface);
  broadcast(s, lock, event_doc("mutation", s.version, report_json(s), s.frame));
}

void check_writable(const Session& s, const json& body) {
  if (s.relaxing) throw Error(ErrorCode::ConflictingMutation, "a relaxation is running on this session");
  if (const auto expected = field<std::uint64_t>(body, "expected_version"); expected && *expected != s.version) {
    throw Error(ErrorCode::ConflictingMutation,
                fmt::format("session is at version {}, request expected {}", s.version, *expected));
  }
}

void mutate(Session& s, std::unique_lock<std::mutex>& lock, std::size_t depth, const std::function<void(Surface&)>& op) {
  Surface next = s.surface;
  op(next);
  s.undo.push_back(std::move(s.surface));
  while (s.undo.size() > depth) s.undo.pop_front();
  s.surface = std::move(next);
  after_mutation(s, lock);
}

// Runs on a worker thread for async requests, inline otherwise. The mesh is
// owned by this call until it finishes, so readers see only published frames.
void relax_job(const std::shared_ptr<Session>& sp, EmbeddedMesh m, RelaxOptions ro, std::chrono::milliseconds interval) {
  Session& s = *sp;
  std::unique_lock lock(s.mutex);
  const std::uint64_t version = s.version;
  const std::string report = report_json(s);
  lock.unlock();

  auto last = Clock::now() - interval;
  ro.on_step = [&](int iteration, const EmbeddedMesh& mesh, double energy) {
    if (s.cancel.load()) return false;
    const auto t = Clock::now();
    if (t - last < interval) return true;
    last = t;
    std::string frame = format_frame(mesh);
    std::unique_lock l(s.mutex);
    s.frame = frame;
    if (!s.listeners.empty()) {
      broadcast(s, l, event_doc("relax", version, report, frame, {{"iteration", iteration}, {"energy", energy}}));
    }
    return true;
  };

  std::optional<RelaxReport> result;
  std::optional<Error> failure;
  try {
    result = relax(m, ro);
  } catch (const Error& e) {
    failure = e;
  } catch (const std::exception& e) {
    failure = Error(ErrorCode::Internal, e.what());
  }

  lock.lock();
  s.relax_error = failure;
  std::string doc;
  if (result) {
    s.frame = format_frame(m);
    s.mesh = std::move(m);
    s.relax = result;
    doc = event_doc("relaxed", version, report, s.frame, {{"relax", relax_json(*result)}});
  } else {
    doc = event_doc("error", version, report, s.frame.empty() ? "null" : s.frame,
                    {{"error", {{"code", std::string(failure->code_name())}, {"message", failure->what()}}}});
  }
  s.relaxing = false;
  if (!s.listeners.empty()) broadcast(s, lock, doc);
  s.idle.notify_all();
}

Response handle_session(SessionService&, const ServiceOptions& options, const std::shared_ptr<Session>& sp,
                        std::string_view method, const Target& t, std::string_view body) {
  Session& s = *sp;
  const std::string action = t.parts.size() > 2 ? t.parts[2] : "";
  if (t.parts.size() > 3) throw RequestError("unknown route");

  if (method == "GET" && action == "report") {
    std::lock_guard lock(s.mutex);
    const auto it = t.query.find("format");
    const auto format = report_format_from_name(it == t.query.end() ? "json" : it->second);
    if (!format) throw RequestError("format must be json or text");
    if (*format == ReportFormat::Text) return {200, "text/plain; charset=utf-8", format_topology(s.surface, *format)};
    return {200, "application/json", report_json(s)};
  }
  if (method == "GET" && action == "spec") {
    std::lock_guard lock(s.mutex);
    return {200, "application/yaml", write_spec(s.surface)};
  }
  if (method == "GET" && action == "embedding") {
    std::lock_guard lock(s.mutex);
    if (s.frame.empty()) s.frame = initial_frame(s.surface);
    json doc{{"version", s.version}, {"relaxing", s.relaxing}, {"frame", json::parse(s.frame)}};
    doc["relax"] = s.relax ? relax_json(*s.relax) : json(nullptr);
    return ok(doc);
  }

  if (method == "POST" && action == "faces") {
    const json req = parse_body(body);
    const auto sides = field<int>(req, "sides");
    if (!sides) throw RequestError("field 'sides' is required");
    const Rational length = length_field(req);
    const std::string name = field<std::string>(req, "name").value_or("");
    std::unique_lock lock(s.mutex);
    check_writable(s, req);
    FaceId id;
    mutate(s, lock, options.undo_depth, [&](Surface& next) { id = next.add_face(*sides, length, name); });
    return ok({{"face", id.value}, {"version", s.version}}, 201);
  }
  if (method == "POST" && action == "glue") {
    const json req = parse_body(body);
    const SlotRef a = slot_field(req, "a");
    const SlotRef b = slot_field(req, "b");
    const bool flip = field<bool>(req, "flip").value_or(false);
    std::unique_lock lock(s.mutex);
    check_writable(s, req);
    std::size_t index = 0;
    mutate(s, lock, options.undo_depth, [&](Surface& next) {
      next.glue(a, b, flip);
      index = next.gluing_count() - 1;
    });
    return ok({{"gluing", index}, {"version", s.version}}, 201);
  }
  if (method == "POST" && action == "undo") {
    const json req = parse_body(body);
    std::unique_lock lock(s.mutex);
    check_writable(s, req);
    if (s.undo.empty()) throw Error(ErrorCode::NothingToUndo, "undo history is empty");
    s.surface = std::move(s.undo.back());
    s.undo.pop_back();
    after_mutation(s, lock);
    return ok({{"version", s.version}, {"undo_depth", s.undo.size()}});
  }
  if (method == "POST" && action == "relax") {
    const json req = parse_body(body);
    RelaxOptions ro;
    ro.max_iters = field<int>(req, "iters").value_or(ro.max_iters);
    ro.tol = field<double>(req, "tol").value_or(ro.tol);
    const auto seed = field<std::uint64_t>(req, "seed").value_or(0);
    const bool async = field<bool>(req, "async").value_or(false);
    if (ro.max_iters < 0 || !(ro.tol >= 0)) throw RequestError("iters and tol must be non-negative");

    std::unique_lock lock(s.mutex);
    if (s.relaxing) throw Error(ErrorCode::ConflictingMutation, "a relaxation is already running");
    EmbeddedMesh m = init_embedding(s.surface, seed);
    s.relaxing = true;
    s.cancel = false;
    if (s.worker.joinable()) {
      // The previous worker has already published; only its tail is left.
      lock.unlock();
      s.worker.join();
      lock.lock();
    }
    if (async) {
      s.worker = std::thread(relax_job, sp, std::move(m), ro, options.frame_interval);
      return ok({{"started", true}, {"version", s.version}}, 202);
    }
    lock.unlock();
    relax_job(sp, std::move(m), ro, options.frame_interval);
    lock.lock();
    if (s.relax_error) throw *s.relax_error;
    return ok({{"relax", relax_json(*s.relax)}, {"version", s.version}});
  }
  if (method == "DELETE" && action == "relax") {
    std::unique_lock lock(s.mutex);
    const bool running = s.relaxing;
    s.cancel = true;
    s.idle.wait(lock, [&] { return !s.relaxing; });
    return ok({{"stopped", running}});
  }
  throw RequestError(fmt::format("no route for {} {}", method, action.empty() ? "/sessions/{id}" : action));
}

void stop_worker(Session& s) {
  s.cancel = true;
  if (s.worker.joinable()) s.worker.join();
}

}  // namespace

SessionService::SessionService(ServiceOptions options) : options_(std::move(options)) {}

SessionService::~SessionService() {
  std::map<std::string, std::shared_ptr<Session>> sessions;
  {
    std::lock_guard lock(mutex_);
    sessions.swap(sessions_);
  }
  for (auto& [id, s] : sessions) stop_worker(*s);
}

Clock::time_point SessionService::now() const { return options_.clock ? options_.clock() : Clock::now(); }

std::shared_ptr<Session> SessionService::find(const std::string& id) {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, fmt::format("no session '{}'", id));
  it->second->last_used = now();
  return it->second;
}

Response SessionService::handle(std::string_view method, std::string_view target, std::string_view body) {
  evict_expired();
  try {
    const Target t = split_target(target);
    if (t.parts.empty() || t.parts[0] != "sessions") {
      return error_response(Error(ErrorCode::BadRequest, fmt::format("no route for {}", target)));
    }
    if (t.parts.size() == 1) {
      if (method != "POST") throw RequestError("only POST is allowed on /sessions");
      const json req = parse_body(body);
      auto s = std::make_shared<Session>();
      if (const auto p = field<std::string>(req, "preset")) s->surface = preset(*p);
      if (const auto spec = field<std::string>(req, "spec")) s->surface = parse_spec(*spec);
      s->id = new_token();
      s->last_used = now();
      std::lock_guard lock(mutex_);
      sessions_[s->id] = s;
      return ok({{"id", s->id}, {"version", s->version}}, 201);
    }
    if (t.parts.size() == 2 && method == "DELETE") {
      std::shared_ptr<Session> s = find(t.parts[1]);
      {
        std::lock_guard lock(mutex_);
        sessions_.erase(t.parts[1]);
      }
      stop_worker(*s);
      return {204, "application/json", ""};
    }
    return handle_session(*this, options_, find(t.parts[1]), method, t, body);
  } catch (const Error& e) {
    return error_response(e);
  } catch (const std::exception& e) {
    return error_response(Error(ErrorCode::Internal, e.what()));
  }
}

std::optional<std::size_t> SessionService::subscribe(const std::string& session, Listener listener) {
  std::shared_ptr<Session> s;
  try {
    s = find(session);
  } catch (const Error&) {
    return std::nullopt;
  }
  std::lock_guard lock(s->mutex);
  const std::size_t token = s->next_token++;
  s->listeners[token] = std::move(listener);
  return token;
}

void SessionService::unsubscribe(const std::string& session, std::size_t token) {
  std::shared_ptr<Session> s;
  {
    std::lock_guard lock(mutex_);
    const auto it = sessions_.find(session);
    if (it == sessions_.end()) return;
    s = it->second;
  }
  std::lock_guard lock(s->mutex);
  s->listeners.erase(token);
}

std::optional<std::string> SessionService::snapshot(const std::string& session) {
  std::shared_ptr<Session> s;
  try {
    s = find(session);
  } catch (const Error&) {
    return std::nullopt;
  }
  std::lock_guard lock(s->mutex);
  if (s->frame.empty()) s->frame = initial_frame(s->surface);
  return event_doc("snapshot", s->version, report_json(*s), s->frame,
                   {{"relax", s->relax ? relax_json(*s->relax) : json(nullptr)}});
}

void SessionService::wait_idle(const std::string& session) {
  std::shared_ptr<Session> s;
  {
    std::lock_guard lock(mutex_);
    const auto it = sessions_.find(session);
    if (it == sessions_.end()) return;
    s = it->second;
  }
  std::unique_lock lock(s->mutex);
  s->idle.wait(lock, [&] { return !s->relaxing; });
}

std::size_t SessionService::evict_expired() {
  std::vector<std::shared_ptr<Session>> expired;
  {
    std::lock_guard lock(mutex_);
    const auto t = now();
    for (auto it = sessions_.begin(); it != sessions_.end();) {
      Session& s = *it->second;
      bool busy;
      {
        std::lock_guard sl(s.mutex);
        busy = s.relaxing;
      }
      if (!busy && t - s.last_used > options_.ttl) {
        expired.push_back(it->second);
        it = sessions_.erase(it);
      } else {
        ++it;
      }
    }
  }
  for (auto& s : expired) stop_worker(*s);
  return expired.size();
}

std::size_t SessionService::session_count() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

}  // namespace tilekit
