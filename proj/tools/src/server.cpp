#include "tilekit/server.hpp"

#include <boost/asio/dispatch.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/asio/signal_set.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include <deque>
#include <thread>
#include <vector>

namespace tilekit {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

// Slow readers lose intermediate frames rather than growing the queue.
constexpr std::size_t kMaxQueued = 64;

std::optional<std::string> live_session_id(std::string_view target) {
  target = target.substr(0, target.find('?'));
  constexpr std::string_view prefix = "/sessions/";
  constexpr std::string_view suffix = "/live";
  if (target.size() <= prefix.size() + suffix.size() || !target.starts_with(prefix) || !target.ends_with(suffix)) {
    return std::nullopt;
  }
  std::string_view id = target.substr(prefix.size(), target.size() - prefix.size() - suffix.size());
  if (id.find('/') != std::string_view::npos) return std::nullopt;
  return std::string(id);
}

class LiveConnection : public std::enable_shared_from_this<LiveConnection> {
 public:
  LiveConnection(tcp::socket&& socket, SessionService& service, std::string session)
      : ws_(std::move(socket)), service_(service), session_(std::move(session)) {}

  ~LiveConnection() {
    if (token_) service_.unsubscribe(session_, *token_);
  }

  void run(http::request<http::string_body> req) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(req, beast::bind_front_handler(&LiveConnection::on_accept, shared_from_this()));
  }

 private:
  void on_accept(beast::error_code ec) {
    if (ec) return;
    const auto first = service_.snapshot(session_);
    if (!first) {
      ws_.async_close(websocket::close_reason(websocket::close_code::policy_error, "UnknownSession"),
                      [self = shared_from_this()](beast::error_code) {});
      return;
    }
    std::weak_ptr<LiveConnection> weak = shared_from_this();
    auto executor = ws_.get_executor();
    token_ = service_.subscribe(session_, [weak, executor](const std::string& doc) {
      net::post(executor, [weak, doc] {
        if (auto self = weak.lock()) self->send(doc);
      });
    });
    send(*first);
    do_read();
  }

  // Incoming messages are ignored; reading keeps the connection alive and notices closes.
  void do_read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return;
      self->buffer_.consume(self->buffer_.size());
      self->do_read();
    });
  }

  void send(std::string doc) {
    if (queue_.size() >= kMaxQueued) queue_.erase(queue_.begin() + 1);
    queue_.push_back(std::move(doc));
    if (queue_.size() == 1) do_write();
  }

  void do_write() {
    ws_.text(true);
    ws_.async_write(net::buffer(queue_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return;
      self->queue_.pop_front();
      if (!self->queue_.empty()) self->do_write();
    });
  }

  websocket::stream<beast::tcp_stream> ws_;
  SessionService& service_;
  std::string session_;
  std::optional<std::size_t> token_;
  beast::flat_buffer buffer_;
  std::deque<std::string> queue_;
};

class HttpConnection : public std::enable_shared_from_this<HttpConnection> {
 public:
  HttpConnection(tcp::socket&& socket, SessionService& service) : stream_(std::move(socket)), service_(service) {}

  void run() {
    net::dispatch(stream_.get_executor(), beast::bind_front_handler(&HttpConnection::do_read, shared_from_this()));
  }

 private:
  void do_read() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(60));
    http::async_read(stream_, buffer_, req_, beast::bind_front_handler(&HttpConnection::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec == http::error::end_of_stream) {
      stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
      return;
    }
    if (ec) return;

    if (websocket::is_upgrade(req_)) {
      if (auto id = live_session_id(std::string_view(req_.target().data(), req_.target().size()))) {
        stream_.expires_never();
        std::make_shared<LiveConnection>(stream_.release_socket(), service_, std::move(*id))->run(std::move(req_));
        return;
      }
    }

    const Response r = service_.handle(std::string_view(req_.method_string().data(), req_.method_string().size()),
                                       std::string_view(req_.target().data(), req_.target().size()), req_.body());
    auto res = std::make_shared<http::response<http::string_body>>(static_cast<http::status>(r.status), req_.version());
    res->set(http::field::server, "tilekit");
    res->set(http::field::content_type, r.content_type);
    res->keep_alive(req_.keep_alive());
    res->body() = r.body;
    res->prepare_payload();
    http::async_write(stream_, *res, [self = shared_from_this(), res](beast::error_code ec, std::size_t) {
      if (ec) return;
      if (!res->keep_alive()) {
        self->stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
        return;
      }
      self->do_read();
    });
  }

  beast::tcp_stream stream_;
  SessionService& service_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
};

}  // namespace

struct Server::Impl {
  SessionService& service;
  net::io_context ioc;
  tcp::acceptor acceptor;
  unsigned threads;
  std::vector<std::thread> pool;
  std::optional<net::signal_set> signals;

  Impl(SessionService& s, const std::string& address, unsigned short port, unsigned n)
      : service(s), ioc(static_cast<int>(n)), acceptor(net::make_strand(ioc)), threads(n) {
    const tcp::endpoint endpoint(net::ip::make_address(address), port);
    acceptor.open(endpoint.protocol());
    acceptor.set_option(net::socket_base::reuse_address(true));
    acceptor.bind(endpoint);
    acceptor.listen(net::socket_base::max_listen_connections);
  }

  void do_accept() {
    acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
      if (ec) {
        if (ec == net::error::operation_aborted) return;
      } else {
        std::make_shared<HttpConnection>(std::move(socket), service)->run();
      }
      do_accept();
    });
  }
};

Server::Server(SessionService& service, const std::string& address, unsigned short port, unsigned threads)
    : impl_(std::make_unique<Impl>(service, address, port, std::max(1u, threads))) {}

Server::~Server() {
  stop();
  wait();
}

unsigned short Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::start() {
  impl_->do_accept();
  for (unsigned i = 0; i < impl_->threads; ++i) impl_->pool.emplace_back([this] { impl_->ioc.run(); });
}

void Server::wait() {
  for (auto& t : impl_->pool) {
    if (t.joinable()) t.join();
  }
  impl_->pool.clear();
}

void Server::stop() { impl_->ioc.stop(); }

void Server::stop_on_signals() {
  impl_->signals.emplace(impl_->ioc, SIGINT, SIGTERM);
  impl_->signals->async_wait([this](beast::error_code, int) { stop(); });
}

}  // namespace tilekit
