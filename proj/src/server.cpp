#include "graphbridge/server.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include <boost/asio.hpp>
#include <boost/beast.hpp>

#include "graphbridge/session.hpp"

namespace graphbridge {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

unsigned short port_from_environment() {
  if (const char* env = std::getenv("GRAPHBRIDGE_PORT")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 65536) return static_cast<unsigned short>(v);
  }
  return kDefaultPort;
}

namespace {

std::string mime_type(const std::filesystem::path& p) {
  const std::string ext = p.extension().string();
  if (ext == ".html") return "text/html";
  if (ext == ".js" || ext == ".mjs") return "application/javascript";
  if (ext == ".css") return "text/css";
  if (ext == ".json") return "application/json";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  return "application/octet-stream";
}

http::response<http::string_body> static_response(const http::request<http::string_body>& req,
                                                  const std::filesystem::path& root) {
  auto reply = [&](http::status status, std::string body, const std::string& type) {
    http::response<http::string_body> res{status, req.version()};
    res.set(http::field::content_type, type);
    res.keep_alive(false);
    res.body() = std::move(body);
    res.prepare_payload();
    return res;
  };
  if (req.method() != http::verb::get) return reply(http::status::bad_request, "GET only\n", "text/plain");
  std::string target(req.target());
  if (auto q = target.find('?'); q != std::string::npos) target.resize(q);
  if (root.empty() || target.empty() || target[0] != '/' || target.find("..") != std::string::npos)
    return reply(http::status::not_found, "not found\n", "text/plain");
  std::filesystem::path file = root / target.substr(1);
  if (target == "/") file = root / "index.html";
  std::error_code ec;
  if (!std::filesystem::is_regular_file(file, ec)) return reply(http::status::not_found, "not found\n", "text/plain");
  std::ifstream in(file, std::ios::binary);
  if (!in) return reply(http::status::not_found, "not found\n", "text/plain");
  std::ostringstream body;
  body << in.rdbuf();
  return reply(http::status::ok, body.str(), mime_type(file));
}

void serve_connection(tcp::socket socket, const ServerOptions& options) {
  beast::error_code ec;
  beast::flat_buffer buffer;
  http::request<http::string_body> req;
  http::read(socket, buffer, req, ec);
  if (ec) return;

  if (!websocket::is_upgrade(req)) {
    http::write(socket, static_response(req, options.static_dir), ec);
    socket.shutdown(tcp::socket::shutdown_send, ec);
    return;
  }

  websocket::stream<tcp::socket> ws(std::move(socket));
  ws.accept(req, ec);
  if (ec) return;
  ws.text(true);
  Session session(SessionConfig{.base_dir = options.data_dir});
  for (;;) {
    beast::flat_buffer msg;
    ws.read(msg, ec);
    if (ec) return;
    for (const Event& ev : session.handle_text(beast::buffers_to_string(msg.data()))) {
      ws.write(asio::buffer(ev.json), ec);
      if (ec) return;
    }
  }
}

}  // namespace

struct Server::Impl {
  ServerOptions options;
  asio::io_context io;
  tcp::acceptor acceptor{io};
  std::mutex mutex;
  std::vector<std::thread> connections;

  void accept() {
    acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
      if (ec) return;
      {
        std::lock_guard lock(mutex);
        connections.emplace_back(serve_connection, std::move(socket), std::cref(options));
      }
      accept();
    });
  }
};

Server::Server(ServerOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
  const tcp::endpoint endpoint{asio::ip::make_address(impl_->options.address), impl_->options.port};
  impl_->acceptor.open(endpoint.protocol());
  impl_->acceptor.set_option(asio::socket_base::reuse_address(true));
  impl_->acceptor.bind(endpoint);
  impl_->acceptor.listen();
}

Server::~Server() {
  stop();
  std::lock_guard lock(impl_->mutex);
  for (auto& t : impl_->connections)
    if (t.joinable()) t.join();
}

unsigned short Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::run() {
  asio::signal_set signals(impl_->io);
  if (impl_->options.stop_on_signal) {
    signals.add(SIGINT);
    signals.add(SIGTERM);
    signals.async_wait([this](beast::error_code ec, int) {
      if (!ec) stop();
    });
  }
  impl_->accept();
  impl_->io.run();
}

void Server::stop() {
  asio::post(impl_->io, [this] {
    beast::error_code ec;
    impl_->acceptor.close(ec);
  });
  impl_->io.stop();
}

}  // namespace graphbridge
