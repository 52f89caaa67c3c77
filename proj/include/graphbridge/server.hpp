#pragma once

#include <filesystem>
#include <memory>
#include <string>

namespace graphbridge {

inline constexpr unsigned short kDefaultPort = 7341;

/// GRAPHBRIDGE_PORT when set to a valid port number, else kDefaultPort.
unsigned short port_from_environment();

struct ServerOptions {
  std::string address = "0.0.0.0";
  unsigned short port = kDefaultPort;  // 0 picks an ephemeral port
  std::filesystem::path static_dir;    // served for plain HTTP GET; empty disables
  std::filesystem::path data_dir = ".";  // base for loadDataset paths
  bool stop_on_signal = false;           // SIGINT/SIGTERM end run()
};

/// WebSocket endpoint speaking the session protocol, one Session per
/// connection, one JSON object per text message. Plain HTTP GET requests on
/// the same port are answered from `static_dir`.
class Server {
 public:
  explicit Server(ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Bound port (useful when constructed with port 0).
  unsigned short port() const;

  /// Serves until stop() is called.
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace graphbridge
