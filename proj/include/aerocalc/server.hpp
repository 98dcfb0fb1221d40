// Local HTTP service over the engine.
//
//   POST /v1/<operation>   body: {"inputs": {...}, "units": "metric"}  ->  engine response
//   GET  /v1/catalogue     operations, input schemas and bundled data
//
// Status codes: 200 ok, 400 validation or malformed request, 404 unknown
// operation, 500 internal error. The body is always the engine's JSON.
#pragma once

#include <memory>
#include <string>

#include "aerocalc/engine.hpp"

namespace aerocalc::server {

bool is_loopback(const std::string& host);

/// HTTP status for an engine response.
int status_for(const engine::json& response);

class Server {
public:
  explicit Server(const engine::Engine& engine);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds without serving yet. Port 0 picks a free port; the bound port is
  /// returned. Non-loopback hosts need allow_remote.
  int bind(const std::string& host, int port, bool allow_remote = false);

  /// Serves until stop(); blocks the calling thread.
  void run();
  /// Serves on a background thread and returns once ready.
  void start();
  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace aerocalc::server
