#include "aerocalc/server.hpp"

#include <stdexcept>
#include <thread>

#include "httplib.h"

#include "aerocalc/error.hpp"

namespace aerocalc::server {

using engine::json;

bool is_loopback(const std::string& host) {
  return host == "127.0.0.1" || host == "localhost" || host == "::1" || host.rfind("127.", 0) == 0;
}

int status_for(const json& response) {
  if (response.value("ok", false)) return 200;
  const std::string code = response["error"].value("code", "");
  if (code == engine::error_code::kUnknownOperation) return 404;
  if (code == engine::error_code::kInternal) return 500;
  return 400;
}

struct Server::Impl {
  const engine::Engine& engine;
  httplib::Server http;
  std::thread thread;

  explicit Impl(const engine::Engine& e) : engine(e) {
    http.set_payload_max_length(1 << 20);
    http.Get("/v1/catalogue", [this](const httplib::Request&, httplib::Response& res) {
      res.set_content(engine::serialise(engine.catalogue()), "application/json");
    });
    http.Post(R"(/v1/([a-z0-9-]+))", [this](const httplib::Request& req, httplib::Response& res) {
      const std::string op = req.matches[1];
      json response;
      json body = json::parse(req.body.empty() ? "{}" : req.body, nullptr, false);
      if (body.is_discarded() || !body.is_object()) {
        response = {{"operation", op},
                    {"ok", false},
                    {"error", {{"code", engine::error_code::kMalformed}, {"field", ""}, {"message", "body is not a JSON object"}}}};
      } else if (body.contains("operation") && body["operation"] != op) {
        response = {{"operation", op},
                    {"ok", false},
                    {"error", {{"code", engine::error_code::kMalformed}, {"field", "operation"},
                               {"message", "operation in the body does not match the path"}}}};
      } else {
        body["operation"] = op;
        response = engine.handle(body);
      }
      res.status = status_for(response);
      res.set_content(engine::serialise(response), "application/json");
    });
    http.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
      if (!res.body.empty()) return;
      const json body{{"ok", false},
                      {"error", {{"code", res.status == 404 ? engine::error_code::kUnknownOperation
                                                             : engine::error_code::kMalformed},
                                 {"field", ""},
                                 {"message", "no endpoint for " + req.method + " " + req.path}}}};
      res.set_content(engine::serialise(body), "application/json");
    });
  }
};

Server::Server(const engine::Engine& engine) : impl_(std::make_unique<Impl>(engine)) {}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port, bool allow_remote) {
  if (!allow_remote && !is_loopback(host)) {
    throw ValidationError("bind", "refusing to listen on non-loopback address " + host + " without --allow-remote");
  }
  if (port == 0) {
    const int bound = impl_->http.bind_to_any_port(host);
    if (bound <= 0) throw std::runtime_error("cannot bind " + host);
    return bound;
  }
  if (!impl_->http.bind_to_port(host, port)) {
    throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void Server::run() { impl_->http.listen_after_bind(); }

void Server::start() {
  impl_->thread = std::thread([this] { impl_->http.listen_after_bind(); });
  impl_->http.wait_until_ready();
}

void Server::stop() {
  if (!impl_) return;
  impl_->http.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace aerocalc::server
