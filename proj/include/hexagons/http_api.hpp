#pragma once

#include <memory>
#include <string>

#include "hexagons/service.hpp"

// JSON over HTTP in front of a GameService. Routes live under /api; see
// docs/api.md for the schemas.
namespace hexagons::http {

class Server {
 public:
  explicit Server(service::GameService& service);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Blocks until stop(). Returns false if the address could not be bound.
  bool listen(const std::string& host, int port);
  // Binds an ephemeral port and returns it (negative on failure).
  int bind_to_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace hexagons::http
