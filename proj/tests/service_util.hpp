#pragma once

// Scratch data directories and an in-thread HTTP server for service tests.

#include <filesystem>
#include <random>
#include <string>
#include <thread>

#include "hexagons/http_api.hpp"
#include "hexagons/service.hpp"

namespace testutil {

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("hexagons-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Serves `svc` on 127.0.0.1 at an ephemeral port until destroyed.
class RunningServer {
 public:
  explicit RunningServer(hexagons::service::GameService& svc) : server_(svc) {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~RunningServer() {
    server_.stop();
    thread_.join();
  }

  int port() const { return port_; }
  std::string base() const { return "http://127.0.0.1:" + std::to_string(port_); }

 private:
  hexagons::http::Server server_;
  int port_ = -1;
  std::thread thread_;
};

inline std::string fixture(const std::string& name) {
  return std::string(HEXAGONS_FIXTURES_DIR) + "/" + name;
}

}  // namespace testutil
