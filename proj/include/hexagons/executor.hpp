#pragma once

#include <chrono>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "hexagons/board.hpp"
#include "hexagons/naive.hpp"

// Machine executor wire protocol. A request carries the board the executor
// starts from and the instruction to carry out; the reply lists the paint
// actions. Messages are single JSON objects, sent either one per HTTP POST
// or one per line over a stream.
namespace hexagons::executor {

class ProtocolError : public Error {
 public:
  using Error::Error;
};

struct Request {
  Board board;
  std::string instruction;
  std::optional<std::string> prev_instruction;
  // Optional context; lets stateful executors tell procedures apart.
  std::string procedure_id;
  int step = 0;

  friend bool operator==(const Request&, const Request&) = default;
};

struct Response {
  ActionSet actions;

  friend bool operator==(const Response&, const Response&) = default;
};

// The board travels as the 10-line letter grid; an array of 10 row strings
// is accepted too. Parsing throws ProtocolError.
std::string request_to_json(const Request& r);
Request request_from_json(std::string_view text);
std::string response_to_json(const Response& r);
Response response_from_json(std::string_view text);
std::string error_to_json(std::string_view message);

class Client {
 public:
  virtual ~Client() = default;
  // Throws ProtocolError on a malformed reply or a transport failure.
  virtual Response execute(const Request& request) = 0;
};

// In-process naive baseline; the color carryover is kept per procedure and
// restarts when step 1 (or a new procedure) arrives.
class NaiveClient : public Client {
 public:
  Response execute(const Request& request) override;

 private:
  std::mutex mu_;
  std::map<std::string, naive::ParserState> states_;
};

// POSTs each request to `url` ("http://host:port/path").
class HttpClient : public Client {
 public:
  explicit HttpClient(std::string url,
                      std::chrono::milliseconds timeout = std::chrono::seconds(10));
  ~HttpClient() override;
  Response execute(const Request& request) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Writes one request line, reads one response line.
class StreamClient : public Client {
 public:
  StreamClient(std::istream& from_executor, std::ostream& to_executor)
      : in_(from_executor), out_(to_executor) {}
  Response execute(const Request& request) override;

 private:
  std::istream& in_;
  std::ostream& out_;
};

// Answers newline-delimited requests until end of input. Bad requests get
// an {"error": ...} line and the loop continues. Returns requests served.
std::size_t serve_stream(Client& impl, std::istream& in, std::ostream& out);

}  // namespace hexagons::executor
