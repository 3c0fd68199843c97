#include "hexagons/executor.hpp"

#include <istream>
#include <ostream>

#include "httplib.h"
#include "json_io.hpp"

namespace hexagons::executor {

using jsonio::json;

namespace {

Board board_field(const json& j) {
  const json& b = jsonio::require(j, "board");
  if (b.is_string()) return parse_letter_grid(b.get<std::string>());
  return jsonio::board_from_json(b);
}

json parse_object(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ProtocolError("message is not a JSON object");
  return j;
}

}  // namespace

std::string request_to_json(const Request& r) {
  json j{{"board", to_letter_grid(r.board)}, {"instruction", r.instruction}};
  if (r.prev_instruction) j["prev_instruction"] = *r.prev_instruction;
  if (!r.procedure_id.empty()) j["procedure_id"] = r.procedure_id;
  if (r.step > 0) j["step"] = r.step;
  return j.dump();
}

Request request_from_json(std::string_view text) {
  const json j = parse_object(text);
  Request r;
  try {
    r.board = board_field(j);
    r.instruction = jsonio::require_string(j, "instruction");
    if (auto it = j.find("prev_instruction"); it != j.end() && !it->is_null()) {
      if (!it->is_string()) throw ProtocolError("prev_instruction must be a string");
      r.prev_instruction = it->get<std::string>();
    }
    if (auto it = j.find("procedure_id"); it != j.end() && !it->is_null()) {
      if (!it->is_string()) throw ProtocolError("procedure_id must be a string");
      r.procedure_id = it->get<std::string>();
    }
    if (j.contains("step")) r.step = jsonio::require_int(j, "step");
  } catch (const ProtocolError&) {
    throw;
  } catch (const Error& e) {
    throw ProtocolError(std::string("bad request: ") + e.what());
  }
  return r;
}

std::string response_to_json(const Response& r) {
  return json{{"actions", jsonio::actions_to_json(r.actions)}}.dump();
}

Response response_from_json(std::string_view text) {
  const json j = parse_object(text);
  if (auto it = j.find("error"); it != j.end())
    throw ProtocolError("executor reported: " + (it->is_string() ? it->get<std::string>() : it->dump()));
  try {
    return {jsonio::actions_from_json(jsonio::require(j, "actions"))};
  } catch (const Error& e) {
    throw ProtocolError(std::string("bad response: ") + e.what());
  }
}

std::string error_to_json(std::string_view message) {
  return json{{"error", std::string(message)}}.dump();
}

Response NaiveClient::execute(const Request& request) {
  std::lock_guard lock(mu_);
  if (request.step <= 1) states_.erase(request.procedure_id);
  naive::ParserState& state = states_[request.procedure_id];
  const auto result = naive::match_patterns(naive::normalize(request.instruction), state);
  Response out;
  for (const auto& c : result.commands) out.actions.assign(c.action().position, c.color);
  return out;
}

struct HttpClient::Impl {
  std::string base;
  std::string path;
  std::chrono::milliseconds timeout;
};

HttpClient::HttpClient(std::string url, std::chrono::milliseconds timeout)
    : impl_(std::make_unique<Impl>()) {
  const std::string scheme = "http://";
  if (url.rfind(scheme, 0) != 0) throw UsageError("executor url must start with http://: " + url);
  const auto slash = url.find('/', scheme.size());
  impl_->base = url.substr(0, slash);
  impl_->path = slash == std::string::npos ? "/" : url.substr(slash);
  impl_->timeout = timeout;
}

HttpClient::~HttpClient() = default;

Response HttpClient::execute(const Request& request) {
  httplib::Client cli(impl_->base);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(impl_->timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(impl_->timeout - secs);
  cli.set_connection_timeout(secs.count(), usecs.count());
  cli.set_read_timeout(secs.count(), usecs.count());
  cli.set_write_timeout(secs.count(), usecs.count());
  auto res = cli.Post(impl_->path, request_to_json(request), "application/json");
  if (!res) throw ProtocolError("executor unreachable: " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw ProtocolError("executor answered HTTP " + std::to_string(res->status));
  return response_from_json(res->body);
}

Response StreamClient::execute(const Request& request) {
  out_ << request_to_json(request) << '\n';
  out_.flush();
  if (!out_) throw ProtocolError("executor stream closed for writing");
  std::string line;
  if (!std::getline(in_, line)) throw ProtocolError("executor stream ended");
  return response_from_json(line);
}

std::size_t serve_stream(Client& impl, std::istream& in, std::ostream& out) {
  std::size_t served = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      out << response_to_json(impl.execute(request_from_json(line))) << '\n';
      ++served;
    } catch (const Error& e) {
      out << error_to_json(e.what()) << '\n';
    }
    out.flush();
  }
  return served;
}

}  // namespace hexagons::executor
