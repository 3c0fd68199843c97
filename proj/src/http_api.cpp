#include "hexagons/http_api.hpp"

#include "httplib.h"
#include "json_io.hpp"

namespace hexagons::http {

using jsonio::json;

namespace {

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  json j = json::parse(req.body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw UsageError("request body must be a JSON object");
  return j;
}

void send(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message,
                json extra = json::object()) {
  extra["error"] = message;
  send(res, extra, status);
}

Board board_value(const json& j) {
  if (j.is_string()) return parse_letter_grid(j.get<std::string>());
  return jsonio::board_from_json(j);
}

json image_json(const service::ImageTask& t) {
  return {{"image_id", t.image_id},
          {"category", std::string(service::category_name(t.category))},
          {"target_board", jsonio::board_to_json(t.target)}};
}

json steps_json(const std::vector<DrawingStep>& steps) {
  json out = json::array();
  for (const auto& s : steps)
    out.push_back({{"index", s.index},
                   {"instruction", s.instruction},
                   {"actions", jsonio::actions_to_json(s.actions)},
                   {"board_after", jsonio::board_to_json(s.board_after)}});
  return out;
}

json description_json(const service::DescriptionView& v) {
  json j{{"session_id", v.session_id},
         {"image_id", v.image_id},
         {"status", std::string(service::status_name(v.status))},
         {"steps", steps_json(v.steps)},
         {"board", jsonio::board_to_json(v.board)}};
  if (!v.procedure_id.empty()) j["procedure_id"] = v.procedure_id;
  return j;
}

json actions_list(const std::vector<ActionSet>& steps) {
  json out = json::array();
  for (const auto& s : steps) out.push_back(jsonio::actions_to_json(s));
  return out;
}

std::vector<ActionSet> alignments_value(const json& j) {
  if (!j.is_array()) throw UsageError("alignments must be an array of action lists");
  std::vector<ActionSet> out;
  for (const auto& a : j) out.push_back(jsonio::actions_from_json(a));
  return out;
}

// Maps library errors onto status codes.
template <class F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const service::NotFoundError& e) {
      send_error(res, 404, e.what());
    } catch (const service::MismatchError& e) {
      send_error(res, 409, e.what(), {{"diff", jsonio::actions_to_json(e.diff())}});
    } catch (const service::SessionStateError& e) {
      send_error(res, 409, e.what());
    } catch (const Error& e) {
      send_error(res, 400, e.what());
    } catch (const json::exception& e) {
      send_error(res, 400, std::string("bad field: ") + e.what());
    }
  };
}

}  // namespace

struct Server::Impl {
  explicit Impl(service::GameService& s) : svc(s) {}
  service::GameService& svc;
  executor::NaiveClient naive;
  httplib::Server server;

  void routes();
};

void Server::Impl::routes() {
  auto& S = server;

  S.Get("/api/health", guarded([](const auto&, auto& res) { send(res, {{"status", "ok"}}); }));

  S.Get("/api/images", guarded([this](const httplib::Request& req, auto& res) {
    std::optional<service::Category> filter;
    if (req.has_param("category")) {
      const std::string name = req.get_param_value("category");
      filter = service::category_from_name(name);
      if (!filter) throw UsageError("unknown category \"" + name + "\"");
    }
    json list = json::array();
    for (const auto& t : svc.list_images(filter)) list.push_back(image_json(t));
    send(res, {{"images", list}});
  }));
  S.Post("/api/images", guarded([this](const auto& req, auto& res) {
    const json body = parse_body(req);
    const std::string cat = body.value("category", "other");
    auto category = service::category_from_name(cat);
    if (!category) throw UsageError("unknown category \"" + cat + "\"");
    const auto t = svc.add_image(board_value(jsonio::require(body, "target_board")), *category,
                                 body.value("image_id", ""));
    send(res, image_json(t), 201);
  }));
  S.Get(R"(/api/images/([^/]+))", guarded([this](const httplib::Request& req, auto& res) {
    send(res, image_json(svc.image(req.matches[1])));
  }));

  S.Get("/api/procedures", guarded([this](const auto&, auto& res) {
    json list = json::array();
    for (const auto& p : svc.procedures()) list.push_back(json::parse(procedure_to_json(p)));
    send(res, {{"procedures", list}});
  }));
  S.Post("/api/procedures", guarded([this](const httplib::Request& req, auto& res) {
    parse_body(req);
    const std::string id = svc.add_procedure(procedure_from_json(req.body));
    send(res, {{"procedure_id", id}}, 201);
  }));
  S.Get(R"(/api/procedures/([^/]+))", guarded([this](const httplib::Request& req, auto& res) {
    send(res, json::parse(procedure_to_json(svc.procedure(req.matches[1]))));
  }));

  S.Post("/api/description-sessions", guarded([this](const auto& req, auto& res) {
    const json body = parse_body(req);
    const auto sid = svc.create_description_session(jsonio::require_string(body, "image_id"));
    send(res, description_json(svc.description(sid)), 201);
  }));
  S.Get(R"(/api/description-sessions/([^/]+))",
        guarded([this](const httplib::Request& req, auto& res) {
          send(res, description_json(svc.description(req.matches[1])));
        }));
  S.Post(R"(/api/description-sessions/([^/]+)/steps)",
         guarded([this](const httplib::Request& req, auto& res) {
           const json body = parse_body(req);
           const std::string sid = req.matches[1];
           if (body.contains("text"))
             svc.submit_description_text(sid, jsonio::require_string(body, "text"),
                                         alignments_value(jsonio::require(body, "alignments")));
           else
             svc.submit_description_step(sid, jsonio::require_string(body, "instruction"),
                                         jsonio::actions_from_json(jsonio::require(body, "actions")));
           send(res, description_json(svc.description(sid)));
         }));
  S.Post(R"(/api/description-sessions/([^/]+)/finalize)",
         guarded([this](const httplib::Request& req, auto& res) {
           const auto proc = svc.finalize_description(req.matches[1]);
           send(res, json::parse(procedure_to_json(proc)));
         }));
  S.Post(R"(/api/description-sessions/([^/]+)/discard)",
         guarded([this](const httplib::Request& req, auto& res) {
           svc.discard_description(req.matches[1]);
           send(res, {{"session_id", req.matches[1]}, {"status", "discarded"}});
         }));

  // Nothing below returns the target board or gold actions until finalize.
  S.Post("/api/execution-sessions", guarded([this](const auto& req, auto& res) {
    const json body = parse_body(req);
    const std::string pid = jsonio::require_string(body, "procedure_id");
    const auto sid = svc.create_execution_session(pid, body.value("executor", ""));
    send(res, {{"session_id", sid}, {"procedure_id", pid}}, 201);
  }));
  auto instruction = guarded([this](const httplib::Request& req, auto& res) {
    const auto v = svc.next_instruction(req.matches[1]);
    send(res, {{"step", v.step}, {"total", v.total}, {"instruction", v.instruction}});
  });
  S.Get(R"(/api/execution-sessions/([^/]+)/instruction)", instruction);
  S.Post(R"(/api/execution-sessions/([^/]+)/instruction)", instruction);
  S.Post(R"(/api/execution-sessions/([^/]+)/steps)",
         guarded([this](const httplib::Request& req, auto& res) {
           const json body = parse_body(req);
           const auto ack = svc.submit_execution_step(
               req.matches[1], jsonio::require_int(body, "step"),
               jsonio::actions_from_json(jsonio::require(body, "actions")));
           send(res, {{"step", ack.step}, {"remaining", ack.remaining}});
         }));
  S.Post(R"(/api/execution-sessions/([^/]+)/finalize)",
         guarded([this](const httplib::Request& req, auto& res) {
           const auto r = svc.finalize_execution(req.matches[1]);
           send(res, {{"session_id", r.session_id},
                      {"procedure_id", r.procedure_id},
                      {"report", jsonio::report_to_json(r.report)},
                      {"submitted", actions_list(r.submitted)},
                      {"target_board", jsonio::board_to_json(r.target)}});
         }));

  S.Post("/api/machine-rounds", guarded([this](const auto& req, auto& res) {
    const json body = parse_body(req);
    const std::string pid = jsonio::require_string(body, "procedure_id");
    const std::string endpoint = jsonio::require_string(body, "endpoint");
    const bool oracle = body.value("oracle_prev", false);
    std::unique_ptr<executor::Client> client;
    if (endpoint == "builtin:naive")
      client = std::make_unique<executor::NaiveClient>();
    else
      client = std::make_unique<executor::HttpClient>(
          endpoint, std::chrono::milliseconds(body.value("timeout_ms", 10000)));
    const auto r = svc.machine_executor_round(pid, *client, oracle, body.value("executor", endpoint));
    send(res, {{"procedure_id", r.procedure_id},
               {"executor", r.executor},
               {"complete", r.complete},
               {"error", r.error},
               {"submitted", actions_list(r.submitted)},
               {"report", r.report ? jsonio::report_to_json(*r.report) : json(nullptr)}});
  }));

  S.Post("/api/executors/naive", [this](const httplib::Request& req, httplib::Response& res) {
    try {
      res.set_content(executor::response_to_json(naive.execute(executor::request_from_json(req.body))),
                      "application/json");
    } catch (const Error& e) {
      res.status = 400;
      res.set_content(executor::error_to_json(e.what()), "application/json");
    }
  });

  S.Post(R"(/api/admin/procedures/([^/]+)/fix)",
         guarded([this](const httplib::Request& req, auto& res) {
           const json body = parse_body(req);
           const std::string cat = body.value("category", "other");
           auto category = qa_category_from_name(cat);
           if (!category) throw UsageError("unknown QA category \"" + cat + "\"");
           const auto proc = svc.fix_procedure(
               req.matches[1], jsonio::require_int(body, "step"),
               jsonio::actions_from_json(jsonio::require(body, "actions")), *category,
               body.value("note", ""));
           send(res, json::parse(procedure_to_json(proc)));
         }));

  S.Get("/api/reports", guarded([this](const httplib::Request& req, auto& res) {
    json list = json::array();
    for (const auto& line : svc.reports(req.get_param_value("procedure_id")))
      list.push_back(json::parse(line));
    send(res, {{"reports", list}});
  }));

  S.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) send_error(res, res.status, res.status == 404 ? "no such route" : "error");
  });
  S.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    send_error(res, 500, what);
  });
}

Server::Server(service::GameService& service) : impl_(std::make_unique<Impl>(service)) {
  impl_->routes();
}

Server::~Server() { stop(); }

bool Server::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }

int Server::bind_to_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool Server::listen_after_bind() { return impl_->server.listen_after_bind(); }

void Server::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void Server::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace hexagons::http
