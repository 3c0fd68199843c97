// hexagons: command-line front end.
//
// Exit codes: 0 success, 1 validation failure or score below a threshold,
// 2 usage error (bad flags, unreadable input).

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hexagons/dataset.hpp"
#include "hexagons/dsl.hpp"
#include "hexagons/executor.hpp"
#include "hexagons/geometry.hpp"
#include "hexagons/http_api.hpp"
#include "hexagons/naive.hpp"
#include "hexagons/service.hpp"
#include "json.hpp"

using namespace hexagons;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool has_suffix(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

json actions_json(const ActionSet& a) {
  json out = json::array();
  for (const auto& x : a)
    out.push_back(json::array({x.position.column, x.position.row, std::string(color_name(x.color))}));
  return out;
}

// Loads a procedure file, printing every diagnostic. Throws on any error.
std::vector<DrawingProcedure> load_checked(const std::string& path) {
  auto result = read_procedures(std::filesystem::path(path));
  if (!result.errors.empty()) throw FormatError(result.errors);
  return result.procedures;
}

// --- render -----------------------------------------------------------------

struct RenderArgs {
  std::string input;
  std::string format = "svg";
  std::string id;
  int step = 0;
};

int cmd_render(const RenderArgs& a) {
  Board board;
  if (has_suffix(a.input, ".hexa")) {
    auto steps = dsl::eval_program(dsl::parse_program(read_file(a.input)), Board{});
    if (!steps.empty()) board = steps.back().board;
  } else if (has_suffix(a.input, ".jsonl")) {
    const auto procs = load_checked(a.input);
    const DrawingProcedure* p = nullptr;
    for (const auto& x : procs)
      if (a.id.empty() || x.id == a.id) {
        p = &x;
        break;
      }
    if (!p) throw UsageError(a.id.empty() ? "no procedures in " + a.input : "no procedure " + a.id);
    if (a.step < 0 || a.step > static_cast<int>(p->steps.size()))
      throw UsageError("procedure " + p->id + " has no step " + std::to_string(a.step));
    const std::size_t n = a.step == 0 ? p->steps.size() : static_cast<std::size_t>(a.step);
    board = board_before(*p, n);
  } else {
    board = parse_letter_grid(read_file(a.input));
  }
  std::cout << (a.format == "grid" ? to_letter_grid(board) : render_svg(board));
  return kOk;
}

// --- run-dsl ----------------------------------------------------------------

struct RunDslArgs {
  std::string program;
  std::string format = "jsonl";
};

int cmd_run_dsl(const RunDslArgs& a) {
  const auto steps = dsl::eval_program(dsl::parse_program(read_file(a.program)), Board{});
  std::size_t total = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    total += steps[i].actions.size();
    if (a.format == "grid") {
      std::cout << "# step " << i + 1 << ": " << steps[i].source << '\n' << to_letter_grid(steps[i].board);
    } else {
      std::cout << json{{"step", i + 1},
                        {"source", steps[i].source},
                        {"actions", actions_json(steps[i].actions)}}
                       .dump()
                << '\n';
    }
  }
  std::cerr << steps.size() << " steps, " << total << " actions, "
            << painted(steps.empty() ? Board{} : steps.back().board).size() << " painted tiles\n";
  return kOk;
}

// --- eval -------------------------------------------------------------------

struct EvalArgs {
  std::string gold;
  std::string pred;
  std::string mode = "action";
  bool oracle_prev = false;
  std::string agg = "avg";
  std::string em_granularity = "procedure";
  std::string format = "table";
  std::optional<double> min_f1;
  std::optional<double> min_em;
};

int cmd_eval(const EvalArgs& a) {
  EvalOptions opt;
  opt.mode = a.mode == "board" ? Mode::board : Mode::action;
  opt.oracle_prev_state = a.oracle_prev;
  opt.aggregation = a.agg == "min" ? Aggregation::min : a.agg == "max" ? Aggregation::max : Aggregation::avg;
  opt.em_granularity = a.em_granularity == "step" ? EmGranularity::step : EmGranularity::procedure;
  const auto report = evaluate_runs(load_checked(a.gold), load_runs(a.pred), opt);
  if (a.format == "json")
    std::cout << report_to_json(report) << '\n';
  else
    std::cout << report_to_table(report);
  int rc = kOk;
  if (a.min_f1 && to_double(report.f1) < *a.min_f1) {
    std::cerr << "macro F1 " << format_decimal(report.f1) << " below " << *a.min_f1 << '\n';
    rc = kFailed;
  }
  if (a.min_em && to_double(report.em()) < *a.min_em) {
    std::cerr << "EM " << format_decimal(report.em()) << " below " << *a.min_em << '\n';
    rc = kFailed;
  }
  return rc;
}

// --- naive ------------------------------------------------------------------

struct NaiveArgs {
  std::string in;
  std::string out;
};

int cmd_naive(const NaiveArgs& a) {
  naive::LogSink log = [](const std::string& msg) { std::cerr << msg << '\n'; };
  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out, std::ios::binary);
    if (!file) throw UsageError("cannot write " + a.out);
  }
  std::ostream& out = a.out.empty() ? std::cout : file;

  if (has_suffix(a.in, ".jsonl")) {
    // Dataset in, prediction runs out.
    for (const auto& p : load_checked(a.in)) {
      std::vector<std::string> instructions;
      for (const auto& s : p.steps) instructions.push_back(s.instruction);
      out << run_to_json({p.id, "naive", naive::run_naive(instructions, log)}) << '\n';
    }
    return kOk;
  }
  // Plain text: one instruction per line, one line of commands per instruction.
  std::istringstream lines(read_file(a.in));
  naive::ParserState state;
  std::size_t index = 0;
  for (std::string line; std::getline(lines, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    ++index;
    const auto result = naive::match_patterns(naive::normalize(line), state);
    for (const auto& c : result.discarded)
      log("line " + std::to_string(index) + ": discarded off-board " + naive::to_string(c));
    std::string text;
    for (const auto& c : result.commands) text += (text.empty() ? "" : "; ") + naive::to_string(c);
    out << text << '\n';
  }
  return kOk;
}

// --- validate / split / stats -------------------------------------------------

int cmd_validate(const std::string& path) {
  const auto result = read_procedures(std::filesystem::path(path));
  for (const auto& d : result.errors) std::cerr << to_string(d) << '\n';
  std::cout << json{{"valid", result.errors.empty()},
                    {"procedures", result.procedures.size()},
                    {"errors", result.errors.size()}}
                   .dump()
            << '\n';
  return result.errors.empty() ? kOk : kFailed;
}

struct SplitArgs {
  std::string input;
  std::string mode = "random";
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_split(const SplitArgs& a) {
  const auto split = make_split(load_checked(a.input),
                                a.mode == "hard" ? SplitMode::hard : SplitMode::random, a.seed);
  const std::string text = split_to_json(split) + '\n';
  if (a.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(a.out, std::ios::binary);
    if (!(out << text)) throw UsageError("cannot write " + a.out);
  }
  std::cerr << split.train.size() << " train, " << split.dev.size() << " dev, " << split.test.size()
            << " test\n";
  return kOk;
}

int cmd_stats(const std::string& path) {
  std::cout << stats_to_json(compute_stats(load_checked(path))) << '\n';
  return kOk;
}

// --- serve ------------------------------------------------------------------

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_dir = "hexagons-data";
  long timeout_s = 3600;
  bool executor_stdio = false;
};

http::Server* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server) g_server->stop();
}

int cmd_serve(const ServeArgs& a) {
  if (a.executor_stdio) {
    executor::NaiveClient naive;
    executor::serve_stream(naive, std::cin, std::cout);
    return kOk;
  }
  service::GameService svc({a.data_dir, std::chrono::seconds(a.timeout_s)});
  http::Server server(svc);
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "serving " << a.data_dir << " on http://" << a.host << ':' << a.port << '\n';
  const bool ok = server.listen(a.host, a.port);
  g_server = nullptr;
  if (!ok) {
    std::cerr << "cannot listen on " << a.host << ':' << a.port << '\n';
    return kUsage;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hexagons: hex-board drawing instructions, metrics, baseline and game service"};
  app.require_subcommand(1);

  RenderArgs render;
  auto* r = app.add_subcommand("render", "Render a board as SVG or a letter grid");
  r->add_option("input", render.input, "Letter grid file, .hexa program or .jsonl procedures")
      ->required()
      ->check(CLI::ExistingFile);
  r->add_option("--format", render.format)->check(CLI::IsMember({"svg", "grid"}));
  r->add_option("--id", render.id, "Procedure id (.jsonl input; default first)");
  r->add_option("--step", render.step, "Board after this step (.jsonl input; default last)");

  RunDslArgs run_dsl;
  auto* d = app.add_subcommand("run-dsl", "Evaluate a program to its list of steps");
  d->add_option("program", run_dsl.program)->required()->check(CLI::ExistingFile);
  d->add_option("--format", run_dsl.format)->check(CLI::IsMember({"jsonl", "grid"}));

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Score prediction runs against a gold procedure file");
  e->add_option("--gold", eval.gold)->required()->check(CLI::ExistingFile);
  e->add_option("--pred", eval.pred, "Prediction runs or procedure records")
      ->required()
      ->check(CLI::ExistingFile);
  e->add_option("--mode", eval.mode)->check(CLI::IsMember({"board", "action"}));
  e->add_flag("--oracle-prev", eval.oracle_prev, "Apply each step to the gold previous board");
  e->add_option("--agg", eval.agg)->check(CLI::IsMember({"avg", "min", "max"}));
  e->add_option("--em-granularity", eval.em_granularity)->check(CLI::IsMember({"step", "procedure"}));
  e->add_option("--format", eval.format)->check(CLI::IsMember({"table", "json"}));
  e->add_option("--min-f1", eval.min_f1, "Exit 1 when macro F1 is lower");
  e->add_option("--min-em", eval.min_em, "Exit 1 when EM is lower");

  NaiveArgs naive_args;
  auto* n = app.add_subcommand("naive", "Run the rule-based baseline");
  n->add_option("--in", naive_args.in, "Instructions, one per line, or a .jsonl procedure file")
      ->required()
      ->check(CLI::ExistingFile);
  n->add_option("--out", naive_args.out, "Output file (default stdout)");

  std::string validate_path;
  auto* v = app.add_subcommand("validate", "Check a procedure file");
  v->add_option("input", validate_path)->required()->check(CLI::ExistingFile);

  SplitArgs split;
  auto* s = app.add_subcommand("split", "Partition procedures into train/dev/test");
  s->add_option("input", split.input)->required()->check(CLI::ExistingFile);
  s->add_option("--mode", split.mode)->check(CLI::IsMember({"random", "hard"}));
  s->add_option("--seed", split.seed)->required();
  s->add_option("--out", split.out);

  std::string stats_path;
  auto* st = app.add_subcommand("stats", "Dataset statistics");
  st->add_option("input", stats_path)->required()->check(CLI::ExistingFile);

  ServeArgs serve;
  auto* sv = app.add_subcommand("serve", "Run the game service");
  sv->add_option("--host", serve.host)->envname("HEXAGONS_HOST");
  sv->add_option("--port", serve.port)->envname("HEXAGONS_PORT")->check(CLI::Range(0, 65535));
  sv->add_option("--data-dir", serve.data_dir)->envname("HEXAGONS_DATA_DIR");
  sv->add_option("--session-timeout", serve.timeout_s, "Idle seconds before a session expires")
      ->envname("HEXAGONS_SESSION_TIMEOUT")
      ->check(CLI::PositiveNumber);
  sv->add_flag("--executor-stdio", serve.executor_stdio,
               "Act as a naive machine executor over stdin/stdout instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return kUsage;
  }

  try {
    if (*r) return cmd_render(render);
    if (*d) return cmd_run_dsl(run_dsl);
    if (*e) return cmd_eval(eval);
    if (*n) return cmd_naive(naive_args);
    if (*v) return cmd_validate(validate_path);
    if (*s) return cmd_split(split);
    if (*st) return cmd_stats(stats_path);
    if (*sv) return cmd_serve(serve);
  } catch (const FormatError& ex) {
    for (const auto& diag : ex.diagnostics()) std::cerr << to_string(diag) << '\n';
    return kFailed;
  } catch (const AlignmentError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kFailed;
  } catch (const InfeasibleSplitError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kFailed;
  } catch (const Error& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
