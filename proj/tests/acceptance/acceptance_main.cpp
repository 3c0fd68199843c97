// Acceptance suite: one PASS/FAIL line per criterion, each with a time limit.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "hexagons/dataset.hpp"
#include "hexagons/dsl.hpp"
#include "hexagons/geometry.hpp"
#include "hexagons/metrics.hpp"
#include "hexagons/naive.hpp"
#include "httplib.h"
#include "json.hpp"
#include "service_util.hpp"
#include "test_util.hpp"

using namespace hexagons;
using nlohmann::json;

namespace {

// Collects mismatches; keeps the first few messages.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 5) messages_ += (messages_.empty() ? "" : "; ") + what;
  }
  void note(std::string s) { notes_ = std::move(s); }

  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    std::ostringstream out;
    out << checks_ << " checks";
    if (failures_) out << ", " << failures_ << " failed: " << messages_;
    if (!notes_.empty()) out << "; " << notes_;
    return out.str();
  }

 private:
  long checks_ = 0;
  long failures_ = 0;
  std::string messages_;
  std::string notes_;
};

struct Outcome {
  enum { pass, fail, skip } status = pass;
  std::string detail;
};

int g_failed = 0;

void criterion(const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {Outcome::fail, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.status != Outcome::skip && secs > limit_s) {
    o.status = Outcome::fail;
    o.detail += "; over the " + std::to_string(limit_s) + "s limit";
  }
  const char* tag = o.status == Outcome::pass ? "PASS" : o.status == Outcome::fail ? "FAIL" : "SKIP";
  if (o.status == Outcome::fail) ++g_failed;
  std::printf("%s  %-34s %7.3fs  %s\n", tag, name.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
}

Outcome from(const Check& c) { return {c.ok() ? Outcome::pass : Outcome::fail, c.summary()}; }

std::string fixture(const std::string& name) { return testutil::fixture(name); }

// --- oracles ----------------------------------------------------------------

using Triplet = std::tuple<int, int, int>;

std::set<Triplet> board_triplets(const Board& b) {
  std::set<Triplet> out;
  for (int c = 1; c <= kColumns; ++c)
    for (int r = 1; r <= kRows; ++r)
      if (b.at({c, r}) != Color::white) out.insert({c, r, static_cast<int>(b.at({c, r}))});
  return out;
}

std::set<Triplet> action_triplets(const ActionSet& a) {
  std::set<Triplet> out;
  for (const auto& x : a) out.insert({x.position.column, x.position.row, static_cast<int>(x.color)});
  return out;
}

Score set_oracle(const std::set<Triplet>& g, const std::set<Triplet>& h) {
  if (g.empty() && h.empty()) return {1, 1, 1};
  if (g.empty() || h.empty()) return {0, 0, 0};
  long common = 0;
  for (const auto& t : h) common += g.count(t);
  const long ng = static_cast<long>(g.size()), nh = static_cast<long>(h.size());
  return {Rational(common, nh), Rational(common, ng), Rational(2 * common, ng + nh)};
}

// Distinct random tiles, at most `max_tiles` of them, each painted.
Board sparse_board(std::mt19937& rng, int max_tiles) {
  Board b;
  const int n = static_cast<int>(rng() % static_cast<unsigned>(max_tiles + 1));
  for (int i = 0; i < n; ++i) b.set(testutil::random_position(rng), testutil::random_paint_color(rng));
  return b;
}

dsl::Region random_region(std::mt19937& rng, int max_tiles) {
  dsl::Region out;
  const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_tiles));
  for (int i = 0; i < n; ++i) out.insert(testutil::random_position(rng));
  return out;
}

std::string list_literal(const dsl::Region& r) {
  std::string out = "tiles[";
  bool first = true;
  for (Position p : r) {
    out += (first ? "" : ", ") + to_string(p);
    first = false;
  }
  return out + "]";
}

std::vector<dsl::Step> run(const std::string& src, const Board& b = Board{}) {
  return dsl::eval_program(dsl::parse_program(src), b);
}

std::string signed_int(int v) { return (v < 0 ? "" : "+") + std::to_string(v); }

// --- criteria ---------------------------------------------------------------

Outcome naive_golden() {
  Check c;
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"Paint the 4th hex from top of the 7th column orange from left.", "PAINT((4,7),orange)"},
      {"In the first column, color the 2nd tile blue", "PAINT((2,1),blue)"},
      {"In column 3 color tiles 4 and 6 red", "PAINT((4,3),red)+PAINT((6,3),red)"},
  };
  for (const auto& [text, expected] : cases) {
    naive::ParserState state;
    std::string got;
    for (const auto& cmd : naive::match_patterns(naive::normalize(text), state).commands)
      got += (got.empty() ? "" : "+") + naive::to_string(cmd);
    c.expect(got == expected, "\"" + text + "\" gave " + got);
  }
  return from(c);
}

Outcome metrics_oracle() {
  Check c;
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const Board gold = sparse_board(rng, 20);
    Board hyp = sparse_board(rng, 20);
    if (trial % 2) {  // overlap-heavy pairs
      hyp = gold;
      for (const auto& a : painted(gold))
        if (rng() % 3 == 0) hyp.set(a.position, testutil::random_color(rng));
    }
    const auto gt = board_triplets(gold), ht = board_triplets(hyp);
    c.expect(board_score(gold, hyp) == set_oracle(gt, ht), "board score #" + std::to_string(trial));
    c.expect(exact_match(gold, hyp) == (gt == ht), "board EM #" + std::to_string(trial));

    const ActionSet ga = diff(Board{}, gold), ha = diff(Board{}, hyp);
    const auto gat = action_triplets(ga), hat = action_triplets(ha);
    c.expect(action_score(ga, ha) == set_oracle(gat, hat), "action score #" + std::to_string(trial));
    c.expect(exact_match(ga, ha) == (gat == hat), "action EM #" + std::to_string(trial));
  }
  return from(c);
}

Outcome geometry() {
  Check c;
  int interior = 0;
  for (int col = 1; col <= kColumns; ++col)
    for (int row = 1; row <= kRows; ++row) {
      const Position p{col, row};
      const auto got = neighbors(p);
      const std::set<Position> got_set(got.begin(), got.end());
      c.expect(got_set == testutil::oracle_neighbors(p), "neighbors of " + to_string(p));
      for (Position q : got) {
        const auto back = neighbors(q);
        c.expect(std::find(back.begin(), back.end(), p) != back.end(),
                 "asymmetric " + to_string(p) + " " + to_string(q));
      }
      if (col > 1 && col < kColumns && row > 1 && row < kRows) {
        ++interior;
        c.expect(got.size() == 6, "interior degree at " + to_string(p));
      }
      c.expect(got.size() >= 2 && got.size() <= 6, "degree at " + to_string(p));
    }
  c.note(std::to_string(interior) + " interior tiles");
  return from(c);
}

Outcome diff_apply() {
  Check c;
  std::mt19937 rng(77);
  for (int trial = 0; trial < 1000; ++trial) {
    const Board a = testutil::random_board(rng, 60), b = testutil::random_board(rng, 60);
    const std::string t = " #" + std::to_string(trial);
    const ActionSet d = diff(a, b);
    c.expect(apply_actions(a, d) == b, "apply(a, diff(a,b)) != b" + t);
    c.expect(diff(a, a).empty(), "diff(a,a) not empty" + t);
    c.expect(apply_actions(a, ActionSet{}) == a, "empty apply" + t);
    for (const auto& x : d) c.expect(a.at(x.position) != x.color, "diff keeps an unchanged tile" + t);
    // Paint algebra: idempotent, last writer wins, disjoint paints commute.
    const Position p = testutil::random_position(rng), q = testutil::random_position(rng);
    const Color x = testutil::random_color(rng), y = testutil::random_color(rng);
    c.expect(paint(paint(a, p, x), p, x) == paint(a, p, x), "idempotence" + t);
    c.expect(paint(paint(a, p, x), p, y) == paint(a, p, y), "overwrite" + t);
    if (p != q) c.expect(paint(paint(a, p, x), q, y) == paint(paint(a, q, y), p, x), "commute" + t);
    const ActionSet acts = testutil::random_actions(rng, 12);
    Board seq = a;
    for (const auto& z : acts) seq = paint(seq, z.position, z.color);
    c.expect(apply_actions(a, acts) == seq, "apply equals sequential paints" + t);
    c.expect(parse_letter_grid(to_letter_grid(a)) == a, "letter grid round trip" + t);
  }
  return from(c);
}

Outcome dsl_properties() {
  Check c;
  std::mt19937 rng(4242);
  const std::vector<std::pair<std::string, dsl::Axis>> axes_fixed = {
      {"vertical", {dsl::AxisExpr::Kind::vertical_midline, {}, 90}},
      {"horizontal", {dsl::AxisExpr::Kind::horizontal_midline, {}, 0}},
  };

  // Reflection involution on generated reflect programs over closed regions.
  int reflections = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::string axis_src;
    dsl::Axis axis;
    if (trial % 3 < 2) {
      std::tie(axis_src, axis) = axes_fixed[static_cast<std::size_t>(trial % 3)];
    } else {
      const Position through = testutil::random_position(rng);
      const int deg = std::array{0, 30, 90, 150}[rng() % 4];
      axis_src = "through " + to_string(through) + " angle " + std::to_string(deg);
      axis = {dsl::AxisExpr::Kind::line, through, deg};
    }
    dsl::Region closed;
    for (Position p : random_region(rng, 10)) {
      const auto img = dsl::reflect_region({p}, axis);
      if (img.empty()) continue;
      closed.insert(p);
      closed.insert(*img.begin());
    }
    if (closed.empty()) continue;
    ++reflections;
    c.expect(dsl::reflect_region(dsl::reflect_region(closed, axis), axis) == closed,
             "region involution, axis " + axis_src);
    const Board start = testutil::random_board(rng, 80);
    const std::string stmt = "reflect " + list_literal(closed) + " axis " + axis_src + "\n";
    const auto steps = run(stmt + stmt, start);
    c.expect(steps.size() == 2 && steps[1].board == start, "program involution, axis " + axis_src);
  }

  // Rotation order six on generated rotate programs over orbit-safe regions.
  int rotations = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const Position center = testutil::random_position(rng);
    dsl::Region safe;
    for (Position p : random_region(rng, 8)) {
      bool ok = true;
      for (int k = 1; k <= 5; ++k) ok = ok && !dsl::rotate_region({p}, center, k).empty();
      if (ok) safe.insert(p);
    }
    // Close the region under rotation so the statement permutes colors.
    dsl::Region orbit;
    for (Position p : safe)
      for (int k = 0; k < 6; ++k) orbit.insert(*dsl::rotate_region({p}, center, k).begin());
    if (orbit.empty()) continue;
    ++rotations;
    dsl::Region x = orbit;
    for (int i = 0; i < 6; ++i) x = dsl::rotate_region(x, center, 1);
    c.expect(x == orbit, "region order six about " + to_string(center));
    const int k = 1 + static_cast<int>(rng() % 5);
    const std::string stmt =
        "rotate " + list_literal(orbit) + " about " + to_string(center) + " by " + std::to_string(k) + "\n";
    std::string prog;
    for (int i = 0; i < 6; ++i) prog += stmt;
    const Board start = testutil::random_board(rng, 80);
    c.expect(run(prog, start).back().board == start, "program order six about " + to_string(center));
  }

  // Flower rotation fixed point for every center whose flower is whole.
  int flowers = 0;
  for (int col = 1; col <= kColumns; ++col)
    for (int row = 1; row <= kRows; ++row) {
      const Position p{col, row};
      const dsl::Region flower = dsl::expand_region(dsl::FlowerRegion{p}, Board{});
      if (flower.size() != 7) continue;
      ++flowers;
      for (int k = 1; k <= 5; ++k) {
        c.expect(dsl::rotate_region(flower, p, k) == flower, "flower fixed point at " + to_string(p));
        const auto steps = run("paint flower" + to_string(p) + " red\nrotate flower" + to_string(p) +
                               " about " + to_string(p) + " by " + std::to_string(k));
        c.expect(steps[1].board == steps[0].board && steps[1].actions == steps[0].actions,
                 "flower program fixed point at " + to_string(p));
      }
    }

  // RepeatN equals translate-and-replay of the unrolled body.
  const std::vector<std::string> templates = {
      "paint flower({c},{r}) {color}",          "paint line(({c},{r}), down-right, 3) {color}",
      "paint ({c},{r}) {color}",                "paint neighbors({c},{r}) {color}",
      "paint hexagon(({c},{r}), 1) {color}",    "paint line(({c},{r}), up, 2) {color}",
  };
  auto fill = [](std::string t, int col, int row, const std::string& color) {
    for (auto [key, value] : {std::pair<std::string, std::string>{"{c}", std::to_string(col)},
                              {"{r}", std::to_string(row)},
                              {"{color}", color}})
      for (auto pos = t.find(key); pos != std::string::npos; pos = t.find(key))
        t.replace(pos, key.size(), value);
    return t;
  };
  int repeats = 0;
  while (repeats < 300) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int dc = static_cast<int>(rng() % 5) - 2, dr = static_cast<int>(rng() % 3) - 1;
    const int c0 = 3 + static_cast<int>(rng() % 12), r0 = 3 + static_cast<int>(rng() % 4);
    bool ok = true;
    for (int i = 0; i < n; ++i) ok = ok && in_bounds({c0 + i * dc, r0 + i * dr});
    if (!ok) continue;
    ++repeats;
    std::vector<std::pair<std::string, std::string>> body;
    for (int k = 1 + static_cast<int>(rng() % 2); k > 0; --k)
      body.emplace_back(templates[rng() % templates.size()],
                        std::string(color_name(testutil::random_paint_color(rng))));
    std::string looped = "repeat " + std::to_string(n) + " offset (" + signed_int(dc) + " columns, " +
                         signed_int(dr) + " rows) {\n";
    std::string unrolled;
    for (const auto& [t, color] : body) looped += fill(t, c0, r0, color) + "\n";
    looped += "}";
    for (int i = 0; i < n; ++i)
      for (const auto& [t, color] : body) unrolled += fill(t, c0 + i * dc, r0 + i * dr, color) + "\n";
    const Board start = testutil::random_board(rng, 20);
    const auto a = run(looped, start), b = run(unrolled, start);
    ActionSet merged;
    for (const auto& s : b)
      for (const auto& x : s.actions) merged.assign(x.position, x.color);
    c.expect(a.size() == 1 && a[0].actions == merged && a[0].board == b.back().board,
             "repeat mismatch: " + looped);
  }

  // Recursion terminates within the depth bound; deeper nesting is refused.
  int recursions = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int depth = 1 + static_cast<int>(rng() % dsl::kMaxRecursionDepth);
    const int dc = static_cast<int>(rng() % 5) - 2, dr = static_cast<int>(rng() % 3) - 1;
    const int grow = static_cast<int>(rng() % 3), turn = static_cast<int>(rng() % 3) - 1;
    const std::string src = "recurse " + std::to_string(depth) + " offset (" + signed_int(dc) +
                            " columns, " + signed_int(dr) + " rows) grow +" + std::to_string(grow) +
                            " turn " + signed_int(turn) + " { paint line(" +
                            to_string(testutil::random_position(rng)) + ", down, 2) red }";
    const auto steps = run(src);
    const std::size_t largest = static_cast<std::size_t>(2 + grow * (depth - 1));
    c.expect(steps.size() == 1 && steps[0].actions.size() <= static_cast<std::size_t>(depth) * largest,
             "recursion bound: " + src);
    ++recursions;
  }
  for (auto [outer, inner] : {std::pair{65, 1}, {40, 30}, {64, 2}}) {
    const std::string src = inner == 1 ? "recurse " + std::to_string(outer) + " { paint (1,1) red }"
                                       : "recurse " + std::to_string(outer) + " { recurse " +
                                             std::to_string(inner) + " { paint (1,1) red } }";
    bool refused = false;
    try {
      run(src);
    } catch (const dsl::EvalError& e) {
      refused = e.kind() == dsl::EvalError::Kind::depth;
    }
    c.expect(refused, "depth bound not enforced: " + src);
  }
  c.expect(!run("recurse 64 { paint (1,1) red }").empty(), "depth 64 refused");

  c.note(std::to_string(reflections) + " reflect, " + std::to_string(rotations) + " rotate, " +
         std::to_string(flowers) + " flower centers, " + std::to_string(repeats) + " repeat, " +
         std::to_string(recursions) + " recurse programs");
  return from(c);
}

std::vector<DrawingProcedure> synthetic(std::mt19937& rng, int procedures, int images) {
  std::vector<DrawingProcedure> out;
  for (int i = 0; i < procedures; ++i)
    out.push_back(testutil::random_procedure(rng, "p" + std::to_string(i),
                                             "img" + std::to_string(i % images), 2));
  return out;
}

Outcome split_invariants() {
  Check c;
  std::mt19937 rng(31);
  const auto procs = synthetic(rng, 200, 40);
  std::map<std::string, std::string> image_of;
  for (const auto& p : procs) image_of[p.id] = p.image_id;
  auto within = [](std::size_t got, double exact) { return std::abs(double(got) - exact) <= 1.0; };

  for (std::uint64_t seed : {0ULL, 1ULL, 7ULL, 12345ULL, 0xdeadbeefULL}) {
    const std::string s = " seed " + std::to_string(seed);
    for (SplitMode mode : {SplitMode::random, SplitMode::hard}) {
      const Split a = make_split(procs, mode, seed);
      c.expect(a == make_split(procs, mode, seed), "nondeterministic" + s);
      std::set<std::string> all;
      for (const auto* bucket : {&a.train, &a.dev, &a.test}) all.insert(bucket->begin(), bucket->end());
      c.expect(all.size() == 200 && a.train.size() + a.dev.size() + a.test.size() == 200,
               "not a partition" + s);
      c.expect(within(a.train.size(), 160) && within(a.dev.size(), 20) && within(a.test.size(), 20),
               std::string(split_mode_name(mode)) + " sizes " + std::to_string(a.train.size()) + "/" +
                   std::to_string(a.dev.size()) + "/" + std::to_string(a.test.size()) + s);
      if (mode == SplitMode::hard) {
        std::set<std::string> tr, dv, te;
        for (const auto& id : a.train) tr.insert(image_of[id]);
        for (const auto& id : a.dev) dv.insert(image_of[id]);
        for (const auto& id : a.test) te.insert(image_of[id]);
        bool disjoint = true;
        for (const auto& img : dv) disjoint = disjoint && !tr.count(img) && !te.count(img);
        for (const auto& img : te) disjoint = disjoint && !tr.count(img);
        c.expect(disjoint, "hard split shares images" + s);
      }
    }
    c.expect(make_split(procs, SplitMode::random, seed) != make_split(procs, SplitMode::random, seed + 1),
             "seed has no effect" + s);
  }
  return from(c);
}

Outcome constants() {
  Check c;
  c.expect(kColumns == 18 && kRows == 10, "board is not 18x10");
  c.expect(kTileCount == 180, "tile count");
  c.expect(Board{}.tiles().size() == 180, "board storage");
  c.expect(kPalette.size() == 8, "palette size");
  std::set<char> codes;
  std::set<std::string_view> names;
  for (const auto& e : kPalette) {
    codes.insert(e.code);
    names.insert(e.name);
  }
  c.expect(codes.size() == 8 && names.size() == 8, "palette entries not distinct");
  c.expect(parse_letter_grid(to_letter_grid(Board{})) == Board{}, "blank grid");
  return from(c);
}

// The released dataset is not shipped. With HEXAGONS_DATASET set the exact
// counts are asserted; otherwise the pipeline runs on the synthetic fixture
// and the criterion is reported as skipped.
Outcome released_dataset() {
  Check c;
  const char* env = std::getenv("HEXAGONS_DATASET");
  const std::string path = env ? env : fixture("synthetic.jsonl");
  const auto procs = load_procedures(path);
  const auto stats = compute_stats(procs);
  std::vector<ExecutorRun> runs;
  for (const auto& p : procs) {
    std::vector<std::string> text;
    for (const auto& s : p.steps) text.push_back(s.instruction);
    runs.push_back({p.id, "naive", naive::run_naive(text)});
  }
  const auto report = evaluate_runs(procs, runs, EvalOptions{});
  const json j = json::parse(report_to_json(report));
  c.expect(j["procedures"] == procs.size() && j["entries"].size() == procs.size() && j.contains("f1") &&
               j.contains("step_em") && j.contains("procedure_em"),
           "malformed naive report");
  c.expect(report.f1 >= 0 && report.f1 <= 1, "f1 out of range");
  if (!env) {
    Outcome o = from(c);
    if (o.status == Outcome::pass) {
      o.status = Outcome::skip;
      o.detail = "HEXAGONS_DATASET not set; stats and naive eval pipeline ran on the synthetic fixture (" +
                 std::to_string(stats.procedures) + " procedures), counts not asserted";
    }
    return o;
  }
  c.expect(stats.images == 164, "images " + std::to_string(stats.images));
  c.expect(stats.procedures == 497, "procedures " + std::to_string(stats.procedures));
  c.expect(stats.steps == 3135, "steps " + std::to_string(stats.steps));
  c.expect(stats.tokens == 70200, "tokens " + std::to_string(stats.tokens));
  c.note("naive F1 " + format_decimal(report.f1) + " (not asserted)");
  return from(c);
}

Outcome service_end_to_end() {
  Check c;
  testutil::TempDir dir("acceptance");
  service::GameService svc({dir.path()});
  testutil::RunningServer server(svc);
  httplib::Client cli(server.base());
  auto post = [&](const std::string& path, const json& body) {
    auto res = cli.Post(path, body.dump(), "application/json");
    if (!res) throw Error("no response from " + path);
    return std::make_pair(res->status, json::parse(res->body));
  };
  auto actions_json = [](const ActionSet& a) {
    json out = json::array();
    for (const auto& x : a)
      out.push_back(json::array({x.position.column, x.position.row, std::string(color_name(x.color))}));
    return out;
  };

  // Description session reproducing the flower fixture.
  const auto flower = load_procedures(fixture("flower.jsonl")).at(0);
  auto [is, img] = post("/api/images", {{"target_board", to_letter_grid(flower.steps.back().board_after)},
                                        {"category", "simple"}});
  c.expect(is == 201, "add image");
  auto [ds, sess] = post("/api/description-sessions", {{"image_id", img["image_id"]}});
  const std::string dsid = sess.value("session_id", "");
  for (const auto& s : flower.steps)
    post("/api/description-sessions/" + dsid + "/steps",
         {{"instruction", s.instruction}, {"actions", actions_json(s.actions)}});
  auto [fs, proc] = post("/api/description-sessions/" + dsid + "/finalize", json::object());
  c.expect(ds == 201 && fs == 200, "description finalize status " + std::to_string(fs));
  const std::string flower_id = proc.value("id", "");
  c.expect(svc.procedure(flower_id).steps == flower.steps, "stored procedure differs from fixture");

  // Execution session replaying gold.
  auto [es, esess] = post("/api/execution-sessions", {{"procedure_id", flower_id}});
  const std::string esid = esess.value("session_id", "");
  for (const auto& s : flower.steps) {
    auto res = cli.Get("/api/execution-sessions/" + esid + "/instruction");
    c.expect(res && json::parse(res->body)["instruction"] == s.instruction, "instruction order");
    post("/api/execution-sessions/" + esid + "/steps", {{"step", s.index}, {"actions", actions_json(s.actions)}});
  }
  auto [xs, result] = post("/api/execution-sessions/" + esid + "/finalize", json::object());
  c.expect(es == 201 && xs == 200, "execution finalize status " + std::to_string(xs));
  for (const char* m : {"board", "action"})
    c.expect(result["report"][m]["em"] == 1.0 && result["report"][m]["f1"] == 1.0,
             std::string("gold replay ") + m + " not perfect");
  c.expect(result["report"]["procedure_em"]["action"] == true, "procedure EM");

  // Machine round against the naive wire endpoint versus offline eval.
  const auto table = load_procedures(fixture("naive_table.jsonl")).at(0);
  svc.add_procedure(table);
  std::vector<std::string> text;
  for (const auto& s : table.steps) text.push_back(s.instruction);
  const std::vector<ExecutorRun> offline_runs{{table.id, "naive", naive::run_naive(text)}};
  for (bool oracle : {false, true}) {
    auto [ms, round] = post("/api/machine-rounds", {{"procedure_id", table.id},
                                                    {"endpoint", server.base() + "/api/executors/naive"},
                                                    {"oracle_prev", oracle}});
    c.expect(ms == 200 && round["complete"] == true, "round incomplete: " + round.dump());
    EvalOptions opt;
    opt.oracle_prev_state = oracle;
    for (Mode m : {Mode::action, Mode::board}) {
      opt.mode = m;
      const auto offline = evaluate_runs({table}, offline_runs, opt);
      const json& macro = round["report"][m == Mode::action ? "action" : "board"];
      c.expect(macro["precision"] == to_double(offline.precision) &&
                   macro["recall"] == to_double(offline.recall) && macro["f1"] == to_double(offline.f1) &&
                   macro["em"] == to_double(offline.step_em),
               "round differs from offline eval");
    }
    const auto offline_report = evaluate_procedure(table, offline_runs[0].steps, oracle);
    for (std::size_t i = 0; i < table.steps.size(); ++i) {
      const json& st = round["report"]["steps"][i];
      c.expect(st["action_em"] == offline_report.steps[i].action_em &&
                   st["board_em"] == offline_report.steps[i].board_em &&
                   st["action"]["f1"] == to_double(offline_report.steps[i].action_score.f1),
               "step " + std::to_string(i + 1) + " differs");
    }
    json expected = json::array();
    for (const auto& a : offline_runs[0].steps) expected.push_back(actions_json(a));
    c.expect(round["submitted"] == expected, "submitted actions differ from offline naive");
  }
  return from(c);
}

}  // namespace

int main() {
  std::printf("hexagons acceptance suite\n");
  criterion("naive-baseline-golden", 1, naive_golden);
  criterion("metrics-oracle-1000-pairs", 10, metrics_oracle);
  criterion("geometry-neighbors-180-tiles", 1, geometry);
  criterion("diff-apply-paint-algebra-1000", 5, diff_apply);
  criterion("dsl-property-suite", 30, dsl_properties);
  criterion("split-invariants-200-over-40", 5, split_invariants);
  criterion("constants-180-tiles-8-colors", 1, constants);
  criterion("released-dataset-substitute", 60, released_dataset);
  criterion("service-end-to-end", 30, service_end_to_end);
  std::printf("%s: %d criteria failed\n", g_failed ? "FAILED" : "OK", g_failed);
  return g_failed ? 1 : 0;
}
