#include "slowsetnim/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "slowsetnim/closedform.hpp"
#include "slowsetnim/core.hpp"
#include "slowsetnim/reduction.hpp"
#include "slowsetnim/solver.hpp"
#include "slowsetnim/text.hpp"
#include "slowsetnim/verify.hpp"

namespace slowsetnim::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string game;
  std::string pos;
  int n = 0;
  CLI::Option* json_opt = nullptr;
  std::string json_path;
  std::uint64_t seed = 1;
  std::size_t budget = kDefaultNodeBudget;

  bool json() const { return json_opt->count() > 0; }
};

std::optional<Position> maybe_position(const Globals& g) {
  if (g.pos.empty()) return std::nullopt;
  return parse_position(g.pos);
}

Position require_position(const Globals& g) {
  auto p = maybe_position(g);
  if (!p) throw UsageError("--pos is required");
  return *p;
}

int stack_count(const Globals& g, const std::optional<Position>& p, int fallback) {
  if (g.n < 0) throw UsageError("--n must be positive");
  if (g.n > 0 && p && p->size() != static_cast<std::size_t>(g.n))
    throw UsageError("--n " + std::to_string(g.n) + " does not match the " + std::to_string(p->size()) +
                     " stacks of --pos");
  if (g.n > 0) return g.n;
  if (p) return static_cast<int>(p->size());
  return fallback;
}

GameSpec require_game(const Globals& g, int n) {
  if (g.game.empty()) throw UsageError("--game is required");
  return parse_game(g.game, n);
}

json to_json(const Position& p) { return json(std::vector<Height>(p.begin(), p.end())); }
json to_json(const MoveSelection& m) { return json(m.indices); }
json to_json(PositionType t) { return json{{"s", t.s}, {"o", t.o}}; }

void emit_json(const Globals& g, const json& j, std::ostream& out) {
  if (g.json_path.empty()) {
    out << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(g.json_path);
  if (!f) throw UsageError("cannot write " + g.json_path);
  f << j.dump(2) << '\n';
}

// Plain column-aligned table.
std::string render_table(const std::vector<std::string>& head, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) w[c] = head[c].size();
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) w[c] = std::max(w[c], r[c].size());
  std::ostringstream os;
  const auto line = [&](const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t c = 0; c < r.size(); ++c) {
      s += r[c];
      if (c + 1 < r.size()) s += std::string(w[c] - r[c].size() + 2, ' ');
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    os << s << '\n';
  };
  line(head);
  for (const auto& r : rows) line(r);
  return os.str();
}

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
  std::string mode;
  bool explain = false;
  bool source = false;
  bool no_conjecture = false;
  bool oracle = false;
};

std::string describe(const ClassifierVerdict& v, const Position& input) {
  switch (v.source) {
    case VerdictSource::Structural: {
      const int o = odd_count(input);
      return o == 0 ? "structural rule: no odd stacks"
                    : "structural rule: " + std::to_string(o) + " odd stacks, a legal move size";
    }
    case VerdictSource::Oracle: return "oracle on reduction " + v.evaluated.to_string();
    case VerdictSource::Unknown: return "no rule applies within the node budget";
    case VerdictSource::ConjectureAtLeastK: return "CONJECTURED at-least-k rule on reduction " + v.evaluated.to_string();
    default: return to_string(v.source) + " rule on reduction " + v.evaluated.to_string();
  }
}

int cmd_classify(const Globals& g, const ClassifyArgs& a, std::ostream& out) {
  const Position p = require_position(g);
  const GameSpec spec = require_game(g, stack_count(g, p, 0));
  if (p.size() != static_cast<std::size_t>(spec.n())) throw UsageError("position and game disagree on n");

  std::string mode = a.mode;
  if (a.oracle) {
    if (!mode.empty() && mode != "playable") throw UsageError("--oracle conflicts with --mode " + mode);
    mode = "playable";
  }

  ClassifierVerdict v;
  std::string via;
  if (mode.empty()) {
    ClassifyOptions opts;
    opts.node_budget = g.budget;
    opts.allow_conjecture = !a.no_conjecture;
    v = classify(p, spec, opts);
    via = describe(v, p);
  } else if (mode == "full") {
    v = {Solver(spec, GameGraphMode::Full, g.budget).outcome(p), VerdictSource::Oracle, p};
    via = "oracle on full graph of " + p.to_string();
  } else {
    const Position r = reduced(p, spec);
    v = {Solver(spec, GameGraphMode::Playable, g.budget).outcome(r), VerdictSource::Oracle, r};
    via = "oracle on reduction " + r.to_string();
  }

  std::vector<std::pair<MoveSelection, Position>> wins;
  if (a.explain) {
    Solver solver(spec, GameGraphMode::Playable, g.budget);
    for (const MoveSelection& mv : solver.winning_moves(p)) wins.emplace_back(mv, apply_move(p, mv, spec));
  }

  if (g.json()) {
    json j{{"position", to_json(p)},
           {"game", format_game(spec)},
           {"n", spec.n()},
           {"outcome", v.outcome ? json(std::string(1, to_char(*v.outcome))) : json(nullptr)},
           {"source", to_string(v.source)},
           {"evaluated", to_json(v.evaluated)},
           {"conjectured", v.conjectured()}};
    if (a.explain) {
      json w = json::array();
      for (const auto& [mv, q] : wins) w.push_back({{"move", to_json(mv)}, {"result", to_json(q)}});
      j["winning_moves"] = w;
    }
    emit_json(g, j, out);
    if (g.json_path.empty()) return kExitOk;
  }

  out << (v.outcome ? std::string(1, to_char(*v.outcome)) : std::string("unknown")) << " (via " << via << ")\n";
  if (a.source) out << "source: " << to_string(v.source) << " evaluated " << v.evaluated.to_string() << '\n';
  if (a.explain) {
    if (wins.empty()) out << "winning moves: none\n";
    else out << "winning moves:\n";
    for (const auto& [mv, q] : wins) out << "  " << mv.to_string() << " -> " << q.to_string() << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- reduce

struct ReduceArgs {
  std::string trace;
  std::string algorithm;
};

std::string interval(const LinearRow& r) {
  return "[" + std::to_string(r.lo) + "," + (r.hi ? std::to_string(*r.hi) + "]" : std::string("inf)"));
}

int cmd_reduce(const Globals& g, const ReduceArgs& a, std::ostream& out) {
  const Position p = require_position(g);
  const GameSpec spec = require_game(g, stack_count(g, p, 0));
  std::string alg = a.algorithm;
  if (a.trace == "table1") {
    if (alg == "linear") throw UsageError("--trace table1 traces the iterative algorithm");
    alg = "iterative";
  } else if (a.trace == "table2") {
    if (alg == "iterative") throw UsageError("--trace table2 traces the linear algorithm");
    alg = "linear";
  }
  if (alg.empty()) alg = "linear";
  const bool traced = !a.trace.empty();
  const ReductionResult res = alg == "iterative" ? reduce_iterative(p, spec, traced) : reduce_linear(p, spec, traced);

  if (g.json()) {
    json j{{"input", to_json(p)},
           {"game", format_game(spec)},
           {"reduced", to_json(res.reduced)},
           {"unplayable", res.unplayable},
           {"algorithm", alg},
           {"steps", res.steps}};
    if (traced) {
      json rows = json::array();
      if (a.trace == "table1") {
        for (std::size_t i = 0; i < res.trace->iterative.size(); ++i) {
          const auto& r = res.trace->iterative[i];
          rows.push_back({{"i", i}, {"iterate", to_json(r.iterate)}, {"nirb", r.nirb}, {"reduced", r.reduced}});
        }
        j["trace"] = {{"kind", "table1"}, {"rows", rows}};
      } else {
        for (const auto& r : res.trace->linear)
          rows.push_back({{"j", r.j},
                          {"divisor", r.divisor},
                          {"m", r.candidate},
                          {"lo", r.lo},
                          {"hi", r.hi ? json(*r.hi) : json(nullptr)},
                          {"hit", r.hit}});
        j["trace"] = {{"kind", "table2"}, {"partial_sums", res.trace->partial_sums}, {"rows", rows}};
      }
    }
    emit_json(g, j, out);
    if (g.json_path.empty()) return kExitOk;
  }

  if (a.trace == "table1") {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < res.trace->iterative.size(); ++i) {
      const auto& r = res.trace->iterative[i];
      rows.push_back({std::to_string(i), r.iterate.to_string(), std::to_string(r.nirb), r.reduced ? "Y (STOP)" : "N"});
    }
    out << render_table({"i", "iterate", "x* = floor(sum/a)", "reduced"}, rows);
  } else if (a.trace == "table2") {
    const auto& t = *res.trace;
    const std::size_t n = p.size();
    const auto a_min = static_cast<std::size_t>(spec.min_move());
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i <= n; ++i) {
      std::vector<std::string> row{std::to_string(i), std::to_string(t.partial_sums[i]), "", "", "", "", ""};
      const std::size_t j = n - i;
      if (j < a_min) {
        row[2] = std::to_string(j);
        row[3] = std::to_string(a_min - j);
        for (const LinearRow& r : t.linear)
          if (r.j == j) {
            row[4] = std::to_string(r.candidate);
            row[5] = interval(r);
            row[6] = r.hit ? "Y (STOP)" : "N";
          }
      }
      rows.push_back(row);
    }
    out << render_table({"i", "s[i]", "j", "a-j", "m = floor(s[n-j]/(a-j))", "interval", "m in interval"}, rows);
  }
  out << "input       " << p.to_string() << '\n'
      << "reduced     " << res.reduced.to_string() << '\n'
      << "unplayable  (" << format_heights(Position(res.unplayable)) << ")\n"
      << "algorithm   " << alg << ", " << res.steps << (alg == "iterative" ? " chops" : " rows") << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- moves

int cmd_moves(const Globals& g, bool distinct, std::ostream& out) {
  const Position p = require_position(g);
  const GameSpec spec = require_game(g, stack_count(g, p, 0));
  if (distinct) {
    const auto opts = distinct_options(p, spec);
    if (g.json()) {
      json j = json::array();
      for (const Position& q : opts) j.push_back(to_json(q));
      emit_json(g, json{{"position", to_json(p)}, {"game", format_game(spec)}, {"options", j}}, out);
      if (g.json_path.empty()) return kExitOk;
    }
    for (const Position& q : opts) out << q.to_string() << '\n';
    if (opts.empty()) out << "no moves\n";
    return kExitOk;
  }
  const auto moves = legal_moves(p, spec);
  if (g.json()) {
    json j = json::array();
    for (const MoveSelection& mv : moves) j.push_back({{"move", to_json(mv)}, {"result", to_json(apply_move(p, mv, spec))}});
    emit_json(g, json{{"position", to_json(p)}, {"game", format_game(spec)}, {"moves", j}}, out);
    if (g.json_path.empty()) return kExitOk;
  }
  for (const MoveSelection& mv : moves) out << mv.to_string() << " -> " << apply_move(p, mv, spec).to_string() << '\n';
  if (moves.empty()) out << "no moves\n";
  return kExitOk;
}

// ---------------------------------------------------------------- grid

struct GridArgs {
  std::string source = "closedform";
  Height max_height = 6;
  std::string format = "text";
  std::string compare;
  std::string variant = "printed";
};

const char* kind_name(CellKind k) {
  switch (k) {
    case CellKind::P: return "P";
    case CellKind::N: return "N";
    case CellKind::ParityImpossible: return "parity";
    case CellKind::Mixed: return "mixed";
    case CellKind::Empty: return "empty";
  }
  return "empty";
}

int cmd_grid(const Globals& g, const GridArgs& a, std::ostream& out) {
  const int n = stack_count(g, maybe_position(g), 4);
  const GameSpec spec = g.game.empty() ? GameSpec::exact(n, n - 1) : parse_game(g.game, n);
  SweepBounds b;
  b.n = n;
  b.max_height = a.max_height;
  b.node_budget = g.budget;
  const GridSource src = a.source == "oracle" ? GridSource::Oracle : GridSource::ClosedForm;
  const ConjectureVariant variant = a.variant == "row-parity" ? ConjectureVariant::ParityOfRow : ConjectureVariant::Printed;
  const PositionGrid grid = grid_emit(spec, b, src, variant);

  std::optional<GameSpec> other;
  if (!a.compare.empty() && a.compare != "none") other = parse_game(a.compare, n);
  else if (a.compare.empty() && n >= 3 && spec.moves().size() == 2 && spec.min_move() == n - 1)
    other = GameSpec::exact(n, n - 1);
  std::vector<PositionType> changed;
  if (other) changed = grid_difference(grid_emit(*other, b, src, variant), grid);

  if (a.format == "json" || g.json()) {
    json cells = json::array();
    for (std::uint64_t s = 0; s < grid.rows; ++s)
      for (int o = 0; o <= n; ++o) {
        const GridCell& c = grid.at(s, o);
        cells.push_back({{"s", s}, {"o", o}, {"kind", kind_name(c.kind)}, {"p_count", c.p_count}, {"n_count", c.n_count}});
      }
    json j{{"game", format_game(spec)},
           {"n", n},
           {"rows", grid.rows},
           {"source", a.source},
           {"conjectured", grid.conjectured},
           {"cells", cells}};
    if (src == GridSource::Oracle) j["max_height"] = a.max_height;
    if (other) {
      json c = json::array();
      for (PositionType t : changed) c.push_back(to_json(t));
      j["compared_with"] = format_game(*other);
      j["changed"] = c;
    }
    emit_json(g, j, out);
    if (g.json_path.empty()) return kExitOk;
  }
  if (a.format == "csv") {
    out << render_grid_csv(grid);
    return kExitOk;
  }
  out << render_grid_text(grid);
  if (other) {
    out << "changed vs " << format_game(*other) << ":";
    if (changed.empty()) out << " none";
    for (PositionType t : changed) out << " (" << t.s << "," << t.o << ")";
    out << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string check = "all";
  Height max_height = 6;
  unsigned workers = 1;
  bool mutated = false;
  bool strict = false;
  bool list = false;
  bool timing = false;
};

json report_json(const VerificationReport& r, bool timing) {
  json v = json::array();
  for (const Violation& x : r.violations)
    v.push_back({{"position", x.position}, {"expected", x.expected}, {"observed", x.observed}});
  json j{{"check", r.check},     {"game", r.game},           {"max_height", r.bounds.max_height},
         {"examined", r.examined}, {"passed", r.passed()},   {"informational", r.informational},
         {"mutated", r.mutated}, {"notes", r.notes},         {"violations", v}};
  if (timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

int cmd_verify(const Globals& g, const VerifyArgs& a, std::ostream& out) {
  if (a.list) {
    for (const CheckInfo& c : check_registry()) out << c.name << "  " << c.description << '\n';
    return kExitOk;
  }
  const int n = stack_count(g, std::nullopt, 4);
  std::optional<GameSpec> spec;
  if (!g.game.empty()) spec = parse_game(g.game, n);
  SweepBounds b;
  b.n = n;
  b.max_height = a.max_height;
  b.node_budget = g.budget;
  b.workers = std::max(1u, a.workers);

  std::vector<const CheckInfo*> todo;
  if (a.check == "all") {
    for (const CheckInfo& c : check_registry()) todo.push_back(&c);
  } else {
    todo.push_back(&find_check(a.check));
  }

  std::vector<VerificationReport> reports;
  std::vector<std::string> skipped;
  for (const CheckInfo* c : todo) {
    const GameSpec game = spec ? *spec : c->default_game(n);
    if (!c->applies(game)) {
      if (a.check != "all") throw UsageError("check '" + c->name + "' does not cover " + game.to_string());
      skipped.push_back(c->name);
      continue;
    }
    reports.push_back(c->run(game, b, a.mutated));
  }

  std::size_t failed = 0, findings = 0;
  for (const auto& r : reports) {
    if (r.passed()) continue;
    (r.informational ? findings : failed)++;
  }

  if (g.json()) {
    json rs = json::array();
    for (const auto& r : reports) rs.push_back(report_json(r, a.timing));
    json j{{"seed", g.seed},
           {"bounds", {{"n", n}, {"max_height", a.max_height}, {"node_budget", g.budget}, {"workers", b.workers}}},
           {"reports", rs},
           {"skipped", skipped},
           {"failed", failed},
           {"findings", findings}};
    emit_json(g, j, out);
  }
  if (!g.json() || !g.json_path.empty()) {
    for (const auto& r : reports) {
      out << render_report_text(r);
      if (a.timing) out << "  elapsed " << r.elapsed_ms << " ms\n";
    }
    for (const auto& s : skipped) out << "SKIP " << s << "  (game not covered)\n";
    out << reports.size() << " checks run, " << (reports.size() - failed - findings) << " passed, " << failed
        << " failed, " << findings << " reported findings; seed " << g.seed << '\n';
  }
  return a.strict && failed > 0 ? kExitViolation : kExitOk;
}

// ---------------------------------------------------------------- play

struct PlayArgs {
  bool human_first = false;
  std::string transcript;
};

std::optional<MoveSelection> parse_human_move(const std::string& line) {
  MoveSelection mv;
  for (char c : line)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == ',' || c == ' ' || c == '\t' || c == '{' || c == '}'))
      return std::nullopt;
  std::string cleaned = line;
  std::replace_if(cleaned.begin(), cleaned.end(), [](char c) { return c == ',' || c == '{' || c == '}'; }, ' ');
  std::istringstream cs(cleaned);
  std::size_t i;
  while (cs >> i) mv.indices.push_back(i);
  std::sort(mv.indices.begin(), mv.indices.end());
  if (std::adjacent_find(mv.indices.begin(), mv.indices.end()) != mv.indices.end()) return std::nullopt;
  return mv;
}

int cmd_play(const Globals& g, const PlayArgs& a, std::ostream& out, std::istream& in) {
  Position cur = require_position(g);
  const GameSpec spec = require_game(g, stack_count(g, cur, 0));
  std::ofstream transcript;
  if (!a.transcript.empty()) {
    transcript.open(a.transcript);
    if (!transcript) throw UsageError("cannot write " + a.transcript);
  }
  Solver solver(spec, GameGraphMode::Playable, g.budget);
  const auto known = [&](const Position& p) -> std::optional<Outcome> {
    try {
      return solver.outcome(p);
    } catch (const BudgetExceeded&) {
      return std::nullopt;
    }
  };
  const bool m_rule = spec.moves().size() == 1 && spec.min_move() == spec.n() - 1;

  out << "game " << spec.to_string() << ", start " << cur.to_string() << ", "
      << (a.human_first ? "human" : "engine") << " moves first\n";
  bool human = a.human_first;
  const auto record = [&](const Position& p) {
    out << p.to_string() << '\n';
    if (transcript) transcript << p.to_string() << '\n';
  };
  record(cur);
  while (true) {
    const auto moves = legal_moves(cur, spec);
    if (moves.empty()) {
      out << "no moves: player to move loses\n" << (human ? "engine" : "human") << " wins\n";
      return kExitOk;
    }
    if (human) {
      out << "your move (stack indices, 0-based; q to quit)> " << std::flush;
      std::string line;
      if (!std::getline(in, line)) {
        out << "\ninput closed, session ended\n";
        return kExitOk;
      }
      if (line == "q" || line == "quit") {
        out << "session ended\n";
        return kExitOk;
      }
      const auto mv = parse_human_move(line);
      if (!mv || std::find(moves.begin(), moves.end(), *mv) == moves.end()) {
        out << "illegal move '" << line << "'; legal moves:";
        for (const auto& m : moves) out << ' ' << m.to_string();
        out << '\n';
        continue;
      }
      cur = apply_move(cur, *mv, spec);
      out << "human: " << mv->to_string() << '\n';
    } else {
      const auto before = known(cur);
      std::optional<MoveSelection> mv;
      try {
        const auto wins = solver.winning_moves(cur);
        if (!wins.empty()) mv = wins.front();
      } catch (const BudgetExceeded&) {
      }
      if (!mv && m_rule) mv = m_rule_move(cur, spec);
      if (!mv) mv = moves.front();
      const Position next = apply_move(cur, *mv, spec);
      const auto after = known(next);
      if (before && after && *after == Outcome::P && *before == Outcome::P)
        throw std::logic_error("engine moved from a P-position to a P-position");
      if (before == Outcome::N && after && *after != Outcome::P)
        throw std::logic_error("engine missed a winning move from " + cur.to_string());
      cur = next;
      out << "engine: " << mv->to_string() << '\n';
    }
    record(cur);
    human = !human;
  }
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  int min_exp = 10;
  int max_exp = 40;
  int step = 5;
  int reps = 2000;
  bool sweep = false;
};

int cmd_bench(const Globals& g, const BenchArgs& a, std::ostream& out) {
  if (a.min_exp < 1 || a.max_exp > 60 || a.min_exp > a.max_exp || a.step < 1 || a.reps < 1)
    throw UsageError("bench needs 1 <= --min-exp <= --max-exp <= 60, --step >= 1, --reps >= 1");
  if (a.sweep) {
    out << "n,max_height,positions,oracle_ms\n";
    for (int n = 3; n <= 6; ++n) {
      const GameSpec spec = GameSpec::exact(n, n - 1);
      const auto t0 = std::chrono::steady_clock::now();
      Solver solver(spec, GameGraphMode::Full, g.budget);
      const auto roots = enumerate_canonical(n, 7);
      for (const Position& p : roots) solver.outcome(p);
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      out << n << ",7," << roots.size() << ',' << ms << '\n';
    }
    return kExitOk;
  }
  const int n = stack_count(g, maybe_position(g), 8);
  const GameSpec spec = g.game.empty() ? GameSpec::exact(n, std::min(n, 5)) : parse_game(g.game, n);
  std::mt19937_64 rng(g.seed);
  std::uniform_int_distribution<Height> low(0, 200);
  std::vector<Height> base(static_cast<std::size_t>(n - 1));
  for (Height& h : base) h = low(rng);

  out << "# seed " << g.seed << ", game " << spec.to_string() << ", reps " << a.reps << '\n';
  out << "max_height,linear_ns,iterative_ns,linear_steps,iterative_steps\n";
  const auto time_ns = [&](auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    volatile std::size_t sink = 0;
    for (int r = 0; r < a.reps; ++r) sink = sink + fn();
    return std::chrono::duration<double, std::nano>(std::chrono::steady_clock::now() - t0).count() / a.reps;
  };
  for (int e = a.min_exp; e <= a.max_exp; e += a.step) {
    std::vector<Height> v = base;
    v.push_back(Height{1} << e);
    const Position p(v);
    const auto lin = reduce_linear(p, spec);
    const auto it = reduce_iterative(p, spec);
    const double tl = time_ns([&] { return reduce_linear(p, spec).steps; });
    const double ti = time_ns([&] { return reduce_iterative(p, spec).steps; });
    out << "2^" << e << ',' << static_cast<long long>(tl) << ',' << static_cast<long long>(ti) << ',' << lin.steps
        << ',' << it.steps << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"Solver and verifier for Slow SetNim(n, A)", "slow-setnim"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--game", g.game, "move sizes: exact:K | atleast:K | atmost:K | set:K1,K2 (K may be n, n-1, ...)");
  app.add_option("--n", g.n, "number of stacks (default: length of --pos)");
  app.add_option("--pos", g.pos, "stack heights, e.g. 1,2,5,6");
  g.json_opt = app.add_option("--json", g.json_path, "JSON output; with a path, write it there")->expected(0, 1);
  app.add_option("--seed", g.seed, "random seed (bench)")->capture_default_str();
  app.add_option("--budget", g.budget, "node budget for oracle searches")->capture_default_str();

  ClassifyArgs ca;
  auto* classify_cmd = app.add_subcommand("classify", "outcome class of --pos");
  classify_cmd->add_option("--mode", ca.mode, "force the oracle on the full or playable graph")
      ->check(CLI::IsMember({"full", "playable"}));
  classify_cmd->add_flag("--explain", ca.explain, "list winning moves");
  classify_cmd->add_flag("--source", ca.source, "print the verdict provenance");
  classify_cmd->add_flag("--no-conjecture", ca.no_conjecture, "never use conjectured rules");
  classify_cmd->add_flag("--oracle", ca.oracle, "skip the rules; oracle on the reduction");

  ReduceArgs ra;
  auto* reduce_cmd = app.add_subcommand("reduce", "reduce --pos");
  reduce_cmd->add_option("--trace", ra.trace, "table1 (iterative) or table2 (linear)")
      ->check(CLI::IsMember({"table1", "table2"}));
  reduce_cmd->add_option("--algorithm", ra.algorithm, "linear (default) or iterative")
      ->check(CLI::IsMember({"linear", "iterative"}));

  bool distinct = false;
  auto* moves_cmd = app.add_subcommand("moves", "legal moves from --pos");
  moves_cmd->add_flag("--distinct", distinct, "distinct canonical options only");

  GridArgs ga;
  auto* grid_cmd = app.add_subcommand("grid", "(s,o) outcome grid");
  grid_cmd->add_option("--source", ga.source)->check(CLI::IsMember({"closedform", "oracle"}))->capture_default_str();
  grid_cmd->add_option("--max-height", ga.max_height, "height bound for --source oracle")->capture_default_str();
  grid_cmd->add_option("--format", ga.format)->check(CLI::IsMember({"text", "csv", "json"}))->capture_default_str();
  grid_cmd->add_option("--compare", ga.compare, "list cells differing from this game (none to disable)");
  grid_cmd->add_option("--variant", ga.variant, "conjectured middle row: printed or row-parity")
      ->check(CLI::IsMember({"printed", "row-parity"}))
      ->capture_default_str();

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "bounded exhaustive checks");
  verify_cmd->add_option("--check", va.check, "check name or all")->capture_default_str();
  verify_cmd->add_option("--max-height", va.max_height)->capture_default_str();
  verify_cmd->add_option("--workers", va.workers, "sweep threads")->capture_default_str();
  verify_cmd->add_flag("--mutated", va.mutated, "run the broken control rules");
  verify_cmd->add_flag("--strict", va.strict, "exit 2 on violations");
  verify_cmd->add_flag("--list", va.list, "list checks");
  verify_cmd->add_flag("--timing", va.timing, "print elapsed times");

  PlayArgs pa;
  auto* play_cmd = app.add_subcommand("play", "play against the engine");
  play_cmd->add_flag("--human-first", pa.human_first);
  play_cmd->add_option("--transcript", pa.transcript, "write positions, one per line");

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "time the two reduction algorithms (CSV)");
  bench_cmd->add_option("--min-exp", ba.min_exp)->capture_default_str();
  bench_cmd->add_option("--max-exp", ba.max_exp)->capture_default_str();
  bench_cmd->add_option("--step", ba.step)->capture_default_str();
  bench_cmd->add_option("--reps", ba.reps)->capture_default_str();
  bench_cmd->add_flag("--sweep", ba.sweep, "time oracle sweeps instead");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  if (argv.empty()) argv.push_back("slow-setnim");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    if (*classify_cmd) return cmd_classify(g, ca, out);
    if (*reduce_cmd) return cmd_reduce(g, ra, out);
    if (*moves_cmd) return cmd_moves(g, distinct, out);
    if (*grid_cmd) return cmd_grid(g, ga, out);
    if (*verify_cmd) return cmd_verify(g, va, out);
    if (*play_cmd) return cmd_play(g, pa, out, in);
    if (*bench_cmd) return cmd_bench(g, ba, out);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "; raise --budget or shrink the instance\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace slowsetnim::cli
