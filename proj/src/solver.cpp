#include "slowsetnim/solver.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "slowsetnim/reduction.hpp"

namespace slowsetnim {

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<Height>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (Height x : v) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

Solver::Solver(GameSpec spec, GameGraphMode mode, std::size_t node_budget)
    : spec_(std::move(spec)), mode_(mode), budget_(node_budget) {}

Position Solver::key(const Position& p) const {
  if (p.size() != static_cast<std::size_t>(spec_.n()))
    throw std::invalid_argument("position has " + std::to_string(p.size()) + " stacks, game has " +
                                std::to_string(spec_.n()));
  return mode_ == GameGraphMode::Playable ? reduced(p, spec_) : p;
}

std::vector<Position> Solver::options(const Position& p) const {
  auto opts = distinct_options(p, spec_);
  if (mode_ == GameGraphMode::Full) return opts;
  for (Position& q : opts) q = reduced(q, spec_);
  std::sort(opts.begin(), opts.end());
  opts.erase(std::unique(opts.begin(), opts.end()), opts.end());
  return opts;
}

Outcome Solver::outcome(const Position& root) {
  const Position start = key(root);
  if (auto it = memo_.find(start); it != memo_.end()) return it->second;

  // Iterative post-order DFS; a frame is resolved once some option is P or
  // all options are known N.
  struct Frame {
    Position pos;
    std::vector<Position> opts;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  stack.push_back({start, options(start), 0});

  while (!stack.empty()) {
    Frame& f = stack.back();
    bool resolved = false;
    Outcome result = Outcome::P;
    while (f.next < f.opts.size()) {
      auto it = memo_.find(f.opts[f.next]);
      if (it == memo_.end()) break;
      if (it->second == Outcome::P) {
        result = Outcome::N;
        resolved = true;
        break;
      }
      ++f.next;
    }
    if (!resolved && f.next == f.opts.size()) resolved = true;
    if (resolved) {
      if (memo_.size() >= budget_) throw BudgetExceeded(budget_);
      memo_.emplace(f.pos, result);
      stack.pop_back();
      continue;
    }
    Position child = f.opts[f.next];
    auto child_opts = options(child);
    stack.push_back({std::move(child), std::move(child_opts), 0});
  }
  return memo_.at(start);
}

std::vector<MoveSelection> Solver::winning_moves(const Position& p) {
  const Position base = key(p);
  std::vector<MoveSelection> out;
  for (const MoveSelection& mv : legal_moves(base, spec_)) {
    if (outcome(apply_move(base, mv, spec_)) == Outcome::P) out.push_back(mv);
  }
  return out;
}

Outcome outcome(const Position& p, const GameSpec& spec, GameGraphMode mode, std::size_t node_budget) {
  return Solver(spec, mode, node_budget).outcome(p);
}

std::vector<MoveSelection> winning_moves(const Position& p, const GameSpec& spec, GameGraphMode mode,
                                         std::size_t node_budget) {
  return Solver(spec, mode, node_budget).winning_moves(p);
}

TerminalSet terminal_positions(const Position& p, const GameSpec& spec, std::size_t node_budget) {
  TerminalSet out;
  std::unordered_set<Position, PositionHash> seen{p};
  std::vector<Position> todo{p};
  while (!todo.empty()) {
    Position q = std::move(todo.back());
    todo.pop_back();
    auto opts = distinct_options(q, spec);
    if (opts.empty()) out.insert(q);
    for (Position& r : opts) {
      if (seen.insert(r).second) {
        if (seen.size() > node_budget) throw BudgetExceeded(node_budget);
        todo.push_back(std::move(r));
      }
    }
  }
  return out;
}

std::vector<Height> unplayable_oracle(std::span<const Height> heights, const GameSpec& spec,
                                      std::size_t node_budget) {
  const std::size_t n = heights.size();
  if (n != static_cast<std::size_t>(spec.n()))
    throw std::invalid_argument("position has " + std::to_string(n) + " stacks, game has " +
                                std::to_string(spec.n()));
  std::vector<Height> start(heights.begin(), heights.end());
  std::vector<Height> best(n, std::numeric_limits<Height>::max());
  std::unordered_set<std::vector<Height>, VectorHash> seen{start};
  std::vector<std::vector<Height>> todo{start};

  while (!todo.empty()) {
    std::vector<Height> q = std::move(todo.back());
    todo.pop_back();
    const auto moves = legal_selections(q, spec);
    if (moves.empty()) {
      for (std::size_t i = 0; i < n; ++i) best[i] = std::min(best[i], q[i]);
      continue;
    }
    for (const MoveSelection& mv : moves) {
      std::vector<Height> r = q;
      for (std::size_t idx : mv.indices) --r[idx];
      if (seen.insert(r).second) {
        if (seen.size() > node_budget) throw BudgetExceeded(node_budget);
        todo.push_back(std::move(r));
      }
    }
  }
  return best;
}

std::vector<Height> unplayable_oracle(const Position& p, const GameSpec& spec, std::size_t node_budget) {
  return unplayable_oracle(p.heights(), spec, node_budget);
}

MoveSelection m_rule_move(const Position& p, const GameSpec& spec) {
  const int n = spec.n();
  if (spec.moves().size() != 1 || spec.min_move() != n - 1)
    throw std::invalid_argument("the M-rule is defined for A = {n-1}");
  if (p.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("position has wrong stack count");
  if (is_terminal(p, spec)) throw std::invalid_argument("M-rule needs a non-terminal position");

  const bool all_odd = std::all_of(p.begin(), p.end(), [](Height h) { return h & 1; });
  std::size_t omit = 0;
  if (all_odd) {
    omit = static_cast<std::size_t>(std::find(p.begin(), p.end(), p.max()) - p.begin());
  } else {
    // Sorted order puts the smallest even stack first among evens.
    omit = static_cast<std::size_t>(
        std::find_if(p.begin(), p.end(), [](Height h) { return (h & 1) == 0; }) - p.begin());
  }
  MoveSelection mv;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (i != omit) mv.indices.push_back(i);
  return mv;
}

}  // namespace slowsetnim
