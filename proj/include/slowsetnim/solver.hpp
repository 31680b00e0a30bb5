#pragma once

// Brute-force ground truth: normal-play outcome classes over the full game
// graph or over the playable graph (every option reduced), terminal sets,
// the unplayable-token oracle and strategy helpers.

#include <cstddef>
#include <set>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "slowsetnim/core.hpp"

namespace slowsetnim {

enum class GameGraphMode { Full, Playable };

inline constexpr std::size_t kDefaultNodeBudget = 10'000'000;

class BudgetExceeded : public std::runtime_error {
public:
  explicit BudgetExceeded(std::size_t budget)
      : std::runtime_error("desk-scale bounds exceeded: more than " + std::to_string(budget) +
                           " states"),
        budget_(budget) {}
  std::size_t budget() const noexcept { return budget_; }

private:
  std::size_t budget_;
};

using TerminalSet = std::set<Position>;

// Memoized outcome oracle for one game and one graph mode. Entries are never
// overwritten. Not thread-safe; give each worker its own Solver.
class Solver {
public:
  Solver(GameSpec spec, GameGraphMode mode, std::size_t node_budget = kDefaultNodeBudget);

  // In Playable mode the root is reduced first.
  Outcome outcome(const Position& p);

  // Legal moves of p (of r(p) in Playable mode) leading to a P-position.
  std::vector<MoveSelection> winning_moves(const Position& p);

  // Options in the mode's graph: distinct_options, reduced in Playable mode.
  std::vector<Position> options(const Position& p) const;

  const GameSpec& spec() const noexcept { return spec_; }
  GameGraphMode mode() const noexcept { return mode_; }
  std::size_t memo_size() const noexcept { return memo_.size(); }
  std::size_t node_budget() const noexcept { return budget_; }

private:
  Position key(const Position& p) const;

  GameSpec spec_;
  GameGraphMode mode_;
  std::size_t budget_;
  std::unordered_map<Position, Outcome, PositionHash> memo_;
};

// Convenience one-shot query with a private memo.
Outcome outcome(const Position& p, const GameSpec& spec, GameGraphMode mode = GameGraphMode::Full,
                std::size_t node_budget = kDefaultNodeBudget);

std::vector<MoveSelection> winning_moves(const Position& p, const GameSpec& spec,
                                         GameGraphMode mode = GameGraphMode::Full,
                                         std::size_t node_budget = kDefaultNodeBudget);

// Canonical terminal positions reachable from p.
TerminalSet terminal_positions(const Position& p, const GameSpec& spec,
                               std::size_t node_budget = kDefaultNodeBudget);

// u_i = min over reachable terminals t of t_i, with stacks tracked by label
// (no re-sorting along the way). Accepts any stack order; the result is
// aligned with the input.
std::vector<Height> unplayable_oracle(std::span<const Height> heights, const GameSpec& spec,
                                      std::size_t node_budget = kDefaultNodeBudget);
std::vector<Height> unplayable_oracle(const Position& p, const GameSpec& spec,
                                      std::size_t node_budget = kDefaultNodeBudget);

// For A = {n-1}: omit a maximal stack if every height is odd, otherwise a
// smallest even stack; ties go to the lowest index.
MoveSelection m_rule_move(const Position& p, const GameSpec& spec);

}  // namespace slowsetnim
