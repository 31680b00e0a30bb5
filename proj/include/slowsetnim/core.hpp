#pragma once

// Positions, games and moves of Slow SetNim(n, A).
//
// A position is a multiset of n stack heights kept sorted non-decreasing.
// A move selects exactly l stacks, l in A, each with at least one token, and
// removes one token from every selected stack. Empty stacks stay in the
// position, so n never changes.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace slowsetnim {

using Height = std::uint64_t;

class Position {
public:
  Position() = default;
  explicit Position(std::vector<Height> heights);
  Position(std::initializer_list<Height> heights);

  std::size_t size() const noexcept { return heights_.size(); }
  bool empty() const noexcept { return heights_.empty(); }
  Height operator[](std::size_t i) const { return heights_[i]; }
  Height max() const noexcept { return heights_.empty() ? 0 : heights_.back(); }
  Height min() const noexcept { return heights_.empty() ? 0 : heights_.front(); }

  std::span<const Height> heights() const noexcept { return heights_; }
  auto begin() const noexcept { return heights_.begin(); }
  auto end() const noexcept { return heights_.end(); }

  // Number of nonzero stacks.
  std::size_t nonzero_count() const noexcept;

  std::string to_string() const;

  friend auto operator<=>(const Position&, const Position&) = default;
  friend bool operator==(const Position&, const Position&) = default;

private:
  std::vector<Height> heights_;
};

struct PositionHash {
  std::size_t operator()(const Position& p) const noexcept;
};

// The game: n stacks, and the set A of allowed selection sizes.
class GameSpec {
public:
  // Throws std::invalid_argument unless n >= 1 and A is a non-empty subset
  // of {1..n}. Duplicates in `moves` are collapsed.
  GameSpec(int n, std::vector<int> moves);

  int n() const noexcept { return n_; }
  std::span<const int> moves() const noexcept { return moves_; }
  int min_move() const noexcept { return moves_.front(); }
  int max_move() const noexcept { return moves_.back(); }
  bool allows(std::size_t count) const noexcept;

  // The family helpers used throughout: {k}, {k..n}, {1..k}.
  static GameSpec exact(int n, int k);
  static GameSpec at_least(int n, int k);
  static GameSpec at_most(int n, int k);

  // "{n-1}" style description with the set spelled out, e.g. "SN(4,{3})".
  std::string to_string() const;

  friend bool operator==(const GameSpec&, const GameSpec&) = default;

private:
  int n_;
  std::vector<int> moves_;
};

// Indices into a canonical position, strictly increasing.
struct MoveSelection {
  std::vector<std::size_t> indices;

  std::size_t size() const noexcept { return indices.size(); }
  std::string to_string() const;

  friend auto operator<=>(const MoveSelection&, const MoveSelection&) = default;
  friend bool operator==(const MoveSelection&, const MoveSelection&) = default;
};

// (s, o): token sum modulo 2*min(A), and the number of odd stacks.
struct PositionType {
  std::uint64_t s = 0;
  int o = 0;

  friend auto operator<=>(const PositionType&, const PositionType&) = default;
  friend bool operator==(const PositionType&, const PositionType&) = default;
};

enum class Outcome { P, N };

char to_char(Outcome o) noexcept;

Position canonicalize(std::vector<Height> heights);

// Sum of heights. Throws std::overflow_error if it does not fit 64 bits.
Height sigma(const Position& p);
Height sigma(std::span<const Height> heights);

int odd_count(const Position& p) noexcept;

PositionType position_type(const Position& p, const GameSpec& spec);

// floor(sigma(p) / min(A)).
Height nirb_value(const Position& p, const GameSpec& spec);

// min(A) * max(p) <= sigma(p). Equivalent to reducedness for n >= 3.
bool is_reduced(const Position& p, const GameSpec& spec);

// Clamp every height to m.
Position ctt(const Position& p, Height m);

// All legal selections, ordered by size then lexicographically.
std::vector<MoveSelection> legal_moves(const Position& p, const GameSpec& spec);

// Same enumeration over heights in the given order (no sorting).
std::vector<MoveSelection> legal_selections(std::span<const Height> heights, const GameSpec& spec);

bool is_terminal(const Position& p, const GameSpec& spec) noexcept;

// Throws std::invalid_argument if the selection is not legal for p.
Position apply_move(const Position& p, const MoveSelection& mv, const GameSpec& spec);

// Distinct canonical positions reachable in one move, sorted.
std::vector<Position> distinct_options(const Position& p, const GameSpec& spec);

// True iff the selection skips at least one stack of maximal height.
bool omits_max(const Position& p, const MoveSelection& mv) noexcept;

// Number of stacks of maximal height (0 for the empty position).
int max_multiplicity(const Position& p) noexcept;

}  // namespace slowsetnim

template <>
struct std::hash<slowsetnim::Position> {
  std::size_t operator()(const slowsetnim::Position& p) const noexcept {
    return slowsetnim::PositionHash{}(p);
  }
};
