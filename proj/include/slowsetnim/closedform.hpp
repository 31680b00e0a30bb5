#pragma once

// Constant-time outcome rules. The (s, o)-cell rules take the position type
// of a reduced position; the position-level wrappers check reducedness and
// throw std::invalid_argument on unreduced input. `classify` is the one
// place that reduces.

#include <cstddef>
#include <optional>
#include <string>

#include "slowsetnim/core.hpp"
#include "slowsetnim/solver.hpp"

namespace slowsetnim {

enum class VerdictSource {
  Structural,
  ExactAllButOne,
  AllButOneOrAll,
  OneOrAll,
  Single,
  AllStacks,
  MooreFull,
  ConjectureAtLeastK,
  Oracle,
  Unknown,
};

std::string to_string(VerdictSource s);

struct ClassifierVerdict {
  std::optional<Outcome> outcome;
  VerdictSource source = VerdictSource::Unknown;
  Position evaluated;  // the position the rule or oracle was applied to

  bool conjectured() const noexcept { return source == VerdictSource::ConjectureAtLeastK; }
};

// How the middle row of the conjectured at-least-k pattern is read.
//   Printed:     o has the parity of n, 0 <= o <= k-1
//   ParityOfRow: o has the parity of s = k-1, 0 <= o <= k-1
enum class ConjectureVariant { Printed, ParityOfRow };

// o = 0 => P; o in A => N; else nothing. Valid on any position.
std::optional<Outcome> structural_outcome(const Position& p, const GameSpec& spec);

// Cell rules. `n` is the stack count, k the minimal move.
Outcome exact_all_but_one_cell(PositionType t, int n);
Outcome all_but_one_or_all_cell(PositionType t, int n);
Outcome conjectured_at_least_k_cell(PositionType t, int n, int k,
                                    ConjectureVariant variant = ConjectureVariant::Printed);

// A = {n-1}; p reduced.
Outcome classify_exact_all_but_one(const Position& p, int n);
// A = {n-1, n}; p reduced.
Outcome classify_all_but_one_or_all(const Position& p, int n);
// A = {1, n}.
Outcome classify_one_or_all(const Position& p, int n);
// A = {1}.
Outcome classify_single(const Position& p);
// A = {n}.
Outcome classify_all_stacks(const Position& p);
// A = {1..n}.
Outcome classify_moore_full(const Position& p);
// A = {k..n}; p reduced. Conjectured, not proven.
Outcome conjectured_at_least_k(const Position& p, int n, int k,
                               ConjectureVariant variant = ConjectureVariant::Printed);

// Which closed-form rule (if any) covers this game exactly.
std::optional<VerdictSource> closed_form_rule(const GameSpec& spec);

// Applies the game's exact rule to a position (reduced where the rule
// requires it). Nullopt when the game has no exact rule.
std::optional<Outcome> closed_form_outcome(const Position& p, const GameSpec& spec);

struct ClassifyOptions {
  std::size_t node_budget = kDefaultNodeBudget;
  bool allow_conjecture = true;
  bool allow_closed_form = true;  // false: structural and oracle only
  bool allow_structural = true;
  bool allow_oracle = true;
};

// Structural rule on the input, then the exact rule on r(p), then the
// conjecture on r(p), then the playable-graph oracle on r(p). Unknown if
// nothing applies or the oracle runs out of budget.
ClassifierVerdict classify(const Position& p, const GameSpec& spec, const ClassifyOptions& opts = {});

}  // namespace slowsetnim
