#pragma once

// Reduction r(p) = p - u(p): strip the tokens no legal sequence of moves can
// ever remove. Two routes are provided: an iterative chop to the NIRB value,
// whose step count grows with the maximal height, and a prefix-sum scan whose
// work depends only on n.

#include <cstddef>
#include <optional>
#include <vector>

#include "slowsetnim/core.hpp"

namespace slowsetnim {

struct IterativeRow {
  Position iterate;
  Height nirb = 0;
  bool reduced = false;
};

// One inspected candidate of the prefix-sum scan. `j == 0` is the
// already-reduced test (candidate floor(S_n / a) against [p_n, inf)).
struct LinearRow {
  std::size_t j = 0;
  std::size_t divisor = 0;  // a - j
  Height candidate = 0;
  Height lo = 0;
  std::optional<Height> hi;  // empty: unbounded
  bool hit = false;
};

struct ReductionTrace {
  std::vector<IterativeRow> iterative;
  std::vector<Height> partial_sums;  // S_0 .. S_n
  std::vector<LinearRow> linear;
};

enum class ReductionAlgorithm { Iterative, Linear };

struct ReductionResult {
  Position reduced;
  std::vector<Height> unplayable;  // aligned with the canonical input
  std::size_t steps = 0;           // chops (iterative) or inspected rows (linear)
  ReductionAlgorithm algorithm = ReductionAlgorithm::Linear;
  std::optional<ReductionTrace> trace;
};

ReductionResult reduce_iterative(const Position& p, const GameSpec& spec, bool with_trace = false);
ReductionResult reduce_linear(const Position& p, const GameSpec& spec, bool with_trace = false);

// Default route (linear scan).
ReductionResult reduce(const Position& p, const GameSpec& spec);

// Shorthand for reduce(p, spec).reduced.
Position reduced(const Position& p, const GameSpec& spec);

// Exact test: is apply_move(p, mv) not reduced? Requires p reduced.
bool reduction_needed_after(const Position& p, const MoveSelection& mv, const GameSpec& spec);

// Necessary condition for reduction after a move on `ell` stacks from a
// reduced p with sigma(p) = a*p_n + r:
//   all maxima played:  ell > a and r < ell - a
//   a maximum omitted:  r < ell
bool reduction_possible_flags(const Position& p, int ell, bool omits_max, const GameSpec& spec);

// For A = {n-1}: the reduced option after omitting stack `omitted`, given in
// closed form. Throws std::invalid_argument unless p is reduced, `omitted`
// is a maximal stack and that move needs reduction.
Position reduced_option_closed_form(const Position& p, std::size_t omitted, const GameSpec& spec);

// (s', o') of that reduced option predicted from (s, o) and the number of
// maxima alone, for A = {n-1}.
PositionType reduced_option_type(PositionType t, int alpha, int n);

}  // namespace slowsetnim
