#pragma once

// Bounded mechanical verification: exhaustive sweeps over canonical
// positions, (s, o) position grids, and one registered check per result.
//
// Every check can also run "mutated": a deliberately broken version of the
// rule under test, which must produce violations at the default bounds.

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "slowsetnim/closedform.hpp"
#include "slowsetnim/core.hpp"
#include "slowsetnim/solver.hpp"

namespace slowsetnim {

struct SweepBounds {
  int n = 4;
  Height max_height = 6;
  std::size_t node_budget = kDefaultNodeBudget;
  unsigned workers = 1;  // roots are split into contiguous chunks
};

// All non-decreasing sequences of length n with entries <= max_height.
std::vector<Position> enumerate_canonical(int n, Height max_height);
// The NIRB-reduced subset of enumerate_canonical(spec.n(), bounds.max_height).
std::vector<Position> enumerate_reduced(const GameSpec& spec, const SweepBounds& bounds);

// ---------------------------------------------------------------- grids

enum class CellKind { Empty, P, N, ParityImpossible, Mixed };

struct GridCell {
  CellKind kind = CellKind::Empty;
  std::size_t p_count = 0;
  std::size_t n_count = 0;
};

enum class GridSource { ClosedForm, Oracle };

struct PositionGrid {
  int n = 0;
  std::uint64_t rows = 0;  // 2 * min(A)
  std::string game;
  GridSource source = GridSource::ClosedForm;
  bool conjectured = false;
  std::vector<GridCell> cells;  // row-major, (rows) x (n + 1)

  const GridCell& at(std::uint64_t s, int o) const { return cells[s * (n + 1) + o]; }
  GridCell& at(std::uint64_t s, int o) { return cells[s * (n + 1) + o]; }
};

// Closed-form grids exist where the outcome of a reduced position depends on
// (s, o) only: A = {n-1}, {n-1,n}, {k..n} (conjectured), {1}, {1..n}, and
// {1,n} for odd n. Throws std::invalid_argument otherwise.
PositionGrid grid_emit(const GameSpec& spec, const SweepBounds& bounds, GridSource source,
                       ConjectureVariant variant = ConjectureVariant::Printed);

// 'P', '·' (parity-impossible), ' ' (N), 'M' (mixed), '?' (no position seen).
std::string render_grid_text(const PositionGrid& grid);
std::string render_grid_csv(const PositionGrid& grid);

// Cells whose kinds differ.
std::vector<PositionType> grid_difference(const PositionGrid& a, const PositionGrid& b);

// ---------------------------------------------------------------- reports

struct Violation {
  std::string position;
  std::string expected;
  std::string observed;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct VerificationReport {
  std::string check;
  std::string game;
  SweepBounds bounds;
  std::size_t examined = 0;
  std::vector<Violation> violations;
  std::vector<std::string> notes;
  double elapsed_ms = 0.0;
  bool mutated = false;
  bool informational = false;  // violations are findings, not failures

  bool passed() const noexcept { return violations.empty(); }
};

// Human-readable table, first `max_shown` violations.
std::string render_report_text(const VerificationReport& r, std::size_t max_shown = 10);

// ---------------------------------------------------------------- checks

struct CheckInfo {
  std::string name;
  std::string description;
  std::function<bool(const GameSpec&)> applies;
  std::function<GameSpec(int n)> default_game;
  std::function<VerificationReport(const GameSpec&, const SweepBounds&, bool mutated)> run;
};

const std::vector<CheckInfo>& check_registry();
const CheckInfo& find_check(std::string_view name);

// Throws std::invalid_argument for an unknown name or a game the check does
// not cover; BudgetExceeded if the sweep outgrows bounds.node_budget.
VerificationReport check_theorem(std::string_view name, const GameSpec& spec, const SweepBounds& bounds,
                                 bool mutated = false);

// Extending `base` by the extra sizes of `ext` turns exactly the Q cells
// from P to N. Checks the three linking conditions on reduced positions, and
// the conclusion against the extended game's oracle. Both games must share
// min(A).
VerificationReport check_extension(const GameSpec& base, const GameSpec& ext,
                                   const std::set<PositionType>& q, const SweepBounds& bounds);

struct ConjectureSummary {
  std::size_t examined = 0;
  std::size_t agreements = 0;
  std::optional<Position> first_counterexample;
  double agreement_percent() const noexcept {
    return examined == 0 ? 100.0 : 100.0 * static_cast<double>(agreements) / static_cast<double>(examined);
  }
};

// The conjectured at-least-k pattern against the oracle on reduced
// positions of SN(n, {k..n}).
VerificationReport check_conjecture(int n, int k, const SweepBounds& bounds,
                                    ConjectureVariant variant = ConjectureVariant::Printed);
ConjectureSummary conjecture_summary(int n, int k, const SweepBounds& bounds, ConjectureVariant variant);

// From every N-position of SN(n, {n-1}) the M-rule move reaches a P-position.
VerificationReport check_m_rule(int n, const SweepBounds& bounds);

}  // namespace slowsetnim
