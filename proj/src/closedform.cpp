#include "slowsetnim/closedform.hpp"

#include <algorithm>

#include "slowsetnim/reduction.hpp"

namespace slowsetnim {

namespace {

bool same_parity(std::uint64_t s, int o) { return (s & 1) == static_cast<std::uint64_t>(o & 1); }

void require_reduced(const Position& p, int n, int a) {
  if (p.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("position has " + std::to_string(p.size()) + " stacks, expected " +
                                std::to_string(n));
  const auto lhs = static_cast<unsigned __int128>(a) * p.max();
  if (lhs > static_cast<unsigned __int128>(sigma(p)))
    throw std::invalid_argument("position " + p.to_string() + " is not reduced; reduce it first");
}

PositionType type_mod(const Position& p, int a) {
  return {sigma(p) % (2 * static_cast<std::uint64_t>(a)), odd_count(p)};
}

bool is_moves(const GameSpec& spec, std::initializer_list<int> want) {
  return std::equal(spec.moves().begin(), spec.moves().end(), want.begin(), want.end());
}

bool is_contiguous_to_n(const GameSpec& spec) {
  const auto m = spec.moves();
  return m.back() == spec.n() && static_cast<int>(m.size()) == spec.n() - m.front() + 1;
}

// The three-part pattern shared by the all-but-one rule and the conjecture;
// `middle` decides membership on row s = k-1.
template <class Middle>
bool triangular_pattern(PositionType t, std::uint64_t k, Middle&& middle) {
  const std::uint64_t s = t.s;
  const auto o = static_cast<std::uint64_t>(t.o);
  if (s + 1 < k) return same_parity(s, t.o) && o <= s;
  if (s + 1 == k) return middle(t.o);
  if (s < 2 * k - 1) return same_parity(s, t.o) && o <= 2 * (k - 1) - s;
  return false;
}

}  // namespace

std::string to_string(VerdictSource s) {
  switch (s) {
    case VerdictSource::Structural: return "Structural";
    case VerdictSource::ExactAllButOne: return "ExactAllButOne";
    case VerdictSource::AllButOneOrAll: return "AllButOneOrAll";
    case VerdictSource::OneOrAll: return "OneOrAll";
    case VerdictSource::Single: return "Single";
    case VerdictSource::AllStacks: return "AllStacks";
    case VerdictSource::MooreFull: return "MooreFull";
    case VerdictSource::ConjectureAtLeastK: return "ConjectureAtLeastK";
    case VerdictSource::Oracle: return "Oracle";
    case VerdictSource::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::optional<Outcome> structural_outcome(const Position& p, const GameSpec& spec) {
  const int o = odd_count(p);
  if (o == 0) return Outcome::P;
  if (spec.allows(static_cast<std::size_t>(o))) return Outcome::N;
  return std::nullopt;
}

Outcome exact_all_but_one_cell(PositionType t, int n) {
  if (n < 2) throw std::invalid_argument("the all-but-one rule needs n >= 2");
  const auto k = static_cast<std::uint64_t>(n - 1);
  const bool p = triangular_pattern(t, k, [&](int o) { return (o & 1) == (n & 1); });
  return p ? Outcome::P : Outcome::N;
}

Outcome all_but_one_or_all_cell(PositionType t, int n) {
  if (t.s == static_cast<std::uint64_t>(n - 2) && t.o == n) return Outcome::N;
  return exact_all_but_one_cell(t, n);
}

Outcome conjectured_at_least_k_cell(PositionType t, int n, int k, ConjectureVariant variant) {
  if (k < 2 || k > n) throw std::invalid_argument("conjecture needs 2 <= k <= n");
  const int parity = variant == ConjectureVariant::Printed ? (n & 1) : ((k - 1) & 1);
  const bool p = triangular_pattern(t, static_cast<std::uint64_t>(k),
                                    [&](int o) { return (o & 1) == parity && o <= k - 1; });
  return p ? Outcome::P : Outcome::N;
}

Outcome classify_exact_all_but_one(const Position& p, int n) {
  require_reduced(p, n, n - 1);
  return exact_all_but_one_cell(type_mod(p, n - 1), n);
}

Outcome classify_all_but_one_or_all(const Position& p, int n) {
  require_reduced(p, n, n - 1);
  return all_but_one_or_all_cell(type_mod(p, n - 1), n);
}

Outcome classify_one_or_all(const Position& p, int n) {
  if (p.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("wrong stack count");
  const bool even_sum = (sigma(p) & 1) == 0;
  if (n & 1) return even_sum ? Outcome::P : Outcome::N;
  return even_sum && (p.min() & 1) == 0 ? Outcome::P : Outcome::N;
}

Outcome classify_single(const Position& p) { return (sigma(p) & 1) == 0 ? Outcome::P : Outcome::N; }

Outcome classify_all_stacks(const Position& p) { return (p.min() & 1) == 0 ? Outcome::P : Outcome::N; }

Outcome classify_moore_full(const Position& p) {
  return std::all_of(p.begin(), p.end(), [](Height h) { return (h & 1) == 0; }) ? Outcome::P
                                                                                 : Outcome::N;
}

Outcome conjectured_at_least_k(const Position& p, int n, int k, ConjectureVariant variant) {
  require_reduced(p, n, k);
  return conjectured_at_least_k_cell(type_mod(p, k), n, k, variant);
}

std::optional<VerdictSource> closed_form_rule(const GameSpec& spec) {
  const int n = spec.n();
  if (is_moves(spec, {1})) return VerdictSource::Single;
  if (spec.moves().size() == static_cast<std::size_t>(n)) return VerdictSource::MooreFull;
  if (is_moves(spec, {n})) return VerdictSource::AllStacks;
  if (n >= 2 && is_moves(spec, {n - 1})) return VerdictSource::ExactAllButOne;
  if (n >= 2 && is_moves(spec, {n - 1, n})) return VerdictSource::AllButOneOrAll;
  if (n >= 2 && is_moves(spec, {1, n})) return VerdictSource::OneOrAll;
  return std::nullopt;
}

std::optional<Outcome> closed_form_outcome(const Position& p, const GameSpec& spec) {
  const auto rule = closed_form_rule(spec);
  if (!rule) return std::nullopt;
  const int n = spec.n();
  switch (*rule) {
    case VerdictSource::Single: return classify_single(p);
    case VerdictSource::MooreFull: return classify_moore_full(p);
    case VerdictSource::AllStacks: return classify_all_stacks(p);
    case VerdictSource::OneOrAll: return classify_one_or_all(p, n);
    case VerdictSource::ExactAllButOne: return classify_exact_all_but_one(reduced(p, spec), n);
    case VerdictSource::AllButOneOrAll: return classify_all_but_one_or_all(reduced(p, spec), n);
    default: return std::nullopt;
  }
}

ClassifierVerdict classify(const Position& p, const GameSpec& spec, const ClassifyOptions& opts) {
  if (p.size() != static_cast<std::size_t>(spec.n()))
    throw std::invalid_argument("position has " + std::to_string(p.size()) + " stacks, game has " +
                                std::to_string(spec.n()));
  if (opts.allow_structural) {
    if (auto s = structural_outcome(p, spec)) return {s, VerdictSource::Structural, p};
  }

  const Position r = reduced(p, spec);
  const int n = spec.n();

  if (opts.allow_closed_form) {
    if (auto rule = closed_form_rule(spec)) return {closed_form_outcome(r, spec), *rule, r};
    if (opts.allow_conjecture && is_contiguous_to_n(spec) && spec.min_move() >= 2)
      return {conjectured_at_least_k(r, n, spec.min_move()), VerdictSource::ConjectureAtLeastK, r};
  }

  if (opts.allow_oracle) {
    try {
      Solver solver(spec, GameGraphMode::Playable, opts.node_budget);
      return {solver.outcome(r), VerdictSource::Oracle, r};
    } catch (const BudgetExceeded&) {
    }
  }
  return {std::nullopt, VerdictSource::Unknown, r};
}

}  // namespace slowsetnim
