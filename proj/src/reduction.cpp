#include "slowsetnim/reduction.hpp"

#include <algorithm>

namespace slowsetnim {

namespace {

void require_stack_count(const Position& p, const GameSpec& spec) {
  if (p.size() != static_cast<std::size_t>(spec.n()))
    throw std::invalid_argument("position has " + std::to_string(p.size()) + " stacks, game has " +
                                std::to_string(spec.n()));
}

ReductionResult finish(const Position& p, Position r, std::size_t steps, ReductionAlgorithm alg,
                       std::optional<ReductionTrace> trace) {
  std::vector<Height> u(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) u[i] = p[i] - r[i];
  return {std::move(r), std::move(u), steps, alg, std::move(trace)};
}

}  // namespace

ReductionResult reduce_iterative(const Position& p, const GameSpec& spec, bool with_trace) {
  require_stack_count(p, spec);
  std::optional<ReductionTrace> trace;
  if (with_trace) trace.emplace();

  Position x = p;
  Height target = nirb_value(x, spec);
  std::size_t chops = 0;
  while (x.max() > target) {
    if (trace) trace->iterative.push_back({x, target, false});
    x = ctt(x, target);
    target = nirb_value(x, spec);
    ++chops;
  }
  if (trace) trace->iterative.push_back({x, target, true});
  return finish(p, std::move(x), chops, ReductionAlgorithm::Iterative, std::move(trace));
}

ReductionResult reduce_linear(const Position& p, const GameSpec& spec, bool with_trace) {
  require_stack_count(p, spec);
  const std::size_t n = p.size();
  const auto a = static_cast<std::size_t>(spec.min_move());

  std::vector<Height> sums(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    if (__builtin_add_overflow(sums[i - 1], p[i - 1], &sums[i]))
      throw std::overflow_error("sum of stack heights exceeds 64 bits");
  }

  std::optional<ReductionTrace> trace;
  if (with_trace) {
    trace.emplace();
    trace->partial_sums = sums;
  }

  const Height top = p.max();
  const Height nirb = sums[n] / a;
  const bool already = is_reduced(p, spec);
  if (trace) trace->linear.push_back({0, a, nirb, top, std::nullopt, already});
  if (already) return finish(p, p, 1, ReductionAlgorithm::Linear, std::move(trace));

  // Row j examines caps in [p_{n-j}, p_{n-j+1}] (1-based), where exactly j
  // stacks sit above the cap and ctt(p, m) is reduced iff (a-j)*m <= S_{n-j}.
  // The cap p_{n-j+1} itself failed on the row before, so the first row whose
  // candidate reaches its lower end holds the largest reduced cap.
  std::size_t steps = 1;
  std::optional<Height> cap;
  for (std::size_t j = 1; j < a; ++j) {
    ++steps;
    const Height m = sums[n - j] / (a - j);
    const Height lo = p[n - j - 1];
    const Height hi = p[n - j];
    const bool hit = lo <= m && m <= hi;
    if (trace) trace->linear.push_back({j, a - j, m, lo, hi, hit});
    if (hit) {
      cap = m;
      break;
    }
  }
  // Unreachable for a >= 2: row a-1 has S_{n-a+1} >= p_{n-a+1}.
  if (!cap) cap = p[n - a];
  return finish(p, ctt(p, *cap), steps, ReductionAlgorithm::Linear, std::move(trace));
}

ReductionResult reduce(const Position& p, const GameSpec& spec) { return reduce_linear(p, spec); }

Position reduced(const Position& p, const GameSpec& spec) { return reduce_linear(p, spec).reduced; }

bool reduction_needed_after(const Position& p, const MoveSelection& mv, const GameSpec& spec) {
  if (!is_reduced(p, spec)) throw std::invalid_argument("position " + p.to_string() + " is not reduced");
  return !is_reduced(apply_move(p, mv, spec), spec);
}

bool reduction_possible_flags(const Position& p, int ell, bool omits_maximum, const GameSpec& spec) {
  if (!is_reduced(p, spec)) throw std::invalid_argument("position " + p.to_string() + " is not reduced");
  if (!spec.allows(static_cast<std::size_t>(ell)))
    throw std::invalid_argument("move size " + std::to_string(ell) + " not in A");
  const auto a = static_cast<unsigned __int128>(spec.min_move());
  const auto base = a * p.max();
  const auto total = static_cast<unsigned __int128>(sigma(p));
  // NIRB gives total >= base.
  const auto r = total - base;
  const auto l = static_cast<unsigned __int128>(ell);
  if (omits_maximum) return r < l;
  return l > a && r < l - a;
}

Position reduced_option_closed_form(const Position& p, std::size_t omitted, const GameSpec& spec) {
  const int n = spec.n();
  if (spec.moves().size() != 1 || spec.min_move() != n - 1)
    throw std::invalid_argument("closed-form reduced option needs A = {n-1}");
  require_stack_count(p, spec);
  if (!is_reduced(p, spec)) throw std::invalid_argument("position " + p.to_string() + " is not reduced");
  if (omitted >= p.size() || p[omitted] != p.max())
    throw std::invalid_argument("omitted stack must be maximal");

  MoveSelection mv;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (i != omitted) mv.indices.push_back(i);
  if (!reduction_needed_after(p, mv, spec))
    throw std::invalid_argument("move omitting stack " + std::to_string(omitted) +
                                " does not need reduction");

  const auto k = static_cast<Height>(n - 1);
  const Height s = sigma(p) % (2 * k);
  std::vector<Height> out(p.begin(), p.end());
  for (Height& h : out) --h;  // all stacks, including the omitted maximum
  if (s % k == 0) {
    for (Height& h : out)
      if (h == p.max() - 1) --h;
  }
  return Position(std::move(out));
}

PositionType reduced_option_type(PositionType t, int alpha, int n) {
  const auto k = static_cast<std::uint64_t>(n - 1);
  const std::uint64_t s = t.s;
  const int o = t.o;
  if (s % k != 0) {
    const std::uint64_t s2 = s < k ? s + k - 1 : s - (k + 1);
    return {s2, n - o};
  }
  const auto a = static_cast<std::uint64_t>(alpha);
  if (s == 0) return {k - 1 - a, n - o - alpha};
  return {2 * k - 1 - a, n - o + alpha};
}

}  // namespace slowsetnim
