#include "slowsetnim/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <map>
#include <sstream>
#include <thread>

#include "slowsetnim/reduction.hpp"
#include "slowsetnim/text.hpp"

namespace slowsetnim {

// ---------------------------------------------------------------- enumeration

std::vector<Position> enumerate_canonical(int n, Height max_height) {
  std::vector<Position> out;
  if (n < 0) return out;
  std::vector<Height> cur(static_cast<std::size_t>(n));
  const auto rec = [&](auto&& self, std::size_t i, Height lo) -> void {
    if (i == cur.size()) {
      out.emplace_back(cur);
      return;
    }
    for (Height h = lo; h <= max_height; ++h) {
      cur[i] = h;
      self(self, i + 1, h);
    }
  };
  rec(rec, 0, 0);
  return out;
}

std::vector<Position> enumerate_reduced(const GameSpec& spec, const SweepBounds& bounds) {
  std::vector<Position> out;
  for (Position& p : enumerate_canonical(spec.n(), bounds.max_height))
    if (is_reduced(p, spec)) out.push_back(std::move(p));
  return out;
}

namespace {

// ---------------------------------------------------------------- helpers

using Clock = std::chrono::steady_clock;

std::string str(Outcome o) { return std::string(1, to_char(o)); }

std::string str(PositionType t) {
  return "(s=" + std::to_string(t.s) + ",o=" + std::to_string(t.o) + ")";
}

std::string str(std::span<const Height> v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out + ")";
}

bool singleton(const GameSpec& spec, int k) {
  return spec.moves().size() == 1 && spec.min_move() == k;
}

bool pair_of(const GameSpec& spec, int a, int b) {
  return spec.moves().size() == 2 && spec.moves()[0] == a && spec.moves()[1] == b;
}

bool contiguous_to_n(const GameSpec& spec) {
  const auto m = spec.moves();
  return m.back() == spec.n() && static_cast<int>(m.size()) == spec.n() - m.front() + 1;
}

PositionType type_of(const Position& p, int a) {
  return {sigma(p) % (2 * static_cast<std::uint64_t>(a)), odd_count(p)};
}

// Splits roots into contiguous chunks, one context per worker, and
// concatenates violations in root order.
template <class MakeCtx, class Fn>
std::vector<Violation> sweep(const std::vector<Position>& roots, unsigned workers, MakeCtx make, Fn fn) {
  const std::size_t w = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(roots.size(), 1));
  if (w == 1) {
    auto ctx = make();
    std::vector<Violation> out;
    for (const Position& r : roots) fn(ctx, r, out);
    return out;
  }
  std::vector<std::vector<Violation>> parts(w);
  std::vector<std::exception_ptr> errors(w);
  std::vector<std::thread> threads;
  const std::size_t chunk = (roots.size() + w - 1) / w;
  for (std::size_t t = 0; t < w; ++t) {
    threads.emplace_back([&, t] {
      try {
        auto ctx = make();
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(roots.size(), lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) fn(ctx, roots[i], parts[t]);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Violation> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

struct NoCtx {};
inline NoCtx no_ctx() { return {}; }

class ReportBuilder {
public:
  ReportBuilder(std::string name, const GameSpec& spec, const SweepBounds& bounds, bool mutated)
      : start_(Clock::now()) {
    report_.check = std::move(name);
    report_.game = format_game(spec) + " n=" + std::to_string(spec.n());
    report_.bounds = bounds;
    report_.bounds.n = spec.n();
    report_.mutated = mutated;
  }
  VerificationReport& operator*() { return report_; }
  VerificationReport* operator->() { return &report_; }
  VerificationReport finish() {
    report_.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    return std::move(report_);
  }

private:
  VerificationReport report_;
  Clock::time_point start_;
};

// Labeled reachability from `heights`, as vectors of tokens played per stack.
std::set<std::vector<Height>> played_vectors(std::span<const Height> heights, const GameSpec& spec,
                                             std::size_t budget) {
  std::vector<Height> start(heights.begin(), heights.end());
  std::set<std::vector<Height>> seen{start};
  std::vector<std::vector<Height>> todo{start};
  while (!todo.empty()) {
    auto q = std::move(todo.back());
    todo.pop_back();
    for (const MoveSelection& mv : legal_selections(q, spec)) {
      auto r = q;
      for (std::size_t i : mv.indices) --r[i];
      if (seen.insert(r).second) {
        if (seen.size() > budget) throw BudgetExceeded(budget);
        todo.push_back(std::move(r));
      }
    }
  }
  std::set<std::vector<Height>> out;
  for (const auto& q : seen) {
    std::vector<Height> d(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) d[i] = heights[i] - q[i];
    out.insert(std::move(d));
  }
  return out;
}

bool all_zero(std::span<const Height> v) {
  return std::all_of(v.begin(), v.end(), [](Height h) { return h == 0; });
}

std::vector<Height> minus(const Position& p, std::span<const Height> u) {
  std::vector<Height> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] - u[i];
  return out;
}

// A rule compared against the full-graph oracle on every canonical
// position (or every reduced one).
using Rule = std::function<std::optional<Outcome>(const Position&)>;

VerificationReport rule_vs_oracle(std::string name, const GameSpec& spec, const SweepBounds& b, bool mutated,
                                  bool reduced_only, Rule rule) {
  ReportBuilder rb(std::move(name), spec, b, mutated);
  const auto roots = reduced_only ? enumerate_reduced(spec, b) : enumerate_canonical(spec.n(), b.max_height);
  rb->examined = roots.size();
  rb->violations = sweep(
      roots, b.workers, [&] { return Solver(spec, GameGraphMode::Full, b.node_budget); },
      [&](Solver& solver, const Position& p, std::vector<Violation>& out) {
        const auto predicted = rule(p);
        if (!predicted) return;
        const Outcome truth = solver.outcome(p);
        if (*predicted != truth) out.push_back({p.to_string(), str(truth), str(*predicted)});
      });
  return rb.finish();
}

// ---------------------------------------------------------------- reduction checks

VerificationReport run_nirb_iff_reduced(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  ReportBuilder rb("nirb_iff_reduced", spec, b, mutated);
  const auto roots = enumerate_canonical(spec.n(), b.max_height);
  rb->examined = roots.size();
  const auto a = static_cast<unsigned __int128>(spec.min_move() + (mutated ? 1 : 0));
  rb->violations = sweep(roots, b.workers, no_ctx, [&](NoCtx&, const Position& p, std::vector<Violation>& out) {
    const bool nirb = a * p.max() <= sigma(p);
    const bool oracle = all_zero(unplayable_oracle(p, spec, b.node_budget));
    if (nirb != oracle)
      out.push_back({p.to_string(), oracle ? "reduced" : "not reduced", nirb ? "NIRB holds" : "NIRB fails"});
  });
  return rb.finish();
}

VerificationReport run_nirb_min_element(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  ReportBuilder rb("nirb_min_element", spec, b, mutated);
  const int a = spec.min_move();
  const int other = mutated ? (a < spec.n() ? a + 1 : a - 1) : a;
  const GameSpec single = GameSpec::exact(spec.n(), other);
  const auto roots = enumerate_canonical(spec.n(), b.max_height);
  rb->examined = roots.size();
  rb->violations = sweep(roots, b.workers, no_ctx, [&](NoCtx&, const Position& p, std::vector<Violation>& out) {
    const auto u = unplayable_oracle(p, spec, b.node_budget);
    const auto v = unplayable_oracle(p, single, b.node_budget);
    if (all_zero(u) != all_zero(v))
      out.push_back({p.to_string(), "u in A equals u in {" + std::to_string(other) + "} on zero test",
                     str(std::span<const Height>(u)) + " vs " + str(std::span<const Height>(v))});
  });
  return rb.finish();
}

VerificationReport run_reduction_algorithms(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  ReportBuilder rb("reduction_algorithms", spec, b, mutated);
  const auto roots = enumerate_canonical(spec.n(), b.max_height);
  rb->examined = roots.size();
  rb->violations = sweep(roots, b.workers, no_ctx, [&](NoCtx&, const Position& p, std::vector<Violation>& out) {
    const auto u = unplayable_oracle(p, spec, b.node_budget);
    const Position truth(minus(p, u));
    const auto it = reduce_iterative(p, spec);
    auto lin = reduce_linear(p, spec);
    if (mutated && lin.reduced != p) lin.reduced = ctt(lin.reduced, lin.reduced.max() - 1);
    if (it.reduced != truth)
      out.push_back({p.to_string(), "iterative " + truth.to_string(), it.reduced.to_string()});
    if (lin.reduced != truth)
      out.push_back({p.to_string(), "linear " + truth.to_string(), lin.reduced.to_string()});
    if (lin.unplayable != u)
      out.push_back({p.to_string(), "u " + str(std::span<const Height>(u)),
                     str(std::span<const Height>(lin.unplayable))});
    if (!is_reduced(lin.reduced, spec) || all_zero(lin.unplayable) != is_reduced(p, spec))
      out.push_back({p.to_string(), "reduced result, zero u iff reduced input", lin.reduced.to_string()});
  });
  return rb.finish();
}

VerificationReport run_ctt_reduced(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  ReportBuilder rb("ctt_reduced", spec, b, mutated);
  const auto roots = enumerate_reduced(spec, b);
  rb->examined = roots.size();
  const auto a = static_cast<unsigned __int128>(spec.min_move() + (mutated ? 1 : 0));
  rb->violations = sweep(roots, b.workers, no_ctx, [&](NoCtx&, const Position& p, std::vector<Violation>& out) {
    for (Height m = 0; m <= p.max(); ++m) {
      const Position c = ctt(p, m);
      if (a * c.max() > sigma(c))
        out.push_back({p.to_string() + " m=" + std::to_string(m), "reduced", c.to_string() + " not reduced"});
    }
  });
  return rb.finish();
}

VerificationReport run_ctt_maximal(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  ReportBuilder rb("ctt_maximal", spec, b, mutated);
  const auto roots = enumerate_canonical(spec.n(), b.max_height);
  rb->examined = roots.size();
  rb->violations = sweep(roots, b.workers, no_ctx, [&](NoCtx&, const Position& p, std::vector<Violation>& out) {
    Height best = 0;
    for (Height m = 0; m <= p.max(); ++m)
      if (is_reduced(ctt(p, m), spec)) best = m;
    if (mutated && best > 0) --best;
    const Position truth(minus(p, unplayable_oracle(p, spec, b.node_budget)));
    const Position got = ctt(p, best);
    if (got != truth)
      out.push_back({p.to_string(), truth.to_string(), got.to_string() + " (m=" + std::to_string(best) + ")"});
  });
  return rb.finish();
}

VerificationReport run_move_sequences(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  ReportBuilder rb("move_sequences", spec, b, mutated);
  const auto roots = enumerate_canonical(spec.n(), b.max_height);
  rb->examined = roots.size();
  rb->violations = sweep(
      roots, b.workers, [&] { return Solver(spec, GameGraphMode::Full, b.node_budget); },
      [&](Solver& solver, const Position& p, std::vector<Violation>& out) {
        Position r = reduced(p, spec);
        if (mutated && r.max() > 0) {
          std::vector<Height> v(r.begin(), r.end());
          --v.back();
          r = Position(v);
        }
        // reduction keeps sorted alignment, so labeled stacks line up.
        if (played_vectors(p.heights(), spec, b.node_budget) != played_vectors(r.heights(), spec, b.node_budget))
          out.push_back({p.to_string(), "same move sequences as " + r.to_string(), "differ"});
        if (solver.outcome(p) != solver.outcome(r))
          out.push_back({p.to_string(), str(solver.outcome(p)), str(solver.outcome(r)) + " at " + r.to_string()});
      });
  return rb.finish();
}

VerificationReport run_same_reduction(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  ReportBuilder rb("same_reduction", spec, b, mutated);
  const auto roots = enumerate_canonical(spec.n(), b.max_height);
  rb->examined = roots.size();
  Solver solver(spec, GameGraphMode::Full, b.node_budget);

  // Groups keyed by the reduction, or by the raw (s, o) type when mutated.
  std::map<std::string, std::pair<Position, Outcome>> first;
  for (const Position& p : roots) {
    const std::string key =
        mutated ? str(type_of(p, spec.min_move())) : reduced(p, spec).to_string();
    const Outcome o = solver.outcome(p);
    auto [it, inserted] = first.emplace(key, std::make_pair(p, o));
    if (!inserted && it->second.second != o)
      rb->violations.push_back({p.to_string(), str(it->second.second) + " like " + it->second.first.to_string(),
                                str(o)});
  }
  if (!mutated) {
    for (const Position& p : roots) {
      if (p.empty()) continue;
      const Position rp = reduced(p, spec);
      for (Height t : {1, 2, 5}) {
        std::vector<Height> v(p.begin(), p.end());
        v.back() += t;
        const Position q(v);
        if (reduced(q, spec) != rp) continue;
        if (solver.outcome(q) != solver.outcome(p))
          rb->violations.push_back({q.to_string(), str(solver.outcome(p)), str(solver.outcome(q))});
      }
    }
  }
  return rb.finish();
}

VerificationReport run_preimage_padding(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  ReportBuilder rb("preimage_padding", spec, b, mutated);
  const auto roots = enumerate_canonical(spec.n(), b.max_height);
  rb->examined = roots.size();
  for (const Position& q : roots) {
    if (is_reduced(q, spec)) continue;
    const Position rq = reduce_iterative(q, spec).reduced;
    for (Height t = 1; t <= 5; ++t) {
      std::vector<Height> v(q.begin(), q.end());
      (mutated ? v.front() : v.back()) += t;
      const Position padded(v);
      const Position rp = reduce_iterative(padded, spec).reduced;
      if (rp != rq) rb->violations.push_back({padded.to_string(), rq.to_string(), rp.to_string()});
    }
  }
  return rb.finish();
}

VerificationReport run_graph_correspondence(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  ReportBuilder rb("graph_correspondence", spec, b, mutated);
  const auto roots = enumerate_canonical(spec.n(), b.max_height);
  rb->examined = roots.size();
  struct Ctx {
    Solver full;
    Solver playable;
  };
  rb->violations = sweep(
      roots, b.workers,
      [&] {
        return Ctx{Solver(spec, GameGraphMode::Full, b.node_budget),
                   Solver(spec, GameGraphMode::Playable, b.node_budget)};
      },
      [&](Ctx& c, const Position& p, std::vector<Violation>& out) {
        Position q = p;
        if (mutated && p.max() > 0) {
          std::vector<Height> v(p.begin(), p.end());
          --v.back();
          q = Position(v);
        }
        const Outcome f = c.full.outcome(p);
        const Outcome g = c.playable.outcome(q);
        if (f != g) out.push_back({p.to_string(), "full " + str(f), "playable " + str(g)});
      });
  return rb.finish();
}

VerificationReport run_unplayable_monotone(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  ReportBuilder rb("unplayable_monotone", spec, b, mutated);
  const auto roots = enumerate_canonical(spec.n(), b.max_height);
  rb->examined = roots.size();
  rb->violations = sweep(roots, b.workers, no_ctx, [&](NoCtx&, const Position& p, std::vector<Violation>& out) {
    const auto u = unplayable_oracle(p, spec, b.node_budget);
    for (const MoveSelection& mv : legal_moves(p, spec)) {
      std::vector<Height> child(p.begin(), p.end());
      for (std::size_t i : mv.indices) --child[i];
      const auto uc = unplayable_oracle(child, spec, b.node_budget);
      for (std::size_t i = 0; i < u.size(); ++i) {
        const bool ok = mutated ? uc[i] <= u[i] : uc[i] >= u[i];
        if (!ok) {
          out.push_back({p.to_string() + " move " + mv.to_string(), "u " + str(std::span<const Height>(u)),
                         "u' " + str(std::span<const Height>(uc))});
          break;
        }
      }
    }
  });
  return rb.finish();
}

VerificationReport run_generalized_reduction(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  ReportBuilder rb("generalized_reduction", spec, b, mutated);
  const auto roots = enumerate_reduced(spec, b);
  rb->examined = roots.size();
  for (const Position& p : roots) {
    for (const MoveSelection& mv : legal_moves(p, spec)) {
      const bool needed = reduction_needed_after(p, mv, spec);
      const bool omitted = mutated ? false : omits_max(p, mv);
      const bool possible = reduction_possible_flags(p, static_cast<int>(mv.size()), omitted, spec);
      if (needed && !possible)
        rb->violations.push_back({p.to_string() + " move " + mv.to_string(), "R1 or R2 holds", "neither holds"});
    }
  }
  return rb.finish();
}

// ---------------------------------------------------------------- SN(n, n-1) lemmas

VerificationReport run_noredopts(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  ReportBuilder rb("noredopts", spec, b, mutated);
  const int n = spec.n();
  const auto k = static_cast<std::uint64_t>(n - 1);
  const auto roots = enumerate_reduced(spec, b);
  rb->examined = roots.size();
  for (const Position& p : roots) {
    const PositionType t = type_of(p, n - 1);
    for (const MoveSelection& mv : legal_moves(p, spec)) {
      if (reduction_needed_after(p, mv, spec)) continue;
      std::size_t omitted = 0;
      while (omitted < mv.indices.size() && mv.indices[omitted] == omitted) ++omitted;
      const bool odd = p[omitted] & 1;
      const bool use_odd = mutated ? !odd : odd;
      const PositionType want{(t.s + k) % (2 * k), use_odd ? n - t.o + 1 : n - t.o - 1};
      const PositionType got = type_of(apply_move(p, mv, spec), n - 1);
      if (got != want) rb->violations.push_back({p.to_string() + " move " + mv.to_string(), str(want), str(got)});
    }
  }
  return rb.finish();
}

VerificationReport run_reduced_position_form(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  ReportBuilder rb("reduced_position_form", spec, b, mutated);
  const int n = spec.n();
  const auto k = static_cast<std::uint64_t>(n - 1);
  const auto roots = enumerate_reduced(spec, b);
  rb->examined = roots.size();
  for (const Position& p : roots) {
    const PositionType t = type_of(p, n - 1);
    const int alpha = max_multiplicity(p);
    for (const MoveSelection& mv : legal_moves(p, spec)) {
      if (!reduction_needed_after(p, mv, spec)) continue;
      std::size_t omitted = 0;
      while (omitted < mv.indices.size() && mv.indices[omitted] == omitted) ++omitted;
      const std::string where = p.to_string() + " omit " + std::to_string(omitted);
      if (p[omitted] != p.max()) {
        rb->violations.push_back({where, "omitted stack maximal", "not maximal"});
        continue;
      }
      const Position truth = reduced(apply_move(p, mv, spec), spec);
      Position form = reduced_option_closed_form(p, omitted, spec);
      if (mutated) {
        std::vector<Height> v(p.begin(), p.end());
        for (Height& h : v) --h;
        form = Position(v);
      }
      if (form != truth) rb->violations.push_back({where, truth.to_string(), form.to_string()});
      const PositionType want = reduced_option_type(t, alpha, n);
      if (type_of(truth, n - 1) != want) rb->violations.push_back({where, str(want), str(type_of(truth, n - 1))});
      const bool even_max = (p.max() & 1) == 0;
      if ((t.s < k) != even_max)
        rb->violations.push_back({where, t.s < k ? "even maximum" : "odd maximum", "other parity"});
      if (t.s % k == 0 && alpha > n - 2)
        rb->violations.push_back({where, "alpha <= n-2", "alpha=" + std::to_string(alpha)});
    }
  }
  return rb.finish();
}

// ---------------------------------------------------------------- outcome theorems

VerificationReport run_exact_all_but_one(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  const int n = spec.n();
  return rule_vs_oracle("exact_all_but_one", spec, b, mutated, false, [&, n](const Position& p) {
    const Position r = reduced(p, spec);
    if (mutated && type_of(r, n - 1).s == static_cast<std::uint64_t>(n - 2)) return std::optional(Outcome::N);
    return std::optional(classify_exact_all_but_one(r, n));
  });
}

VerificationReport run_all_but_one_or_all(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  const int n = spec.n();
  return rule_vs_oracle("all_but_one_or_all", spec, b, mutated, false, [&, n](const Position& p) {
    const Position r = reduced(p, spec);
    return std::optional(mutated ? classify_exact_all_but_one(r, n) : classify_all_but_one_or_all(r, n));
  });
}

VerificationReport run_delta(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  const int n = spec.n();
  ReportBuilder rb("all_but_one_or_all_delta", spec, b, mutated);
  const GameSpec base = GameSpec::exact(n, n - 1);
  const GameSpec ext(n, {n - 1, n});
  const auto g1 = grid_emit(base, b, GridSource::Oracle);
  const auto g2 = grid_emit(ext, b, GridSource::Oracle);
  for (const auto* g : {&g1, &g2})
    for (const GridCell& c : g->cells) rb->examined += c.p_count + c.n_count;
  const std::vector<PositionType> want{
      mutated ? PositionType{static_cast<std::uint64_t>(n - 2), n - 2} : PositionType{static_cast<std::uint64_t>(n - 2), n}};
  const auto got = grid_difference(g1, g2);
  const GridCell& cell = g2.at(static_cast<std::uint64_t>(n - 2), n);
  if (!mutated && got.empty() && cell.kind == CellKind::Empty) {
    rb->notes.push_back("cell " + str(want[0]) + " holds no reduced position at these bounds; raise max_height");
  } else if (got != want) {
    std::string g;
    for (const auto& t : got) g += str(t);
    rb->violations.push_back({"grids " + format_game(base) + " vs " + format_game(ext), str(want[0]),
                              g.empty() ? "no difference" : g});
  }
  for (const auto* g : {&g1, &g2})
    for (std::uint64_t s = 0; s < g->rows; ++s)
      for (int o = 0; o <= n; ++o)
        if (g->at(s, o).kind == CellKind::Mixed)
          rb->violations.push_back({g->game + " cell " + str(PositionType{s, o}), "single outcome", "mixed"});
  return rb.finish();
}

VerificationReport run_game_extension(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  const int n = spec.n();
  const std::set<PositionType> q = mutated ? std::set<PositionType>{{0, 0}}
                                           : std::set<PositionType>{{static_cast<std::uint64_t>(n - 2), n}};
  auto r = check_extension(GameSpec::exact(n, n - 1), GameSpec(n, {n - 1, n}), q, b);
  r.check = "game_extension";
  r.mutated = mutated;
  return r;
}

VerificationReport run_structural(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  return rule_vs_oracle("structural", spec, b, mutated, false, [&](const Position& p) {
    auto v = structural_outcome(p, spec);
    if (mutated && v == Outcome::P) v = Outcome::N;
    return v;
  });
}

VerificationReport run_one_or_all(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  const int n = spec.n();
  return rule_vs_oracle("one_or_all", spec, b, mutated, false, [&, n](const Position& p) {
    if (!mutated) return std::optional(classify_one_or_all(p, n));
    // Mutation: the rule for the other parity of n.
    const bool even_sum = (sigma(p) & 1) == 0;
    const bool p_pos = (n & 1) ? even_sum && (p.min() & 1) == 0 : even_sum;
    return std::optional(p_pos ? Outcome::P : Outcome::N);
  });
}

VerificationReport run_single(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  return rule_vs_oracle("single", spec, b, mutated, false, [&](const Position& p) {
    const Outcome o = classify_single(p);
    return std::optional(mutated ? (o == Outcome::P ? Outcome::N : Outcome::P) : o);
  });
}

VerificationReport run_all_stacks(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  return rule_vs_oracle("all_stacks", spec, b, mutated, false, [&](const Position& p) {
    if (mutated) return std::optional((p.max() & 1) == 0 ? Outcome::P : Outcome::N);
    return std::optional(classify_all_stacks(p));
  });
}

VerificationReport run_moore_full(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  return rule_vs_oracle("moore_full", spec, b, mutated, false, [&](const Position& p) {
    if (mutated) return std::optional(classify_single(p));
    return std::optional(classify_moore_full(p));
  });
}

VerificationReport conjecture_report(int n, int k, const SweepBounds& b, ConjectureVariant variant, bool mutated) {
  const GameSpec spec = GameSpec::at_least(n, k);
  ReportBuilder rb("conjecture_at_least_k", spec, b, mutated);
  const auto roots = enumerate_reduced(spec, b);
  rb->examined = roots.size();
  Solver solver(spec, GameGraphMode::Playable, b.node_budget);
  for (const Position& p : roots) {
    PositionType t = type_of(p, k);
    Outcome predicted = conjectured_at_least_k_cell(t, n, k, variant);
    // Mutation: strict inequality in the top triangle.
    if (mutated && t.s + 1 < static_cast<std::uint64_t>(k) && static_cast<std::uint64_t>(t.o) == t.s)
      predicted = Outcome::N;
    const Outcome truth = solver.outcome(p);
    if (predicted != truth)
      rb->violations.push_back({p.to_string() + " " + str(t), str(truth), str(predicted) + " (conjectured)"});
  }
  const std::size_t agree = roots.size() - rb->violations.size();
  char buf[128];
  std::snprintf(buf, sizeof buf, "agreement %zu/%zu (%.2f%%)", agree, roots.size(),
                roots.empty() ? 100.0 : 100.0 * static_cast<double>(agree) / static_cast<double>(roots.size()));
  rb->notes.push_back(std::string(variant == ConjectureVariant::Printed ? "printed pattern: " : "row-parity pattern: ") +
                      buf);
  if (!rb->violations.empty()) rb->notes.push_back("first counterexample " + rb->violations.front().position);
  rb->notes.push_back("CONJECTURED: no proof exists; disagreement is a finding");
  rb->informational = true;
  return rb.finish();
}

VerificationReport run_conjecture(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  auto r = conjecture_report(spec.n(), spec.min_move(), b, ConjectureVariant::Printed, mutated);
  if (!mutated) {
    const auto alt = conjecture_summary(spec.n(), spec.min_move(), b, ConjectureVariant::ParityOfRow);
    char buf[160];
    std::snprintf(buf, sizeof buf, "row-parity pattern (middle row o of parity k-1): agreement %zu/%zu (%.2f%%)",
                  alt.agreements, alt.examined, alt.agreement_percent());
    r.notes.insert(r.notes.begin() + 1, buf);
  }
  return r;
}

VerificationReport m_rule_report(int n, const SweepBounds& b, bool mutated) {
  const GameSpec spec = GameSpec::exact(n, n - 1);
  ReportBuilder rb("m_rule", spec, b, mutated);
  const auto roots = enumerate_canonical(n, b.max_height);
  rb->examined = roots.size();
  rb->violations = sweep(
      roots, b.workers, [&] { return Solver(spec, GameGraphMode::Full, b.node_budget); },
      [&](Solver& solver, const Position& p, std::vector<Violation>& out) {
        if (solver.outcome(p) != Outcome::N) return;
        MoveSelection mv = m_rule_move(p, spec);
        if (mutated) {
          mv.indices.clear();
          for (std::size_t i = 1; i < p.size(); ++i) mv.indices.push_back(i);
        }
        Outcome after = Outcome::N;
        std::string where;
        try {
          const Position q = apply_move(p, mv, spec);
          after = solver.outcome(q);
          where = q.to_string();
        } catch (const std::invalid_argument&) {
          where = "illegal move";
        }
        if (after != Outcome::P) out.push_back({p.to_string() + " move " + mv.to_string(), "P", "N at " + where});
      });
  return rb.finish();
}

VerificationReport run_m_rule(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  return m_rule_report(spec.n(), b, mutated);
}

VerificationReport run_parity_link(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  ReportBuilder rb("parity_link", spec, b, mutated);
  const auto roots = enumerate_canonical(spec.n(), b.max_height);
  rb->examined = roots.size();
  const std::uint64_t modulus = 2 * static_cast<std::uint64_t>(spec.min_move()) + (mutated ? 1 : 0);
  for (const Position& p : roots) {
    const PositionType t{sigma(p) % modulus, odd_count(p)};
    if ((t.s & 1) != static_cast<std::uint64_t>(t.o & 1))
      rb->violations.push_back({p.to_string(), "s and o of equal parity", str(t)});
  }
  return rb.finish();
}

VerificationReport run_cell_function(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  ReportBuilder rb("cell_function", spec, b, mutated);
  const int a = spec.min_move();
  const auto roots = mutated ? enumerate_canonical(spec.n(), b.max_height) : enumerate_reduced(spec, b);
  rb->examined = roots.size();
  Solver solver(spec, GameGraphMode::Full, b.node_budget);
  std::map<PositionType, std::pair<Position, Outcome>> seen;
  for (const Position& p : roots) {
    const PositionType t = type_of(p, a);
    const Outcome o = solver.outcome(p);
    auto [it, inserted] = seen.emplace(t, std::make_pair(p, o));
    if (!inserted && it->second.second != o)
      rb->violations.push_back(
          {p.to_string() + " " + str(t), str(it->second.second) + " like " + it->second.first.to_string(), str(o)});
  }
  return rb.finish();
}

VerificationReport run_partition_test(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  ReportBuilder rb("partition_test", spec, b, mutated);
  const int n = spec.n();
  const bool with_all = spec.moves().size() == 2;
  const auto rule = [&](const Position& p) {
    const PositionType t = type_of(p, n - 1);
    if (mutated && t.s == static_cast<std::uint64_t>(n - 2)) return Outcome::N;
    return with_all ? all_but_one_or_all_cell(t, n) : exact_all_but_one_cell(t, n);
  };
  const auto roots = enumerate_reduced(spec, b);
  rb->examined = roots.size();
  const Solver graph(spec, GameGraphMode::Playable, b.node_budget);
  for (const Position& p : roots) {
    const auto opts = graph.options(p);
    const bool has_p_option = std::any_of(opts.begin(), opts.end(), [&](const Position& q) {
      return rule(q) == Outcome::P;
    });
    if (rule(p) == Outcome::P && has_p_option)
      rb->violations.push_back({p.to_string(), "every option outside the P set", "a P option exists"});
    if (rule(p) == Outcome::N && !has_p_option)
      rb->violations.push_back({p.to_string(), "an option inside the P set", "none"});
  }
  return rb.finish();
}

VerificationReport run_classify_dispatch(const GameSpec& spec, const SweepBounds& b, bool mutated) {
  // Conjectured verdicts are judged by conjecture_at_least_k, not here.
  ClassifyOptions opts;
  opts.node_budget = b.node_budget;
  opts.allow_conjecture = false;
  return rule_vs_oracle("classify_dispatch", spec, b, mutated, false, [&, opts](const Position& p) {
    const auto v = classify(p, spec, opts);
    if (!v.outcome) return std::optional<Outcome>{};
    if (mutated && v.source == VerdictSource::Structural)
      return std::optional(*v.outcome == Outcome::P ? Outcome::N : Outcome::P);
    return v.outcome;
  });
}

// ---------------------------------------------------------------- registry

bool any_n3(const GameSpec& s) { return s.n() >= 3; }
GameSpec all_but_one(int n) { return GameSpec::exact(n, n - 1); }

std::vector<CheckInfo> build_registry() {
  const auto exact_n1 = [](const GameSpec& s) { return s.n() >= 3 && singleton(s, s.n() - 1); };
  const auto n1_n = [](const GameSpec& s) { return s.n() >= 3 && pair_of(s, s.n() - 1, s.n()); };
  const auto either = [=](const GameSpec& s) { return exact_n1(s) || n1_n(s); };
  const auto cell_rule = [=](const GameSpec& s) {
    return either(s) || (contiguous_to_n(s) && s.min_move() >= 2) || singleton(s, 1) ||
           static_cast<int>(s.moves().size()) == s.n();
  };
  const auto ext = [](int n) { return GameSpec(n, {n - 1, n}); };

  return {
      {"nirb_iff_reduced", "reduced (oracle u = 0) iff min(A)*max <= sum", any_n3, all_but_one,
       run_nirb_iff_reduced},
      {"nirb_min_element", "reducedness in SN(n,A) equals reducedness in SN(n,{min A})", any_n3, all_but_one,
       run_nirb_min_element},
      {"reduction_algorithms", "iterative chop = prefix-sum scan = p - u(p)", any_n3, all_but_one,
       run_reduction_algorithms},
      {"ctt_reduced", "chopping a reduced position leaves it reduced", any_n3, all_but_one, run_ctt_reduced},
      {"ctt_maximal", "r(p) = ctt(p, m) for the largest m with ctt(p, m) reduced", any_n3, all_but_one,
       run_ctt_maximal},
      {"move_sequences", "p and r(p) admit the same move sequences and share an outcome", any_n3, all_but_one,
       run_move_sequences},
      {"same_reduction", "positions with a common reduction share an outcome", any_n3, all_but_one,
       run_same_reduction},
      {"preimage_padding", "padding the top stack of a non-reduced position keeps its reduction", any_n3,
       all_but_one, run_preimage_padding},
      {"graph_correspondence", "full and playable graphs give the same outcome", any_n3, all_but_one,
       run_graph_correspondence},
      {"unplayable_monotone", "unplayable tokens never become playable along a move", any_n3, all_but_one,
       run_unplayable_monotone},
      {"generalized_reduction", "reduction after a move needs condition R1 or R2", any_n3, all_but_one,
       run_generalized_reduction},
      {"noredopts", "type of options that need no reduction, A={n-1}", exact_n1, all_but_one, run_noredopts},
      {"reduced_position_form", "closed form of reduced options, A={n-1}", exact_n1, all_but_one,
       run_reduced_position_form},
      {"exact_all_but_one", "P-positions of SN(n,{n-1})", exact_n1, all_but_one, run_exact_all_but_one},
      {"structural", "o=0 gives P, o in A gives N (full graph)", any_n3, all_but_one, run_structural},
      {"all_but_one_or_all", "P-positions of SN(n,{n-1,n})", n1_n, ext, run_all_but_one_or_all},
      {"all_but_one_or_all_delta", "grids of {n-1} and {n-1,n} differ only at (n-2,n)", either, ext, run_delta},
      {"game_extension", "extension linking conditions with Q={(n-2,n)}", either, ext, run_game_extension},
      {"one_or_all", "P-positions of SN(n,{1,n})", [](const GameSpec& s) { return s.n() >= 3 && pair_of(s, 1, s.n()); },
       [](int n) { return GameSpec(n, {1, n}); }, run_one_or_all},
      {"single", "SN(n,{1}): P iff the sum is even", [](const GameSpec& s) { return singleton(s, 1); },
       [](int n) { return GameSpec::exact(n, 1); }, run_single},
      {"all_stacks", "SN(n,{n}): P iff the minimum is even", [](const GameSpec& s) { return singleton(s, s.n()); },
       [](int n) { return GameSpec::exact(n, n); }, run_all_stacks},
      {"moore_full", "SN(n,[n]): P iff every height is even",
       [](const GameSpec& s) { return static_cast<int>(s.moves().size()) == s.n(); },
       [](int n) { return GameSpec::at_most(n, n); }, run_moore_full},
      {"conjecture_at_least_k", "conjectured P-positions of SN(n,{k..n}) (report)",
       [](const GameSpec& s) { return contiguous_to_n(s) && s.min_move() >= 2; },
       [](int n) { return GameSpec::at_least(n, std::max(2, n - 2)); }, run_conjecture},
      {"m_rule", "the M-rule wins from every N-position of SN(n,{n-1})", exact_n1, all_but_one, run_m_rule},
      {"parity_link", "s and o have the same parity", [](const GameSpec&) { return true; }, all_but_one,
       run_parity_link},
      {"cell_function", "outcome of a reduced position depends on (s,o) only", cell_rule, all_but_one,
       run_cell_function},
      {"partition_test", "the closed-form P set is closed under the partition properties", either, all_but_one,
       run_partition_test},
      {"classify_dispatch", "the classifier agrees with the oracle", any_n3, all_but_one, run_classify_dispatch},
  };
}

}  // namespace

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> registry = build_registry();
  return registry;
}

const CheckInfo& find_check(std::string_view name) {
  for (const CheckInfo& c : check_registry())
    if (c.name == name) return c;
  throw std::invalid_argument("unknown check '" + std::string(name) + "'");
}

VerificationReport check_theorem(std::string_view name, const GameSpec& spec, const SweepBounds& bounds,
                                 bool mutated) {
  const CheckInfo& c = find_check(name);
  if (!c.applies(spec))
    throw std::invalid_argument("check '" + c.name + "' does not cover " + spec.to_string());
  SweepBounds b = bounds;
  b.n = spec.n();
  return c.run(spec, b, mutated);
}

// ---------------------------------------------------------------- extension

VerificationReport check_extension(const GameSpec& base, const GameSpec& ext, const std::set<PositionType>& q,
                                   const SweepBounds& bounds) {
  if (base.n() != ext.n()) throw std::invalid_argument("games differ in stack count");
  if (base.min_move() != ext.min_move()) throw std::invalid_argument("games must share min(A)");
  for (int k : base.moves())
    if (!ext.allows(static_cast<std::size_t>(k))) throw std::invalid_argument("extension must contain the base moves");

  ReportBuilder rb("extension", ext, bounds, false);
  rb->game = format_game(base) + " -> " + format_game(ext) + " n=" + std::to_string(ext.n());
  const int n = ext.n();
  const int a = base.min_move();

  std::vector<int> extra;
  for (int k : ext.moves())
    if (!base.allows(static_cast<std::size_t>(k))) extra.push_back(k);

  const auto roots = enumerate_reduced(base, bounds);
  rb->examined = roots.size();
  Solver base_solver(base, GameGraphMode::Playable, bounds.node_budget);
  Solver ext_solver(ext, GameGraphMode::Playable, bounds.node_budget);
  const Solver base_graph(base, GameGraphMode::Playable, bounds.node_budget);
  const Solver ext_graph(ext, GameGraphMode::Playable, bounds.node_budget);

  const auto in_q = [&](const Position& p) { return q.count(type_of(p, a)) > 0; };
  const auto in_p = [&](const Position& p) { return base_solver.outcome(p) == Outcome::P; };
  const auto in_kept = [&](const Position& p) { return in_p(p) && !in_q(p); };
  // Options using only the added sizes, reduced.
  const auto extra_options = [&](const Position& p) {
    std::vector<Position> out;
    if (extra.empty()) return out;
    for (const MoveSelection& mv : legal_moves(p, ext)) {
      if (base.allows(mv.size())) continue;
      out.push_back(reduced(apply_move(p, mv, ext), ext));
    }
    return out;
  };

  for (const Position& p : roots) {
    if (in_q(p) && !in_p(p)) rb->violations.push_back({p.to_string(), "Q inside P", "N in the base game"});
    if (in_kept(p)) {
      for (const Position& r : extra_options(p))
        if (in_kept(r))
          rb->violations.push_back({p.to_string(), "condition 1: no added move inside P\\Q", "reaches " + r.to_string()});
    }
    if (!in_p(p)) {
      const auto opts = base_graph.options(p);
      const bool into_q = std::any_of(opts.begin(), opts.end(), [&](const Position& r) { return in_q(r) && in_p(r); });
      if (into_q) {
        const auto all = ext_graph.options(p);
        if (std::none_of(all.begin(), all.end(), in_kept))
          rb->violations.push_back({p.to_string(), "condition 2: a move into P\\Q", "none"});
      }
    }
    if (in_q(p) && in_p(p)) {
      const auto opts = extra_options(p);
      if (std::none_of(opts.begin(), opts.end(), in_kept))
        rb->violations.push_back({p.to_string(), "condition 3: an added move into P\\Q", "none"});
    }
    const Outcome predicted = in_kept(p) ? Outcome::P : Outcome::N;
    const Outcome truth = ext_solver.outcome(p);
    if (predicted != truth)
      rb->violations.push_back({p.to_string(), "conclusion: " + str(predicted), "extended oracle " + str(truth)});
  }
  std::string qs;
  for (const auto& t : q) qs += str(t);
  rb->notes.push_back("Q = {" + qs + "}");
  (void)n;
  return rb.finish();
}

// ---------------------------------------------------------------- conjecture, M-rule

VerificationReport check_conjecture(int n, int k, const SweepBounds& bounds, ConjectureVariant variant) {
  if (k < 2 || k > n) throw std::invalid_argument("conjecture needs 2 <= k <= n");
  if (variant == ConjectureVariant::Printed) return run_conjecture(GameSpec::at_least(n, k), bounds, false);
  return conjecture_report(n, k, bounds, variant, false);
}

ConjectureSummary conjecture_summary(int n, int k, const SweepBounds& bounds, ConjectureVariant variant) {
  const GameSpec spec = GameSpec::at_least(n, k);
  ConjectureSummary out;
  Solver solver(spec, GameGraphMode::Playable, bounds.node_budget);
  for (const Position& p : enumerate_reduced(spec, bounds)) {
    ++out.examined;
    if (conjectured_at_least_k(p, n, k, variant) == solver.outcome(p))
      ++out.agreements;
    else if (!out.first_counterexample)
      out.first_counterexample = p;
  }
  return out;
}

VerificationReport check_m_rule(int n, const SweepBounds& bounds) { return m_rule_report(n, bounds, false); }

// ---------------------------------------------------------------- grids

PositionGrid grid_emit(const GameSpec& spec, const SweepBounds& bounds, GridSource source, ConjectureVariant variant) {
  const int n = spec.n();
  const int a = spec.min_move();
  PositionGrid g;
  g.n = n;
  g.rows = 2 * static_cast<std::uint64_t>(a);
  g.game = spec.to_string();
  g.source = source;
  g.cells.assign(g.rows * static_cast<std::size_t>(n + 1), GridCell{});

  for (std::uint64_t s = 0; s < g.rows; ++s)
    for (int o = 0; o <= n; ++o)
      if ((s & 1) != static_cast<std::uint64_t>(o & 1)) g.at(s, o).kind = CellKind::ParityImpossible;

  if (source == GridSource::ClosedForm) {
    std::function<Outcome(PositionType)> rule;
    if (singleton(spec, n - 1) && n >= 2) {
      rule = [n](PositionType t) { return exact_all_but_one_cell(t, n); };
    } else if (n >= 3 && pair_of(spec, n - 1, n)) {
      rule = [n](PositionType t) { return all_but_one_or_all_cell(t, n); };
    } else if (static_cast<int>(spec.moves().size()) == n) {
      rule = [](PositionType t) { return t.o == 0 ? Outcome::P : Outcome::N; };
    } else if (singleton(spec, 1) || (pair_of(spec, 1, n) && (n & 1))) {
      rule = [](PositionType t) { return t.s == 0 ? Outcome::P : Outcome::N; };
    } else if (contiguous_to_n(spec) && a >= 2) {
      g.conjectured = true;
      rule = [n, a, variant](PositionType t) { return conjectured_at_least_k_cell(t, n, a, variant); };
    } else {
      throw std::invalid_argument("no closed-form cell rule for " + spec.to_string() + "; use the oracle source");
    }
    for (std::uint64_t s = 0; s < g.rows; ++s)
      for (int o = 0; o <= n; ++o) {
        GridCell& c = g.at(s, o);
        if (c.kind == CellKind::ParityImpossible) continue;
        c.kind = rule({s, o}) == Outcome::P ? CellKind::P : CellKind::N;
      }
    return g;
  }

  Solver solver(spec, GameGraphMode::Playable, bounds.node_budget);
  for (const Position& p : enumerate_reduced(spec, bounds)) {
    const PositionType t = type_of(p, a);
    GridCell& c = g.at(t.s, t.o);
    (solver.outcome(p) == Outcome::P ? c.p_count : c.n_count)++;
  }
  for (GridCell& c : g.cells) {
    if (c.kind == CellKind::ParityImpossible) continue;
    if (c.p_count && c.n_count)
      c.kind = CellKind::Mixed;
    else if (c.p_count)
      c.kind = CellKind::P;
    else if (c.n_count)
      c.kind = CellKind::N;
  }
  return g;
}

std::string render_grid_text(const PositionGrid& g) {
  std::ostringstream os;
  os << g.game << (g.conjectured ? " [CONJECTURED]" : "") << "  rows s = sum mod " << g.rows
     << ", columns o = odd stacks\n";
  os << " s\\o";
  for (int o = 0; o <= g.n; ++o) os << ' ' << (o % 10);
  os << '\n';
  for (std::uint64_t s = 0; s < g.rows; ++s) {
    char lab[16];
    std::snprintf(lab, sizeof lab, "%4llu", static_cast<unsigned long long>(s));
    std::string row = lab;
    for (int o = 0; o <= g.n; ++o) {
      row += ' ';
      switch (g.at(s, o).kind) {
        case CellKind::P: row += 'P'; break;
        case CellKind::N: row += ' '; break;
        case CellKind::ParityImpossible: row += "·"; break;
        case CellKind::Mixed: row += 'M'; break;
        case CellKind::Empty: row += '?'; break;
      }
    }
    while (row.back() == ' ') row.pop_back();
    os << row << '\n';
  }
  return os.str();
}

std::string render_grid_csv(const PositionGrid& g) {
  std::ostringstream os;
  os << "s,o,cell,p_count,n_count\n";
  for (std::uint64_t s = 0; s < g.rows; ++s)
    for (int o = 0; o <= g.n; ++o) {
      const GridCell& c = g.at(s, o);
      const char* kind = "";
      switch (c.kind) {
        case CellKind::P: kind = "P"; break;
        case CellKind::N: kind = "N"; break;
        case CellKind::ParityImpossible: kind = "parity"; break;
        case CellKind::Mixed: kind = "mixed"; break;
        case CellKind::Empty: kind = "empty"; break;
      }
      os << s << ',' << o << ',' << kind << ',' << c.p_count << ',' << c.n_count << '\n';
    }
  return os.str();
}

std::vector<PositionType> grid_difference(const PositionGrid& a, const PositionGrid& b) {
  if (a.n != b.n || a.rows != b.rows) throw std::invalid_argument("grids have different shapes");
  std::vector<PositionType> out;
  for (std::uint64_t s = 0; s < a.rows; ++s)
    for (int o = 0; o <= a.n; ++o)
      if (a.at(s, o).kind != b.at(s, o).kind) out.push_back({s, o});
  return out;
}

std::string render_report_text(const VerificationReport& r, std::size_t max_shown) {
  std::ostringstream os;
  os << (r.passed() ? "PASS " : r.informational ? "REPORT " : "FAIL ") << r.check << (r.mutated ? " [mutated]" : "") << "  " << r.game
     << "  heights<=" << r.bounds.max_height << "  examined=" << r.examined
     << "  violations=" << r.violations.size() << '\n';
  for (const auto& note : r.notes) os << "  note: " << note << '\n';
  for (std::size_t i = 0; i < r.violations.size() && i < max_shown; ++i) {
    const auto& v = r.violations[i];
    os << "  " << v.position << "  expected " << v.expected << "  observed " << v.observed << '\n';
  }
  if (r.violations.size() > max_shown) os << "  ... " << (r.violations.size() - max_shown) << " more\n";
  return os.str();
}

}  // namespace slowsetnim
