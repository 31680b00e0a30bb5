#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "slowsetnim/reduction.hpp"

using namespace slowsetnim;

namespace {

const Position kTable{12, 20, 33, 52, 79, 112, 155, 170};
const Position kTableBig{12, 20, 33, 52, 79, 112, 155, 17000};
const Position kTableReduced{12, 20, 33, 52, 79, 98, 98, 98};
const GameSpec kFive = GameSpec::exact(8, 5);

std::vector<Height> nirb_column(const ReductionResult& r) {
  std::vector<Height> out;
  for (const auto& row : r.trace->iterative) out.push_back(row.nirb);
  return out;
}

}  // namespace

TEST_CASE("iterative reduction reproduces the chop table") {
  const auto r = reduce_iterative(kTable, kFive, true);
  CHECK(r.reduced == kTableReduced);
  CHECK(r.steps == 7);
  REQUIRE(r.trace->iterative.size() == 8);
  CHECK(nirb_column(r) == std::vector<Height>{126, 112, 106, 102, 100, 99, 98, 98});
  CHECK(r.trace->iterative[1].iterate == Position{12, 20, 33, 52, 79, 112, 126, 126});
  CHECK(r.trace->iterative.back().reduced);
  CHECK_FALSE(r.trace->iterative.front().reduced);

  const auto big = reduce_iterative(kTableBig, kFive, true);
  CHECK(big.reduced == kTableReduced);
  CHECK(nirb_column(big) == std::vector<Height>{3492, 791, 250, 142, 118, 108, 104, 101, 99, 98, 98});

  const auto same = reduce_iterative(kTableReduced, kFive, true);
  CHECK(same.steps == 0);
  CHECK(same.reduced == kTableReduced);
}

TEST_CASE("linear reduction reproduces the prefix-sum table") {
  const auto r = reduce_linear(kTable, kFive, true);
  CHECK(r.reduced == kTableReduced);
  CHECK(r.trace->partial_sums == std::vector<Height>{0, 12, 32, 65, 117, 196, 308, 463, 633});
  const auto& rows = r.trace->linear;
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].candidate == 126);
  CHECK_FALSE(rows[0].hi.has_value());
  CHECK(rows[1].candidate == 115);
  CHECK(rows[2].candidate == 102);
  const LinearRow& stop = rows[3];
  CHECK(stop.j == 3);
  CHECK(stop.divisor == 2);
  CHECK(stop.candidate == 98);
  CHECK(stop.lo == 79);
  CHECK(stop.hi == 112);
  CHECK(stop.hit);
  for (std::size_t i = 0; i < 3; ++i) CHECK_FALSE(rows[i].hit);

  const auto big = reduce_linear(kTableBig, kFive, true);
  CHECK(big.reduced == kTableReduced);
  CHECK(big.trace->partial_sums.back() == 17463);
  CHECK(big.trace->linear.front().candidate == 3492);
  CHECK(big.trace->linear.size() == 4);
  CHECK(big.trace->linear.back().candidate == 98);
  CHECK(big.steps == r.steps);
}

TEST_CASE("linear reduction on a zero-heavy position") {
  const auto r = reduce_linear(Position{0, 0, 5}, GameSpec::exact(3, 2), true);
  CHECK(r.reduced == Position{0, 0, 0});
  CHECK(r.unplayable == std::vector<Height>{0, 0, 5});
  // The candidate 0 sits at the closed lower end of the scanned interval.
  CHECK(r.trace->linear.back().candidate == 0);
  CHECK(r.trace->linear.back().hit);
}

TEST_CASE("closed interval test: the half-open reading picks a cap that is too small") {
  // a=3: j=1 candidate floor(7/2)=3 equals p_{n-1}=3, so (3,10] misses it.
  const GameSpec g = GameSpec::exact(4, 3);
  const Position p{2, 2, 3, 10};
  CHECK(reduced(p, g) == Position{2, 2, 3, 3});
  CHECK(reduce_iterative(p, g).reduced == Position{2, 2, 3, 3});
  const auto u = oracle::unplayable({2, 2, 3, 10}, {3});
  CHECK(u == std::vector<Height>{0, 0, 0, 7});
}

TEST_CASE("reduce examples") {
  const auto r = reduce(Position{1, 2, 5, 6}, GameSpec::exact(4, 3));
  CHECK(r.reduced == Position{1, 2, 3, 3});
  CHECK(r.unplayable == std::vector<Height>{0, 0, 2, 3});
  const auto s = reduce(Position{1, 1, 100}, GameSpec::exact(3, 2));
  CHECK(s.reduced == Position{1, 1, 2});
  CHECK(s.unplayable == std::vector<Height>{0, 0, 98});
  const auto z = reduce(Position{0, 0, 0, 0}, GameSpec::exact(4, 3));
  CHECK(z.reduced == Position{0, 0, 0, 0});
  CHECK(z.unplayable == std::vector<Height>{0, 0, 0, 0});
  CHECK_THROWS_AS(reduce(Position{1, 2}, GameSpec::exact(3, 2)), std::invalid_argument);
}

TEST_CASE("algorithms agree with each other and the brute-force unplayable tokens") {
  const std::vector<GameSpec> games{GameSpec::exact(3, 2), GameSpec::exact(4, 3), GameSpec(4, {2, 4}),
                                    GameSpec::at_least(5, 3), GameSpec::exact(5, 4), GameSpec(5, {1, 5})};
  for (const GameSpec& g : games) {
    const std::vector<int> moves(g.moves().begin(), g.moves().end());
    for (const auto& h : oracle::canonical(g.n(), g.n() <= 4 ? 7 : 5)) {
      const Position p(h);
      const auto lin = reduce_linear(p, g);
      const auto it = reduce_iterative(p, g);
      CAPTURE(p.to_string());
      CHECK(lin.reduced == it.reduced);
      CHECK(lin.unplayable == oracle::unplayable(h, moves));
      CHECK(is_reduced(lin.reduced, g));
      for (std::size_t i = 0; i < p.size(); ++i) CHECK(lin.reduced[i] + lin.unplayable[i] == p[i]);
      const bool none = std::all_of(lin.unplayable.begin(), lin.unplayable.end(), [](Height x) { return x == 0; });
      CHECK(none == is_reduced(p, g));
      CHECK(it.steps <= p.max());
    }
  }
}

TEST_CASE("algorithms agree on large random heights") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 3000; ++t) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const int a = 1 + static_cast<int>(rng() % n);
    const GameSpec g = GameSpec::at_least(n, a);
    std::vector<Height> v(static_cast<std::size_t>(n));
    for (auto& h : v) h = rng() % (t % 2 ? 1000 : (Height{1} << 40));
    const Position p(v);
    CHECK(reduce_linear(p, g).reduced == reduce_iterative(p, g).reduced);
    CHECK(reduce_linear(p, g).steps <= static_cast<std::size_t>(a));
  }
}

TEST_CASE("ctt lemmas") {
  const GameSpec g = GameSpec::exact(4, 3);
  for (const auto& h : oracle::canonical(4, 7)) {
    const Position p(h);
    if (is_reduced(p, g))
      for (Height m = 0; m <= p.max(); ++m) CHECK(is_reduced(ctt(p, m), g));
    Height best = 0;
    for (Height m = 0; m <= p.max(); ++m)
      if (is_reduced(ctt(p, m), g)) best = m;
    CHECK(reduced(p, g) == ctt(p, best));
  }
}

TEST_CASE("reduction after a move") {
  const GameSpec four = GameSpec::exact(5, 4);
  CHECK(reduction_needed_after(Position{5, 6, 9, 9, 9}, MoveSelection{{0, 1, 2, 3}}, four));
  CHECK_FALSE(reduction_needed_after(Position{6, 7, 8, 8, 8}, MoveSelection{{0, 1, 2, 3}}, four));
  CHECK_THROWS_AS(reduction_needed_after(Position{1, 1, 1, 1, 9}, MoveSelection{{0, 1, 2, 3}}, four),
                  std::invalid_argument);

  // ell = a with every maximum played never needs reduction.
  for (const auto& h : oracle::canonical(5, 5)) {
    const Position p(h);
    if (!is_reduced(p, four)) continue;
    for (const auto& mv : legal_moves(p, four)) {
      if (omits_max(p, mv)) continue;
      CHECK_FALSE(reduction_needed_after(p, mv, four));
      CHECK_FALSE(reduction_possible_flags(p, 4, false, four));
    }
  }
}

TEST_CASE("reduction predicate: necessary condition and the {n-1,n} all-stacks case") {
  for (int n = 3; n <= 5; ++n) {
    const GameSpec g(n, {n - 1, n});
    for (const auto& h : oracle::canonical(n, 6)) {
      const Position p(h);
      if (!is_reduced(p, g)) continue;
      for (const auto& mv : legal_moves(p, g)) {
        const bool need = reduction_needed_after(p, mv, g);
        CHECK((!need || reduction_possible_flags(p, static_cast<int>(mv.size()), omits_max(p, mv), g)));
      }
      // Playing on all stacks: the flag holds iff sigma = (n-1) * p_n.
      if (p.nonzero_count() == static_cast<std::size_t>(n))
        CHECK(reduction_possible_flags(p, n, false, g) == (sigma(p) == static_cast<Height>(n - 1) * p.max()));
    }
  }
  // Omitted maximum in SN(n,{n-1}) with remainder below k.
  const GameSpec g = GameSpec::exact(4, 3);
  CHECK(reduction_possible_flags(Position{1, 1, 2, 2}, 3, true, g));
  CHECK_FALSE(reduction_possible_flags(Position{3, 3, 3, 3}, 3, true, g));
}

TEST_CASE("reduced option closed form") {
  for (int n = 3; n <= 5; ++n) {
    const GameSpec g = GameSpec::exact(n, n - 1);
    const auto k = static_cast<std::uint64_t>(n - 1);
    std::size_t seen = 0;
    for (const auto& h : oracle::canonical(n, 7)) {
      const Position p(h);
      if (!is_reduced(p, g)) continue;
      for (const auto& mv : legal_moves(p, g)) {
        if (!reduction_needed_after(p, mv, g)) continue;
        std::size_t omitted = 0;
        while (omitted < mv.size() && mv.indices[omitted] == omitted) ++omitted;
        const Position want(oracle::sorted([&] {
          auto c = h;
          for (auto i : mv.indices) --c[i];
          auto u = oracle::unplayable(c, {n - 1});
          for (std::size_t i = 0; i < c.size(); ++i) c[i] -= u[i];
          return c;
        }()));
        CHECK(reduced_option_closed_form(p, omitted, g) == want);
        const PositionType t = position_type(p, g);
        CHECK(reduced_option_type(t, max_multiplicity(p), n) == position_type(want, g));
        CHECK(((p.max() % 2 == 0) == (t.s < k)));
        ++seen;
      }
    }
    CHECK(seen > 0);
  }
  CHECK_THROWS_AS(reduced_option_closed_form(Position{3, 3, 3, 3}, 3, GameSpec::exact(4, 3)), std::invalid_argument);
  CHECK_THROWS_AS(reduced_option_closed_form(Position{1, 1, 2, 2}, 0, GameSpec::exact(4, 3)), std::invalid_argument);
}

TEST_CASE("reduced option type formulas") {
  const int n = 6;
  const std::uint64_t k = 5;
  for (std::uint64_t s = 1; s < k; ++s)
    for (int o = 0; o <= n; ++o) CHECK(reduced_option_type({s, o}, 1, n) == PositionType{s + k - 1, n - o});
  for (int alpha = 1; alpha <= 3; ++alpha)
    CHECK(reduced_option_type({0, 0}, alpha, n) == PositionType{k - 1 - alpha, n - alpha});
}
