#include <doctest.h>

#include "oracle.hpp"
#include "slowsetnim/closedform.hpp"
#include "slowsetnim/reduction.hpp"

using namespace slowsetnim;

namespace {

// The three-part P set written out directly from its definition.
bool in_triangles(std::uint64_t s, int o, std::uint64_t k, bool middle) {
  const auto uo = static_cast<std::uint64_t>(o);
  if ((s % 2) != uo % 2) return false;
  if (s < k - 1) return uo <= s;
  if (s == k - 1) return middle;
  if (s < 2 * k - 1) return uo <= 2 * (k - 1) - s;
  return false;
}

}  // namespace

TEST_CASE("structural rule") {
  CHECK(structural_outcome(Position{4, 4, 6, 8, 12, 12, 18}, GameSpec::exact(7, 6)) == Outcome::P);
  CHECK(structural_outcome(Position{9, 10, 11, 13, 13, 15}, GameSpec::exact(6, 5)) == Outcome::N);
  CHECK_FALSE(structural_outcome(Position{10, 10, 11, 11, 11}, GameSpec::exact(5, 4)).has_value());

  const std::vector<GameSpec> games{GameSpec::exact(4, 2), GameSpec::exact(4, 3), GameSpec(4, {2, 3}),
                                    GameSpec(4, {2, 4}), GameSpec(5, {2, 3}), GameSpec::exact(5, 3)};
  for (const GameSpec& g : games) {
    oracle::Outcomes truth(std::vector<int>(g.moves().begin(), g.moves().end()));
    for (const auto& h : oracle::canonical(g.n(), g.n() == 5 ? 5 : 6)) {
      const auto v = structural_outcome(Position(h), g);
      if (v) CHECK(to_char(*v) == truth.cls(h));
    }
  }
}

TEST_CASE("all-but-one rule") {
  CHECK(classify_exact_all_but_one(Position{9, 10, 11, 13, 13, 14}, 6) == Outcome::N);
  CHECK(classify_exact_all_but_one(Position{4, 4, 6, 7, 7, 7, 7}, 7) == Outcome::P);
  CHECK(classify_exact_all_but_one(Position{0, 0, 0, 0}, 4) == Outcome::P);
  CHECK_THROWS_AS(classify_exact_all_but_one(Position{0, 0, 0, 9}, 4), std::invalid_argument);
  CHECK_THROWS_AS(classify_exact_all_but_one(Position{0, 0, 0}, 4), std::invalid_argument);

  for (int n = 3; n <= 9; ++n) {
    const auto k = static_cast<std::uint64_t>(n - 1);
    for (std::uint64_t s = 0; s < 2 * k; ++s)
      for (int o = 0; o <= n; ++o) {
        const bool want = in_triangles(s, o, k, o % 2 == n % 2);
        CHECK((exact_all_but_one_cell({s, o}, n) == Outcome::P) == want);
        const bool want5 = want && !(s == k - 1 && o == n);
        CHECK((all_but_one_or_all_cell({s, o}, n) == Outcome::P) == want5);
      }
  }
}

TEST_CASE("all-but-one rules against the oracle on reduced positions") {
  for (int n = 3; n <= 5; ++n) {
    for (const GameSpec& g : {GameSpec::exact(n, n - 1), GameSpec(n, {n - 1, n})}) {
      oracle::Outcomes truth(std::vector<int>(g.moves().begin(), g.moves().end()));
      for (const auto& h : oracle::canonical(n, n == 5 ? 6 : 7)) {
        const Position p(h);
        if (!is_reduced(p, g)) continue;
        const Outcome got = g.moves().size() == 1 ? classify_exact_all_but_one(p, n) : classify_all_but_one_or_all(p, n);
        CHECK(to_char(got) == truth.cls(h));
      }
    }
  }
}

TEST_CASE("all-but-one-or-all cells") {
  for (int n = 3; n <= 8; ++n) {
    const auto k = static_cast<std::uint64_t>(n - 1);
    CHECK(all_but_one_or_all_cell({k - 1, n}, n) == Outcome::N);
    CHECK(all_but_one_or_all_cell({2 * k - 2, 0}, n) == Outcome::P);
    CHECK(all_but_one_or_all_cell({0, 0}, n) == Outcome::P);
  }
}

TEST_CASE("one-or-all rule") {
  CHECK(classify_one_or_all(Position{1, 1, 2}, 3) == Outcome::P);
  CHECK(classify_one_or_all(Position{1, 1, 1, 1}, 4) == Outcome::N);
  CHECK(classify_one_or_all(Position{0, 0, 0, 0}, 4) == Outcome::P);
  for (int n = 3; n <= 5; ++n) {
    oracle::Outcomes truth({1, n});
    for (const auto& h : oracle::canonical(n, 6)) CHECK(to_char(classify_one_or_all(Position(h), n)) == truth.cls(h));
  }
}

TEST_CASE("trivial families") {
  CHECK(classify_single(Position{0, 0, 0}) == Outcome::P);
  CHECK(classify_single(Position{0, 0, 1}) == Outcome::N);
  CHECK(classify_all_stacks(Position{0, 5, 7}) == Outcome::P);
  CHECK(classify_all_stacks(Position{1, 1, 1}) == Outcome::N);
  CHECK(classify_moore_full(Position{2, 4, 6}) == Outcome::P);
  CHECK(classify_moore_full(Position{0, 0, 0}) == Outcome::P);
  CHECK(classify_moore_full(Position{1, 2, 2}) == Outcome::N);
  for (int n = 1; n <= 4; ++n) {
    oracle::Outcomes one({1});
    oracle::Outcomes all({n});
    std::vector<int> every;
    for (int i = 1; i <= n; ++i) every.push_back(i);
    oracle::Outcomes full(every);
    for (const auto& h : oracle::canonical(n, 5)) {
      const Position p(h);
      CHECK(to_char(classify_single(p)) == one.cls(h));
      CHECK(to_char(classify_all_stacks(p)) == all.cls(h));
      CHECK(to_char(classify_moore_full(p)) == full.cls(h));
    }
  }
}

TEST_CASE("conjectured at-least-k rule") {
  // The k = n-1 case is the proven {n-1, n} rule.
  for (int n = 3; n <= 9; ++n) {
    const auto k = static_cast<std::uint64_t>(n - 1);
    for (std::uint64_t s = 0; s < 2 * k; ++s)
      for (int o = 0; o <= n; ++o)
        CHECK(conjectured_at_least_k_cell({s, o}, n, n - 1) == all_but_one_or_all_cell({s, o}, n));
  }
  // Columns with o in A are N.
  for (std::uint64_t s = 0; s < 12; ++s)
    for (int o = 6; o <= 9; ++o) CHECK(conjectured_at_least_k_cell({s, o}, 9, 6) == Outcome::N);
  // The variants differ only on the middle row when n and k-1 differ in parity.
  CHECK(conjectured_at_least_k_cell({1, 1}, 4, 2, ConjectureVariant::Printed) == Outcome::N);
  CHECK(conjectured_at_least_k_cell({1, 1}, 4, 2, ConjectureVariant::ParityOfRow) == Outcome::P);
  CHECK_THROWS_AS(conjectured_at_least_k_cell({0, 0}, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(conjectured_at_least_k(Position{0, 0, 0, 9}, 4, 2), std::invalid_argument);
}

TEST_CASE("closed_form_rule dispatch table") {
  CHECK(closed_form_rule(GameSpec::exact(4, 1)) == VerdictSource::Single);
  CHECK(closed_form_rule(GameSpec::at_most(4, 4)) == VerdictSource::MooreFull);
  CHECK(closed_form_rule(GameSpec::exact(4, 4)) == VerdictSource::AllStacks);
  CHECK(closed_form_rule(GameSpec::exact(4, 3)) == VerdictSource::ExactAllButOne);
  CHECK(closed_form_rule(GameSpec(4, {3, 4})) == VerdictSource::AllButOneOrAll);
  CHECK(closed_form_rule(GameSpec(4, {1, 4})) == VerdictSource::OneOrAll);
  CHECK_FALSE(closed_form_rule(GameSpec::exact(4, 2)).has_value());
  CHECK_FALSE(closed_form_rule(GameSpec::at_least(5, 3)).has_value());
}

TEST_CASE("classify") {
  const auto a = classify(Position{1, 1, 100}, GameSpec::exact(3, 2));
  CHECK(a.outcome == Outcome::N);
  CHECK(a.source == VerdictSource::Structural);

  ClassifyOptions only_oracle;
  only_oracle.allow_structural = false;
  only_oracle.allow_closed_form = false;
  const auto b = classify(Position{1, 1, 100}, GameSpec::exact(3, 2), only_oracle);
  CHECK(b.outcome == Outcome::N);
  CHECK(b.source == VerdictSource::Oracle);
  CHECK(b.evaluated == Position{1, 1, 2});

  const auto c = classify(Position{4, 4, 6, 8, 12, 12, 18}, GameSpec::exact(7, 6));
  CHECK(c.outcome == Outcome::P);
  CHECK(c.source == VerdictSource::Structural);
  CHECK(c.evaluated == Position{4, 4, 6, 8, 12, 12, 18});

  const GameSpec seven = GameSpec::exact(8, 7);
  const auto d = classify(Position{12, 20, 33, 52, 79, 112, 155, 170}, seven);
  CHECK(d.source == VerdictSource::ExactAllButOne);
  CHECK(d.evaluated == Position{12, 20, 32, 32, 32, 32, 32, 32});
  CHECK(d.outcome == Outcome::P);
  CHECK(outcome(d.evaluated, seven, GameGraphMode::Playable) == Outcome::P);

  const auto e = classify(Position{0, 1, 2, 2}, GameSpec::at_least(4, 2));
  CHECK(e.conjectured());
  ClassifyOptions no_conj;
  no_conj.allow_conjecture = false;
  const auto f = classify(Position{0, 1, 2, 2}, GameSpec::at_least(4, 2), no_conj);
  CHECK(f.source == VerdictSource::Oracle);
  CHECK(f.outcome == Outcome::P);

  ClassifyOptions starve = only_oracle;
  starve.node_budget = 2;
  const auto g = classify(Position{5, 6, 7}, GameSpec::exact(3, 2), starve);
  CHECK_FALSE(g.outcome.has_value());
  CHECK(g.source == VerdictSource::Unknown);
  CHECK(to_string(VerdictSource::Unknown) == "Unknown");
}

TEST_CASE("classify agrees with the oracle on every position") {
  for (int n = 3; n <= 5; ++n) {
    for (const GameSpec& g : {GameSpec::exact(n, n - 1), GameSpec(n, {n - 1, n}), GameSpec::exact(n, 2)}) {
      oracle::Outcomes truth(std::vector<int>(g.moves().begin(), g.moves().end()));
      for (const auto& h : oracle::canonical(n, n == 5 ? 5 : 7)) {
        const auto v = classify(Position(h), g);
        REQUIRE(v.outcome.has_value());
        CHECK(to_char(*v.outcome) == truth.cls(h));
      }
    }
  }
}
