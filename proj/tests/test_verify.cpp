#include <doctest.h>

#include "slowsetnim/verify.hpp"

using namespace slowsetnim;

namespace {

SweepBounds bounds(int n, Height h, unsigned workers = 1) {
  SweepBounds b;
  b.n = n;
  b.max_height = h;
  b.workers = workers;
  return b;
}

}  // namespace

TEST_CASE("enumeration") {
  CHECK(enumerate_canonical(9, 6).size() == 5005);
  CHECK(enumerate_canonical(3, 2).size() == 10);
  CHECK(enumerate_canonical(0, 3).size() == 1);
  const auto red = enumerate_reduced(GameSpec::exact(3, 2), bounds(3, 3));
  const auto has = [&](const Position& p) { return std::find(red.begin(), red.end(), p) != red.end(); };
  CHECK(has(Position{1, 1, 2}));
  CHECK_FALSE(has(Position{1, 1, 3}));
  CHECK(has(Position{0, 0, 0}));
  CHECK(std::is_sorted(red.begin(), red.end()));
}

TEST_CASE("registry covers every result") {
  std::set<std::string> names;
  for (const CheckInfo& c : check_registry()) names.insert(c.name);
  const std::set<std::string> want{
      "nirb_iff_reduced", "nirb_min_element", "reduction_algorithms", "ctt_reduced", "ctt_maximal",
      "move_sequences", "same_reduction", "preimage_padding", "graph_correspondence", "unplayable_monotone",
      "generalized_reduction", "noredopts", "reduced_position_form", "exact_all_but_one", "structural",
      "all_but_one_or_all", "all_but_one_or_all_delta", "game_extension", "one_or_all", "single", "all_stacks",
      "moore_full", "conjecture_at_least_k", "m_rule", "parity_link", "cell_function", "partition_test",
      "classify_dispatch"};
  CHECK(names == want);
  CHECK_THROWS_AS(find_check("no_such_check"), std::invalid_argument);
  CHECK_THROWS_AS(check_theorem("noredopts", GameSpec::exact(4, 2), bounds(4, 4)), std::invalid_argument);
}

TEST_CASE("every check passes on its default game and every mutation is caught") {
  for (const CheckInfo& c : check_registry()) {
    const GameSpec g = c.default_game(4);
    CAPTURE(c.name);
    REQUIRE(c.applies(g));
    const auto ok = check_theorem(c.name, g, bounds(4, 6));
    if (c.name == "conjecture_at_least_k") {
      CHECK(ok.informational);
    } else {
      CHECK_MESSAGE(ok.passed(), render_report_text(ok));
    }
    CHECK(ok.examined > 0);
    const auto bad = check_theorem(c.name, g, bounds(4, 6), true);
    CHECK_MESSAGE(!bad.passed(), "mutated control passed: " << c.name);
    CHECK(bad.mutated);
  }
}

TEST_CASE("checks on other games and sizes") {
  const SweepBounds b = bounds(5, 5);
  for (const GameSpec& g : {GameSpec::exact(5, 2), GameSpec(5, {2, 4}), GameSpec::at_least(5, 3)}) {
    for (std::string name : {"nirb_iff_reduced", "nirb_min_element", "reduction_algorithms", "ctt_maximal",
                             "move_sequences", "same_reduction", "graph_correspondence", "unplayable_monotone",
                             "generalized_reduction", "structural", "classify_dispatch"}) {
      CAPTURE(name);
      CAPTURE(g.to_string());
      CHECK(check_theorem(name, g, b).passed());
    }
  }
  CHECK(check_theorem("noredopts", GameSpec::exact(5, 4), bounds(5, 7)).passed());
  CHECK(check_theorem("reduced_position_form", GameSpec::exact(5, 4), bounds(5, 7)).passed());
  CHECK(check_theorem("cell_function", GameSpec(5, {4, 5}), bounds(5, 7)).passed());
}

TEST_CASE("parallel sweeps give identical reports") {
  for (const char* name : {"nirb_iff_reduced", "move_sequences", "m_rule", "unplayable_monotone"}) {
    const auto one = check_theorem(name, GameSpec::exact(5, 4), bounds(5, 5, 1), true);
    const auto four = check_theorem(name, GameSpec::exact(5, 4), bounds(5, 5, 4), true);
    CHECK(one.violations == four.violations);
    CHECK(one.examined == four.examined);
  }
}

TEST_CASE("closed-form grids") {
  const auto g = grid_emit(GameSpec::exact(9, 8), bounds(9, 0), GridSource::ClosedForm);
  CHECK(g.rows == 16);
  for (std::uint64_t s = 0; s < 16; ++s)
    for (int o = 0; o <= 9; ++o) {
      const CellKind k = g.at(s, o).kind;
      if ((s + static_cast<std::uint64_t>(o)) % 2) {
        CHECK(k == CellKind::ParityImpossible);
        continue;
      }
      bool p = false;
      if (s < 7) p = static_cast<std::uint64_t>(o) <= s;
      else if (s == 7) p = o % 2 == 1;
      else if (s < 15) p = static_cast<std::uint64_t>(o) <= 14 - s;
      CHECK((k == CellKind::P) == p);
    }
  const auto g5 = grid_emit(GameSpec(9, {8, 9}), bounds(9, 0), GridSource::ClosedForm);
  CHECK(grid_difference(g, g5) == std::vector<PositionType>{{7, 9}});
  CHECK_THROWS_AS(grid_emit(GameSpec::exact(5, 2), bounds(5, 0), GridSource::ClosedForm), std::invalid_argument);

  const std::string text = render_grid_text(g);
  CHECK(text.find("·") != std::string::npos);
  CHECK(text.find('M') == std::string::npos);
  CHECK(render_grid_csv(g5).rfind("s,o,cell,p_count,n_count\n", 0) == 0);
  CHECK(grid_emit(GameSpec::at_least(9, 6), bounds(9, 0), GridSource::ClosedForm).conjectured);
}

TEST_CASE("oracle grids equal closed-form grids on populated cells") {
  for (int n = 3; n <= 5; ++n) {
    for (const GameSpec& spec : {GameSpec::exact(n, n - 1), GameSpec(n, {n - 1, n})}) {
      const auto cf = grid_emit(spec, bounds(n, 7), GridSource::ClosedForm);
      const auto orc = grid_emit(spec, bounds(n, 7), GridSource::Oracle);
      for (std::uint64_t s = 0; s < cf.rows; ++s)
        for (int o = 0; o <= n; ++o) {
          const CellKind k = orc.at(s, o).kind;
          CHECK(k != CellKind::Mixed);
          if (k != CellKind::Empty) CHECK(k == cf.at(s, o).kind);
        }
    }
  }
}

TEST_CASE("extension checker") {
  for (int n = 3; n <= 5; ++n) {
    const auto r = check_extension(GameSpec::exact(n, n - 1), GameSpec(n, {n - 1, n}),
                                   {{static_cast<std::uint64_t>(n - 2), n}}, bounds(n, 6));
    CHECK_MESSAGE(r.passed(), render_report_text(r));
    const auto bad = check_extension(GameSpec::exact(n, n - 1), GameSpec(n, {n - 1, n}), {{0, 0}}, bounds(n, 6));
    CHECK_FALSE(bad.passed());
    const bool linked = std::any_of(bad.violations.begin(), bad.violations.end(),
                                    [](const Violation& v) { return v.expected.rfind("condition", 0) == 0; });
    CHECK(linked);
  }
  // No extra moves and no Q: vacuous.
  CHECK(check_extension(GameSpec::exact(4, 3), GameSpec::exact(4, 3), {}, bounds(4, 6)).passed());
  CHECK_THROWS_AS(check_extension(GameSpec::exact(4, 3), GameSpec(4, {2, 3}), {}, bounds(4, 6)),
                  std::invalid_argument);
}

TEST_CASE("conjecture harness") {
  const auto proven = check_conjecture(4, 3, bounds(4, 7));
  CHECK(proven.passed());
  const auto s = conjecture_summary(4, 3, bounds(4, 7), ConjectureVariant::Printed);
  CHECK(s.agreement_percent() == 100.0);

  const auto r = check_conjecture(4, 2, bounds(4, 6));
  CHECK(r.informational);
  CHECK_FALSE(r.notes.empty());
  const auto printed = conjecture_summary(4, 2, bounds(4, 6), ConjectureVariant::Printed);
  REQUIRE(printed.first_counterexample.has_value());
  CHECK(*printed.first_counterexample == Position{0, 1, 2, 2});
  const auto row = conjecture_summary(4, 2, bounds(4, 6), ConjectureVariant::ParityOfRow);
  CHECK(row.agreements == row.examined);
  CHECK_THROWS_AS(check_conjecture(4, 1, bounds(4, 4)), std::invalid_argument);
}

TEST_CASE("M-rule sweeps") {
  CHECK(check_m_rule(4, bounds(4, 7)).passed());
  CHECK(check_m_rule(3, bounds(3, 8)).passed());
}

TEST_CASE("report rendering") {
  auto r = check_theorem("structural", GameSpec::exact(4, 3), bounds(4, 5), true);
  const std::string text = render_report_text(r, 2);
  CHECK(text.rfind("FAIL structural [mutated]", 0) == 0);
  CHECK(text.find("more") != std::string::npos);
}
