#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "nuca/engine.hpp"

using namespace nuca;

namespace {

const GroupUniverse kZ(1, {});
const Alphabet kBinary(2);

Memory pair_memory(const GroupUniverse& u) {
  return Memory(u, {u.element({0}), u.element({1})});
}

LocalRule xor_rule(const GroupUniverse& u) {
  return LocalRule(kBinary, pair_memory(u), {0, 1, 1, 0});
}

}  // namespace

TEST_CASE("table index order round trips") {
  for (int q = 1; q <= 3; ++q) {
    for (std::size_t cells = 1; cells <= 3; ++cells) {
      std::vector<Element> memory_cells;
      for (std::size_t i = 0; i < cells; ++i)
        memory_cells.push_back(kZ.element({static_cast<std::int64_t>(i)}));
      const Memory m(kZ, memory_cells);
      const std::uint64_t total = checked_pow(static_cast<std::uint64_t>(q), cells, 1 << 20);
      for (std::uint64_t code = 0; code < total; ++code)
        CHECK(Pattern::from_code(kZ, m.as_set(), q, code).code(q) == code);
    }
  }
}

TEST_CASE("projection rule") {
  const LocalRule pi = LocalRule::projection(kBinary, pair_memory(kZ));
  CHECK(pi.table() == std::vector<int>{0, 0, 1, 1});
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK(pi.apply_letters({a, b}) == a);

  const Memory no_identity(kZ, {kZ.element({1})});
  CHECK_THROWS_AS(LocalRule::projection(kBinary, no_identity), std::invalid_argument);

  // The constant-projection automaton is the identity on random windows.
  const Nuca identity(RuleConfiguration::constant(pi));
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::uint64_t> code(0, 31);
  const FiniteSubset window = kZ.ball(1);
  const FiniteSubset support = kZ.product(window, pair_memory(kZ).as_set());
  for (int i = 0; i < 20; ++i) {
    const Pattern x = Pattern::from_code(kZ, support, 2, code(rng));
    CHECK(evaluate_window(identity, x, window) == x.restricted(window));
  }
}

TEST_CASE("memory enlargement preserves semantics") {
  const LocalRule rule = xor_rule(kZ);
  const Memory ball1 = Memory::from_set(kZ, kZ.ball(1));
  const LocalRule enlarged = rule.enlarged(ball1);
  // Depends only on the original coordinates.
  for (std::uint64_t code = 0; code < 8; ++code) {
    const Pattern v = Pattern::from_code(kZ, ball1.as_set(), 2, code);
    CHECK(enlarged.apply(v) == (v.at(kZ.element({0})) ^ v.at(kZ.element({1}))));
  }
  CHECK(rule.enlarged(rule.memory()) == rule);
  CHECK_THROWS_AS(rule.enlarged(Memory(kZ, {kZ.element({0})})), std::invalid_argument);

  // Windowed evaluation agrees before and after enlargement.
  const Nuca before(RuleConfiguration::constant(rule));
  const Nuca after(RuleConfiguration::constant(enlarged));
  const FiniteSubset window = FiniteSubset::of({kZ.element({0})});
  const FiniteSubset support = kZ.product(kZ.ball(1), kZ.ball(1));
  for (std::uint64_t code = 0; code < 32; ++code) {
    const Pattern x = Pattern::from_code(kZ, support, 2, code);
    CHECK(evaluate_window(before, x, window) == evaluate_window(after, x, window));
  }
}

TEST_CASE("memory normalization appends the identity") {
  const Memory m(kZ, {kZ.element({1})});
  const Memory with_id = m.with_identity();
  CHECK(with_id.cells() == std::vector<Element>{kZ.element({1}), kZ.element({0})});
  CHECK(with_id.with_identity() == with_id);
}

TEST_CASE("induced local map") {
  // Projection at a single cell is the projection block map.
  const LocalRule pi = LocalRule::projection(kBinary, pair_memory(kZ));
  const FiniteSubset origin = FiniteSubset::of({kZ.element({0})});
  const BlockMap proj = induced_local_map(origin, {pi});
  CHECK(proj.domain() == pair_memory(kZ).as_set());
  for (std::uint64_t code = 0; code < 4; ++code)
    CHECK(proj.apply_code(code) == code >> 1);

  // Hand-evaluated xor window: input (1,1,0) on {0,1,2} maps to (0,1).
  const FiniteSubset window = FiniteSubset::of({kZ.element({0}), kZ.element({1})});
  const BlockMap f = induced_local_map(window, {xor_rule(kZ), xor_rule(kZ)});
  CHECK(f.domain().size() == 3);
  CHECK(f.apply_letters({1, 1, 0}) == std::vector<int>{0, 1});

  CHECK_THROWS_AS(induced_local_map(window, {pi}), std::invalid_argument);
}

TEST_CASE("induced local map matches the engine") {
  const GroupUniverse z5(0, {5});
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<std::int64_t> cell(0, 4);
  const Memory m = pair_memory(z5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> bg_table(4), exc_table(4);
    for (auto& v : bg_table) v = bit(rng);
    for (auto& v : exc_table) v = bit(rng);
    const Nuca n(RuleConfiguration::asymptotically_constant(
        LocalRule(kBinary, m, bg_table),
        {{z5.element({cell(rng)}), LocalRule(kBinary, m, exc_table)}}));
    std::vector<Element> wcells{z5.element({cell(rng)}), z5.element({cell(rng)})};
    const FiniteSubset window = FiniteSubset::of(wcells);
    const FiniteSubset domain = z5.product(window, m.as_set());
    std::uniform_int_distribution<std::uint64_t> code(
        0, checked_pow(2, domain.size(), 1 << 20) - 1);
    const Pattern x = Pattern::from_code(z5, domain, 2, code(rng));
    CHECK(induced_local_map(n.config(), window).apply(x) == evaluate_window(n, x, window));
  }
}

TEST_CASE("induced local maps restrict consistently") {
  const FiniteSubset small = FiniteSubset::of({kZ.element({0})});
  const FiniteSubset large = FiniteSubset::of({kZ.element({0}), kZ.element({1})});
  const BlockMap f_small = induced_local_map(small, {xor_rule(kZ)});
  const BlockMap f_large = induced_local_map(large, {xor_rule(kZ), xor_rule(kZ)});
  for (std::uint64_t code = 0; code < 8; ++code) {
    const Pattern x = Pattern::from_code(kZ, f_large.domain(), 2, code);
    CHECK(f_large.apply(x).restricted(small) == f_small.apply(x.restricted(f_small.domain())));
  }
}

TEST_CASE("sparse sites") {
  CHECK(is_geometric_site(kZ.element({4}), 4));
  CHECK(is_geometric_site(kZ.element({-16}), 4));
  CHECK(is_geometric_site(kZ.element({64}), 4));
  CHECK_FALSE(is_geometric_site(kZ.element({1}), 4));
  CHECK_FALSE(is_geometric_site(kZ.element({8}), 4));
  CHECK_FALSE(is_geometric_site(kZ.element({0}), 4));
}

TEST_CASE("singularity windows") {
  const LocalRule pi = LocalRule::projection(kBinary, pair_memory(kZ));

  SUBCASE("asymptotically constant") {
    const RuleConfiguration s = RuleConfiguration::asymptotically_constant(
        pi, {{kZ.element({2}), xor_rule(kZ)}, {kZ.element({-1}), xor_rule(kZ)}});
    const auto f = verify_ubs(s, kZ.ball(1), 1 << 20);
    REQUIRE(f.has_value());
    CHECK(*f == kZ.ball(3));  // smallest ball holding exceptions * window
  }

  SUBCASE("sparse base four") {
    const RuleConfiguration s = RuleConfiguration::sparse_singular(pi, 4, xor_rule(kZ));
    const auto f = verify_ubs(s, kZ.ball(2), 1 << 20);
    REQUIRE(f.has_value());
    CHECK(*f == kZ.ball(16));
    // FE \ F = +-{17,18} carries no site, re-checked cell by cell.
    const FiniteSubset zone = set_difference(kZ.product(*f, kZ.ball(2)), *f);
    CHECK(zone == FiniteSubset::of({kZ.element({-18}), kZ.element({-17}), kZ.element({17}),
                                    kZ.element({18})}));
    for (const Element& g : zone) CHECK(s.rule_at(g) == s.background());
    CHECK_FALSE(verify_ubs(s, kZ.ball(2), 8).has_value());  // exhausted below the first fit
  }

  SUBCASE("constant") {
    const RuleConfiguration s = RuleConfiguration::constant(pi);
    const FiniteSubset window = kZ.ball(2);
    CHECK(*verify_ubs(s, window, 1 << 20) == window);
  }

  SUBCASE("definitional predicate holds for every class") {
    for (int k = 1; k <= 3; ++k) {
      const RuleConfiguration s = RuleConfiguration::sparse_singular(pi, 3, xor_rule(kZ));
      const FiniteSubset window = kZ.ball(k);
      const auto f = verify_ubs(s, window, 1 << 20);
      REQUIRE(f.has_value());
      CHECK(window.subset_of(*f));
      const FiniteSubset zone = set_difference(kZ.product(*f, window), *f);
      for (const Element& g : zone) CHECK(s.rule_at(g) == s.background());
    }
  }

  CHECK_THROWS_AS(
      verify_ubs(RuleConfiguration::constant(pi),
                 FiniteSubset::of({kZ.element({1})}), 1 << 20),
      std::invalid_argument);
}

TEST_CASE("rule configuration normal form") {
  const LocalRule pi = LocalRule::projection(kBinary, pair_memory(kZ));
  const RuleConfiguration degenerate =
      RuleConfiguration::asymptotically_constant(pi, {{kZ.element({0}), pi}});
  CHECK(degenerate.exceptions().empty());

  const RuleConfiguration sparse = RuleConfiguration::sparse_singular(
      pi, 4, xor_rule(kZ), {{kZ.element({4}), xor_rule(kZ)}, {kZ.element({5}), pi}});
  CHECK(sparse.exceptions().empty());  // both extras match what the cells already hold
  CHECK(sparse.rule_at(kZ.element({4})) == xor_rule(kZ));
  CHECK(sparse.rule_at(kZ.element({5})) == pi);

  const GroupUniverse z4(0, {4});
  CHECK_THROWS_AS(RuleConfiguration::sparse_singular(
                      LocalRule::projection(kBinary, pair_memory(z4)), 4,
                      LocalRule(kBinary, pair_memory(z4), {0, 1, 1, 0})),
                  std::invalid_argument);
}

TEST_CASE("lazy block maps stay evaluable") {
  // 2^25 entries exceed the materialization budget, so this map stays lazy.
  std::vector<Element> cells;
  for (std::int64_t i = 0; i < 25; ++i) cells.push_back(kZ.element({i}));
  const FiniteSubset domain = FiniteSubset::of(cells);
  const BlockMap big(kZ, 2, domain, domain,
                     [](const std::vector<int>& in) { return in; });
  CHECK_FALSE(big.materialized());
  std::vector<int> input(25, 1);
  CHECK(big.apply_letters(input) == input);
}
