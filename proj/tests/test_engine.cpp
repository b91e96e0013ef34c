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

LocalRule pi_rule(const GroupUniverse& u) {
  return LocalRule::projection(kBinary, pair_memory(u));
}

Nuca involution(const GroupUniverse& u) {
  return Nuca(RuleConfiguration::asymptotically_constant(
      pi_rule(u), {{u.identity(), xor_rule(u)}}));
}

Configuration total_config(const GroupUniverse& u, std::uint64_t code) {
  return Configuration(u, 0, Pattern::from_code(u, u.enumerate_all(), 2, code));
}

RuleConfiguration random_config(std::mt19937_64& rng, const GroupUniverse& u,
                                const FiniteSubset& zone) {
  std::uniform_int_distribution<int> bit(0, 1);
  const Memory m = pair_memory(u);
  auto rand_rule = [&] {
    std::vector<int> table(4);
    for (auto& v : table) v = bit(rng);
    return LocalRule(kBinary, m, table);
  };
  const LocalRule background = rand_rule();
  if (bit(rng) == 0) return RuleConfiguration::constant(background);
  std::uniform_int_distribution<std::size_t> pick(0, zone.size() - 1);
  return RuleConfiguration::asymptotically_constant(
      background, {{zone.elements()[pick(rng)], rand_rule()}});
}

}  // namespace

TEST_CASE("window evaluation") {
  const Nuca identity(RuleConfiguration::constant(pi_rule(kZ)));
  const FiniteSubset window = kZ.ball(1);
  const FiniteSubset support = kZ.product(window, pair_memory(kZ).as_set());
  for (std::uint64_t code = 0; code < 16; ++code) {
    const Pattern x = Pattern::from_code(kZ, support, 2, code);
    CHECK(evaluate_window(identity, x, window) == x.restricted(window));
  }

  // Hand application: xor of (x0,x1,x2) = (1,1,0) on {0,1} gives (0,1).
  const Nuca xors(RuleConfiguration::constant(xor_rule(kZ)));
  const Pattern x = Pattern::of(kZ, {{kZ.element({0}), 1}, {kZ.element({1}), 1},
                                     {kZ.element({2}), 0}});
  const FiniteSubset pair = FiniteSubset::of({kZ.element({0}), kZ.element({1})});
  const Pattern out = evaluate_window(xors, x, pair);
  CHECK(out.at(kZ.element({0})) == 0);
  CHECK(out.at(kZ.element({1})) == 1);

  CHECK_THROWS_WITH_AS(evaluate_window(xors, x, kZ.ball(1)),
                       doctest::Contains("(-1)"), std::invalid_argument);
}

TEST_CASE("window evaluation is local") {
  const GroupUniverse z2(2, {});
  const Alphabet binary(2);
  const Memory m(z2, {z2.element({0, 0}), z2.element({1, 0}), z2.element({0, 1})});
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> bit(0, 1);
  const FiniteSubset window = z2.ball(1);
  const FiniteSubset needed = z2.product(window, m.as_set());
  const FiniteSubset extra = set_difference(z2.ball(2), needed);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> table(8);
    for (auto& v : table) v = bit(rng);
    const Nuca n(RuleConfiguration::constant(LocalRule(binary, m, table)));
    std::vector<std::pair<Element, int>> agree;
    for (const Element& e : needed) agree.emplace_back(e, bit(rng));
    std::vector<std::pair<Element, int>> a = agree, b = agree;
    for (const Element& e : extra) {
      a.emplace_back(e, bit(rng));
      b.emplace_back(e, bit(rng));
    }
    CHECK(evaluate_window(n, Pattern::of(z2, a), window) ==
          evaluate_window(n, Pattern::of(z2, b), window));
  }
}

TEST_CASE("total evaluation") {
  const Nuca identity(RuleConfiguration::constant(pi_rule(kZ)));
  const Configuration x(kZ, 0, Pattern::of(kZ, {{kZ.element({5}), 1}}));
  CHECK(evaluate(identity, x) == x);

  // Perturbed identity: xor at the origin, input 1 at cell 1 only.
  const Nuca perturbed = involution(kZ);
  const Configuration y(kZ, 0, Pattern::of(kZ, {{kZ.element({1}), 1}}));
  const Configuration image = evaluate(perturbed, y);
  CHECK(image.background() == 0);
  CHECK(image.at(kZ.element({0})) == 1);
  CHECK(image.at(kZ.element({1})) == 1);
  CHECK(image.exceptions().support() ==
        FiniteSubset::of({kZ.element({0}), kZ.element({1})}));

  const Nuca sparse(RuleConfiguration::sparse_singular(pi_rule(kZ), 4, xor_rule(kZ)));
  CHECK_THROWS_AS(evaluate(sparse, y), std::invalid_argument);
}

TEST_CASE("evaluation agrees with windows") {
  std::mt19937_64 rng(31);
  const GroupUniverse z6(0, {6});
  const FiniteSubset all = z6.enumerate_all();
  std::uniform_int_distribution<std::uint64_t> code(0, 63);
  for (int trial = 0; trial < 50; ++trial) {
    const Nuca n(random_config(rng, z6, all));
    const Configuration x = total_config(z6, code(rng));
    CHECK(evaluate(n, x).restrict_to(all) == evaluate_window(n, x.restrict_to(all), all));
  }
}

TEST_CASE("shift transport") {
  std::mt19937_64 rng(37);
  const GroupUniverse z6(0, {6});
  const FiniteSubset all = z6.enumerate_all();
  std::uniform_int_distribution<std::uint64_t> code(0, 63);
  std::uniform_int_distribution<std::int64_t> cell(0, 5);
  for (int trial = 0; trial < 50; ++trial) {
    const Nuca n(random_config(rng, z6, all));
    const Configuration x = total_config(z6, code(rng));
    const Element g = z6.element({cell(rng)});
    CHECK(evaluate(n, x).shifted(g) == evaluate(n.shifted(g), x.shifted(g)));
  }
}

TEST_CASE("composition") {
  SUBCASE("projection composed with itself is a projection") {
    const Nuca id(RuleConfiguration::constant(pi_rule(kZ)));
    const Nuca twice = compose(id, id);
    const LocalRule expected =
        LocalRule::projection(kBinary, twice.memory());
    CHECK(twice.config().kind() == RuleConfiguration::Kind::constant);
    CHECK(twice.config().background() == expected);
  }

  SUBCASE("shift composed with shift is the double shift") {
    const GroupUniverse z5(0, {5});
    const Nuca shift(RuleConfiguration::constant(
        LocalRule(kBinary, pair_memory(z5), {0, 1, 0, 1})));
    const Nuca twice = compose(shift, shift);
    const FiniteSubset all = z5.enumerate_all();
    for (std::uint64_t code = 0; code < 32; ++code) {
      const Configuration x = total_config(z5, code);
      const Configuration y = evaluate(twice, x);
      for (const Element& g : all) CHECK(y.at(g) == x.at(z5.mul(g, z5.element({2}))));
    }
  }

  SUBCASE("associativity on all states") {
    std::mt19937_64 rng(41);
    const GroupUniverse z4(0, {4});
    const FiniteSubset all = z4.enumerate_all();
    for (int trial = 0; trial < 10; ++trial) {
      const Nuca a(random_config(rng, z4, all));
      const Nuca b(random_config(rng, z4, all));
      const Nuca c(random_config(rng, z4, all));
      const Nuca left = compose(compose(a, b), c);
      const Nuca right = compose(a, compose(b, c));
      for (std::uint64_t code = 0; code < 16; ++code)
        CHECK(evaluate(left, total_config(z4, code)) ==
              evaluate(right, total_config(z4, code)));
    }
  }

  SUBCASE("composition class bookkeeping") {
    const Nuca constant(RuleConfiguration::constant(xor_rule(kZ)));
    const Nuca perturbed = involution(kZ);
    CHECK(compose(constant, constant).config().kind() == RuleConfiguration::Kind::constant);
    const Nuca mixed = compose(perturbed, constant);
    CHECK(mixed.config().kind() == RuleConfiguration::Kind::asymptotically_constant);
    const FiniteSubset bound = kZ.product(
        FiniteSubset::of({kZ.identity()}), kZ.inverse(perturbed.memory().as_set()));
    CHECK(compose(constant, perturbed).config().exception_support().subset_of(bound));
  }
}

TEST_CASE("identity check") {
  const Nuca id(RuleConfiguration::constant(pi_rule(kZ)));
  CHECK(identity_check(id, id).holds);

  // Projection after xor is refuted with the first lexicographic witness.
  const Nuca xors(RuleConfiguration::constant(xor_rule(kZ)));
  const IdentityCheckResult bad = identity_check(id, xors);
  REQUIRE_FALSE(bad.holds);
  REQUIRE(bad.witness.has_value());
  const Pattern& witness = *bad.witness;
  CHECK(witness.at(kZ.element({0})) == 0);
  CHECK(witness.at(kZ.element({1})) == 1);

  // The involution is its own left inverse.
  CHECK(identity_check(involution(kZ), involution(kZ)).holds);
}

TEST_CASE("asynchronous runs") {
  const GroupUniverse z6(0, {6});
  const Configuration x0(z6, 0, Pattern::of(z6, {{z6.element({1}), 1}}));
  const LocalRule rule = xor_rule(z6);

  CHECK(async_run(rule, {}, x0) == x0);

  const FiniteSubset all = z6.enumerate_all();
  const Nuca synchronous(RuleConfiguration::constant(rule));
  CHECK(async_run(rule, {all}, x0) == evaluate(synchronous, x0));

  // Disjoint singleton updates commute.
  const FiniteSubset u0 = FiniteSubset::of({z6.element({0})});
  const FiniteSubset u1 = FiniteSubset::of({z6.element({3})});
  CHECK(async_run(rule, {u0, u1}, x0) == async_run(rule, {u1, u0}, x0));

  CHECK_THROWS_AS(async_run(rule, {u0}, x0, 2), std::invalid_argument);
  CHECK(async_run(rule, {u0, u1}, x0, 0) == x0);
}
