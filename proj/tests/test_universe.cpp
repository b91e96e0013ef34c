#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "nuca/universe.hpp"

using namespace nuca;

namespace {

// Independent ball oracle: breadth-first closure under single generator
// steps, tracked in a plain std::set of coordinate vectors.
std::set<std::vector<std::int64_t>> oracle_ball(const GroupUniverse& u, int k) {
  std::set<std::vector<std::int64_t>> frontier{u.identity().coords};
  std::vector<Element> gens = u.generating_set().elements();
  for (int step = 0; step < k; ++step) {
    std::set<std::vector<std::int64_t>> next;
    for (const auto& coords : frontier)
      for (const Element& g : gens) next.insert(u.mul(Element{coords}, g).coords);
    frontier = std::move(next);
  }
  return frontier;
}

std::set<std::vector<std::int64_t>> as_set(const FiniteSubset& s) {
  std::set<std::vector<std::int64_t>> out;
  for (const Element& e : s) out.insert(e.coords);
  return out;
}

}  // namespace

TEST_CASE("element multiplication") {
  const GroupUniverse z3(0, {3});
  CHECK(z3.mul(z3.element({2}), z3.element({2})) == z3.element({1}));

  const GroupUniverse z2(2, {});
  CHECK(z2.mul(z2.element({1, 0}), z2.element({0, -2})) == z2.element({1, -2}));

  std::mt19937_64 rng(7);
  const GroupUniverse mixed(1, {4, 3});
  std::uniform_int_distribution<std::int64_t> coord(-20, 20);
  for (int i = 0; i < 100; ++i) {
    const Element a = mixed.element({coord(rng), coord(rng), coord(rng)});
    CHECK(mixed.mul(a, mixed.identity()) == a);
    CHECK(mixed.mul(mixed.identity(), a) == a);
    CHECK(mixed.mul(a, mixed.inv(a)) == mixed.identity());
  }

  const GroupUniverse z(1, {});
  CHECK_THROWS_AS(z.mul(z.element({1}), z3.element({1})), std::invalid_argument);
  CHECK_THROWS_AS(z3.mul(Element{{5}}, z3.element({1})), std::invalid_argument);
}

TEST_CASE("element inversion") {
  const GroupUniverse z(1, {});
  CHECK(z.inv(z.element({3})) == z.element({-3}));
  const GroupUniverse z5(0, {5});
  CHECK(z5.inv(z5.element({2})) == z5.element({3}));
  CHECK(z.inv(z.identity()) == z.identity());
}

TEST_CASE("balls") {
  const GroupUniverse z(1, {});
  const FiniteSubset b2 = z.ball(2);
  CHECK(b2.size() == 5);
  for (std::int64_t v : {-2, -1, 0, 1, 2}) CHECK(b2.contains(z.element({v})));

  const GroupUniverse z2(2, {});
  const FiniteSubset b1 = z2.ball(1);
  CHECK(b1.size() == 5);
  CHECK(b1.contains(z2.element({0, 0})));
  CHECK(b1.contains(z2.element({-1, 0})));
  CHECK(b1.contains(z2.element({0, 1})));

  const GroupUniverse z3(0, {3});
  CHECK(as_set(z3.ball(2)) == oracle_ball(z3, 2));
  CHECK(z3.ball(2).size() == 3);

  for (int k = 0; k <= 3; ++k) {
    CHECK(as_set(z.ball(k)) == oracle_ball(z, k));
    CHECK(as_set(z2.ball(k)) == oracle_ball(z2, k));
  }
}

TEST_CASE("product and inverse sets") {
  const GroupUniverse z(1, {});
  const FiniteSubset zero_one = FiniteSubset::of({z.element({0}), z.element({1})});
  CHECK(z.product(zero_one, zero_one) ==
        FiniteSubset::of({z.element({0}), z.element({1}), z.element({2})}));
  CHECK(z.inverse(zero_one) == FiniteSubset::of({z.element({0}), z.element({-1})}));
  CHECK(z.inverse(z.inverse(zero_one)) == zero_one);

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> coord(-5, 5);
  const FiniteSubset identity_only = FiniteSubset::of({z.identity()});
  for (int i = 0; i < 20; ++i) {
    std::vector<Element> cells;
    for (int j = 0; j < 4; ++j) cells.push_back(z.element({coord(rng)}));
    const FiniteSubset e = FiniteSubset::of(cells);
    CHECK(z.product(identity_only, e) == e);
    CHECK(z.product(e, identity_only) == e);
  }
}

TEST_CASE("set algebra on subsets of the radius-2 ball") {
  for (const GroupUniverse& u : {GroupUniverse(1, {}), GroupUniverse(0, {4})}) {
    const std::vector<Element> pool = u.ball(2).elements();
    std::vector<FiniteSubset> subsets;
    for (std::uint64_t mask = 0; mask < (1u << pool.size()); ++mask) {
      std::vector<Element> cells;
      for (std::size_t i = 0; i < pool.size(); ++i)
        if (mask & (1u << i)) cells.push_back(pool[i]);
      subsets.push_back(FiniteSubset::of(cells));
    }
    for (const FiniteSubset& a : subsets)
      for (const FiniteSubset& b : subsets) {
        CHECK(u.product(a, b) == u.product(b, a));
        CHECK(u.product(a, b).size() <= a.size() * b.size());
      }
    // Associativity on a deterministic sample of triples.
    for (std::size_t i = 0; i < subsets.size(); i += 3)
      for (std::size_t j = 1; j < subsets.size(); j += 5)
        for (std::size_t k = 2; k < subsets.size(); k += 7)
          CHECK(u.product(u.product(subsets[i], subsets[j]), subsets[k]) ==
                u.product(subsets[i], u.product(subsets[j], subsets[k])));
  }
}

TEST_CASE("ball composition law") {
  for (const GroupUniverse& u :
       {GroupUniverse(1, {}), GroupUniverse(2, {}), GroupUniverse(0, {4}), GroupUniverse(1, {3})}) {
    for (int k = 0; k <= 3; ++k) {
      CHECK(u.inverse(u.ball(k)) == u.ball(k));
      CHECK(u.ball(k).contains(u.identity()));
      for (int j = 0; j + k <= 4; ++j) CHECK(u.product(u.ball(k), u.ball(j)) == u.ball(k + j));
    }
  }
}

TEST_CASE("enumerating finite universes") {
  const GroupUniverse z2z2(0, {2, 2});
  CHECK(z2z2.enumerate_all().size() == 4);
  const GroupUniverse z6(0, {6});
  CHECK(z6.enumerate_all().size() == 6);
  const GroupUniverse z(1, {});
  CHECK_THROWS_AS(z.enumerate_all(), std::invalid_argument);
}

TEST_CASE("word norms") {
  const GroupUniverse mixed(1, {4});
  CHECK(mixed.word_norm(mixed.element({0, 0})) == 0);
  CHECK(mixed.word_norm(mixed.element({-3, 0})) == 3);
  CHECK(mixed.word_norm(mixed.element({0, 3})) == 1);  // 3 = -1 mod 4
  CHECK(mixed.radius(mixed.ball(3)) == 3);
}

TEST_CASE("universe literals") {
  CHECK(parse_universe("Z") == GroupUniverse(1, {}));
  CHECK(parse_universe("Z^2") == GroupUniverse(2, {}));
  CHECK(parse_universe("Z/3") == GroupUniverse(0, {3}));
  CHECK(parse_universe("Z * Z/4") == GroupUniverse(1, {4}));
  CHECK(parse_universe("Z^2 * Z/3 * Z/5") == GroupUniverse(2, {3, 5}));
  CHECK_THROWS_AS(parse_universe("Z^"), ParseError);
  CHECK_THROWS_AS(parse_universe("Z/1"), ParseError);
  CHECK_THROWS_AS(parse_universe("Q"), ParseError);
  CHECK_THROWS_AS(parse_universe(""), ParseError);

  for (const char* literal : {"Z", "Z^2", "Z/3", "Z * Z/4", "Z^0"}) {
    const GroupUniverse u = parse_universe(literal);
    CHECK(parse_universe(u.to_string()) == u);
  }
}

TEST_CASE("element literals") {
  const GroupUniverse z2(2, {});
  CHECK(parse_element(z2, "(1,-2)") == z2.element({1, -2}));
  CHECK(to_string(z2.element({1, -2})) == "(1,-2)");
  CHECK_THROWS_AS(parse_element(z2, "(1)"), ParseError);
  CHECK_THROWS_AS(parse_element(z2, "1,2"), ParseError);
}
