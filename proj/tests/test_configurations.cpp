#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "nuca/configurations.hpp"

using namespace nuca;

TEST_CASE("shift moves exceptions") {
  const GroupUniverse z(1, {});
  const Configuration x(z, 0, Pattern::of(z, {{z.element({0}), 1}}));
  const Configuration moved = x.shifted(z.element({3}));
  CHECK(moved.exceptions().support() == FiniteSubset::of({z.element({3})}));
  CHECK(moved.at(z.element({3})) == 1);
  CHECK(moved.at(z.element({0})) == 0);
  CHECK(x.shifted(z.identity()) == x);
}

TEST_CASE("shift is a group action") {
  const GroupUniverse z6(0, {6});
  const FiniteSubset all = z6.enumerate_all();
  // Exhaustive: all 64 binary configurations, all 36 shift pairs.
  for (std::uint64_t code = 0; code < 64; ++code) {
    const Configuration x(z6, 0, Pattern::from_code(z6, all, 2, code));
    CHECK(x.shifted(z6.identity()) == x);
    for (const Element& g : all)
      for (const Element& h : all)
        CHECK(x.shifted(h).shifted(g) == x.shifted(z6.mul(g, h)));
  }
  // Pointwise definition: (gx)(h) = x(g^-1 h).
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> pick(0, 63);
  std::uniform_int_distribution<std::int64_t> cell(0, 5);
  for (int i = 0; i < 100; ++i) {
    const Configuration x(z6, 0, Pattern::from_code(z6, all, 2, pick(rng)));
    const Element g = z6.element({cell(rng)});
    const Element h = z6.element({cell(rng)});
    CHECK(x.shifted(g).at(h) == x.at(z6.mul(z6.inv(g), h)));
  }
}

TEST_CASE("restriction") {
  const GroupUniverse z(1, {});
  const Configuration x(z, 0, Pattern::of(z, {{z.element({2}), 1}}));
  const FiniteSubset window =
      FiniteSubset::of({z.element({0}), z.element({1}), z.element({2})});
  const Pattern p = x.restrict_to(window);
  CHECK(p.support() == window);
  CHECK(p.at(z.element({0})) == 0);
  CHECK(p.at(z.element({1})) == 0);
  CHECK(p.at(z.element({2})) == 1);

  CHECK(x.restrict_to({}) == Pattern::empty(z));

  // restrict(shift(g,x), gE) = shift(g, restrict(x,E)) pointwise.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> coord(-6, 6);
  for (int i = 0; i < 50; ++i) {
    std::vector<std::pair<Element, int>> cells;
    for (int j = 0; j < 3; ++j) cells.emplace_back(z.element({coord(rng)}), 1);
    FiniteSubset support;
    {
      std::vector<Element> just;
      for (auto& [e, v] : cells) just.push_back(e);
      support = FiniteSubset::of(just);
    }
    const Configuration y(z, 0, Pattern::constant(z, support, 1));
    const Element g = z.element({coord(rng)});
    std::vector<Element> window_cells;
    for (int j = 0; j < 4; ++j) window_cells.push_back(z.element({coord(rng)}));
    const FiniteSubset window = FiniteSubset::of(window_cells);
    const FiniteSubset shifted_window = z.product(FiniteSubset::of({g}), window);
    CHECK(y.shifted(g).restrict_to(shifted_window) == y.restrict_to(window).shifted(g));
  }
}

TEST_CASE("restriction agreement on unions") {
  const GroupUniverse z(1, {});
  const Configuration x(z, 1, Pattern::of(z, {{z.element({0}), 0}, {z.element({3}), 0}}));
  const FiniteSubset e = FiniteSubset::of({z.element({0}), z.element({1})});
  const FiniteSubset f = FiniteSubset::of({z.element({3})});
  const Pattern on_union = x.restrict_to(set_union(e, f));
  for (const Element& cell : e) CHECK(on_union.at(cell) == x.restrict_to(e).at(cell));
}

TEST_CASE("asymptotic difference") {
  const GroupUniverse z(1, {});
  const Configuration x(z, 0, Pattern::of(z, {{z.element({1}), 1}}));
  CHECK(asymptotic_diff(x, x).asymptotic);
  CHECK(asymptotic_diff(x, x).diff.empty());

  const Configuration zeros = Configuration::uniform(z, 0);
  const Configuration ones = Configuration::uniform(z, 1);
  CHECK_FALSE(asymptotic_diff(zeros, ones).asymptotic);

  const GroupUniverse z4(0, {4});
  const AsymptoticDiff d =
      asymptotic_diff(Configuration::uniform(z4, 0), Configuration::uniform(z4, 1));
  CHECK(d.asymptotic);
  CHECK(d.diff == z4.enumerate_all());

  const Configuration y(z, 0, Pattern::of(z, {{z.element({1}), 1}, {z.element({5}), 1}}));
  CHECK(asymptotic_diff(x, y).diff == FiniteSubset::of({z.element({5})}));
}

TEST_CASE("normal form strips background exceptions") {
  const GroupUniverse z(1, {});
  const Configuration x(z, 0,
                        Pattern::of(z, {{z.element({0}), 0}, {z.element({1}), 1}}));
  CHECK(x.exceptions().support() == FiniteSubset::of({z.element({1})}));
  const Configuration same(z, 0, Pattern::of(z, {{z.element({1}), 1}}));
  CHECK(x == same);

  // Round trip through (background, exception list).
  const Configuration rebuilt(z, x.background(), x.exceptions());
  CHECK(rebuilt == x);
}

TEST_CASE("pattern codes") {
  const GroupUniverse z(1, {});
  const FiniteSubset support =
      FiniteSubset::of({z.element({0}), z.element({1}), z.element({2})});
  for (std::uint64_t code = 0; code < 27; ++code)
    CHECK(Pattern::from_code(z, support, 3, code).code(3) == code);
  // First support cell is the most significant digit.
  const Pattern p = Pattern::from_code(z, support, 2, 0b100);
  CHECK(p.at(z.element({0})) == 1);
  CHECK(p.at(z.element({2})) == 0);
}

TEST_CASE("overwritten patches cells") {
  const GroupUniverse z(1, {});
  const Configuration x(z, 0, Pattern::of(z, {{z.element({1}), 1}}));
  const Configuration y = x.overwritten(
      Pattern::of(z, {{z.element({1}), 0}, {z.element({2}), 1}}));
  CHECK(y.at(z.element({1})) == 0);
  CHECK(y.at(z.element({2})) == 1);
  CHECK(y.exceptions().support() == FiniteSubset::of({z.element({2})}));
}
