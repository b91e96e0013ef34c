#include "nuca/suites.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "nuca/decide.hpp"
#include "nuca/spec_format.hpp"

namespace nuca {

namespace {

using Clock = std::chrono::steady_clock;

struct ItemTimer {
  SuiteReport& report;
  Clock::time_point start = Clock::now();
  ~ItemTimer() {
    report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  }
};

void add_item(SuiteReport& report, const std::string& name, bool pass,
              const std::string& detail) {
  report.items.push_back({name, pass, detail});
}

LocalRule random_rule(std::mt19937_64& rng, const Alphabet& alphabet, const Memory& memory) {
  const std::uint64_t size = checked_pow(static_cast<std::uint64_t>(alphabet.size()),
                                         memory.size(), BlockMap::kMaterializeBudget);
  std::uniform_int_distribution<int> letter(0, alphabet.size() - 1);
  std::vector<int> table(size);
  for (auto& v : table) v = letter(rng);
  return LocalRule(alphabet, memory, std::move(table));
}

Memory random_memory(std::mt19937_64& rng, const GroupUniverse& u, int max_extra_cells) {
  const std::vector<Element> pool = set_difference(u.ball(1), FiniteSubset::of({u.identity()}))
                                        .elements();
  std::vector<Element> cells{u.identity()};
  if (!pool.empty()) {
    std::uniform_int_distribution<int> count(0, max_extra_cells);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    const int extra = count(rng);
    for (int i = 0; i < extra; ++i) {
      const Element& e = pool[pick(rng)];
      if (std::find(cells.begin(), cells.end(), e) == cells.end()) cells.push_back(e);
    }
  }
  return Memory(u, std::move(cells));
}

RuleConfiguration random_config(std::mt19937_64& rng, const GroupUniverse& u,
                                const Alphabet& alphabet, int max_extra_cells,
                                int max_exceptions, const FiniteSubset& exception_zone) {
  const Memory memory = random_memory(rng, u, max_extra_cells);
  const LocalRule background = random_rule(rng, alphabet, memory);
  std::uniform_int_distribution<int> count(0, max_exceptions);
  const int exceptions = count(rng);
  if (exceptions == 0) return RuleConfiguration::constant(background);
  std::vector<std::pair<Element, LocalRule>> entries;
  const auto& zone = exception_zone.elements();
  std::uniform_int_distribution<std::size_t> pick(0, zone.size() - 1);
  for (int i = 0; i < exceptions; ++i) {
    const Element& cell = zone[pick(rng)];
    bool seen = false;
    for (const auto& [c, r] : entries) seen = seen || c == cell;
    if (!seen) entries.emplace_back(cell, random_rule(rng, alphabet, memory));
  }
  if (entries.empty()) return RuleConfiguration::constant(background);
  return RuleConfiguration::asymptotically_constant(background, std::move(entries));
}

Configuration total_config(const GroupUniverse& u, const FiniteSubset& cells, int q,
                           std::uint64_t code) {
  return Configuration(u, 0, Pattern::from_code(u, cells, q, code));
}

/// Rule on ball(1) over Z reading one coordinate.
LocalRule select_cell_rule(const GroupUniverse& u, const Alphabet& alphabet,
                           std::int64_t coordinate) {
  const Memory small(u, {u.element({coordinate})});
  std::vector<int> table(static_cast<std::size_t>(alphabet.size()));
  for (int i = 0; i < alphabet.size(); ++i) table[static_cast<std::size_t>(i)] = i;
  return LocalRule(alphabet, small, std::move(table)).enlarged(Memory::from_set(u, u.ball(1)));
}

// ---------------------------------------------------------------------------
// Criterion 1: evaluate, windowed evaluation, and the induced block map agree.

SuiteReport criterion_engine_coherence(std::uint64_t seed, std::uint64_t budget) {
  SuiteReport report{"criterion-1 engine-coherence", {}, 0.0};
  ItemTimer timer{report};
  std::mt19937_64 rng(seed ^ 0x101);
  const Alphabet alphabet(2);

  {
    const GroupUniverse u(0, {4});
    const FiniteSubset all = u.enumerate_all();
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 30 && ok; ++trial) {
      const RuleConfiguration config =
          random_config(rng, u, alphabet, 1, 2, u.enumerate_all());
      const Nuca n(config);
      for (std::uint64_t mask = 0; mask < 16 && ok; ++mask) {
        std::vector<Element> window_cells;
        for (std::size_t i = 0; i < 4; ++i)
          if (mask & (1u << i)) window_cells.push_back(all.elements()[i]);
        const FiniteSubset window = FiniteSubset::of(window_cells);
        for (std::uint64_t code = 0; code < 16 && ok; ++code) {
          const Configuration x = total_config(u, all, 2, code);
          const Pattern full = x.restrict_to(all);
          const Pattern via_total = evaluate(n, x).restrict_to(window);
          const Pattern via_window = evaluate_window(n, full, window);
          ok = via_total == via_window;
          if (ok && !window.empty()) {
            const FiniteSubset domain = u.product(window, n.memory().as_set());
            const Pattern via_block =
                induced_local_map(n.config(), window).apply(full.restricted(domain));
            ok = via_window == via_block;
          }
          if (!ok) detail = "mismatch at trial " + std::to_string(trial);
        }
      }
    }
    add_item(report, "z4-exhaustive", ok,
             ok ? "30 configurations x 16 windows x 16 states" : detail);
  }

  {
    const GroupUniverse u(2, {});
    bool ok = true;
    std::string detail;
    const std::vector<Element> zone = u.ball(2).elements();
    std::uniform_int_distribution<std::size_t> pick(0, zone.size() - 1);
    std::uniform_int_distribution<int> letter(0, 1);
    for (int trial = 0; trial < 200 && ok; ++trial) {
      const Nuca n(random_config(rng, u, alphabet, 2, 2, u.ball(1)));
      std::vector<Element> wcells{zone[pick(rng)]};
      for (int i = 0; i < 3; ++i) wcells.push_back(zone[pick(rng)]);
      const FiniteSubset window = FiniteSubset::of(wcells);
      std::vector<std::pair<Element, int>> xcells;
      for (int i = 0; i < 3; ++i) xcells.emplace_back(zone[pick(rng)], letter(rng));
      FiniteSubset dedup;
      {
        std::vector<Element> just;
        for (auto& [e, v] : xcells) just.push_back(e);
        dedup = FiniteSubset::of(just);
      }
      Configuration x(u, letter(rng), Pattern::constant(u, dedup, 1));
      const FiniteSubset domain = u.product(window, n.memory().as_set());
      const Pattern xw = x.restrict_to(domain);
      const Pattern via_total = evaluate(n, x).restrict_to(window);
      const Pattern via_window = evaluate_window(n, xw, window);
      const Pattern via_block = induced_local_map(n.config(), window).apply(xw);
      ok = via_total == via_window && via_window == via_block;
      if (!ok) detail = "mismatch at trial " + std::to_string(trial);
    }
    add_item(report, "z2-randomized", ok, ok ? "200 instances" : detail);
  }
  (void)budget;
  return report;
}

// ---------------------------------------------------------------------------
// Criterion 2: composition evaluates as the function composition.

SuiteReport criterion_composition(std::uint64_t seed, std::uint64_t budget) {
  SuiteReport report{"criterion-2 composition-soundness", {}, 0.0};
  ItemTimer timer{report};
  std::mt19937_64 rng(seed ^ 0x202);
  const GroupUniverse u(0, {6});
  const Alphabet alphabet(2);
  const FiniteSubset all = u.enumerate_all();
  bool ok = true;
  std::string detail;
  for (int trial = 0; trial < 30 && ok; ++trial) {
    const Nuca outer(random_config(rng, u, alphabet, 1, 2, all));
    const Nuca inner(random_config(rng, u, alphabet, 1, 2, all));
    const Nuca composed = compose(outer, inner);
    for (std::uint64_t code = 0; code < 64 && ok; ++code) {
      const Configuration x = total_config(u, all, 2, code);
      ok = evaluate(composed, x) == evaluate(outer, evaluate(inner, x));
      if (!ok) detail = "mismatch at trial " + std::to_string(trial);
    }
  }
  add_item(report, "z6-exhaustive", ok, ok ? "30 random pairs x 64 states" : detail);
  (void)budget;
  return report;
}

// ---------------------------------------------------------------------------
// Criterion 3: the per-cell identity check agrees with brute force.

SuiteReport criterion_identity_equivalence(std::uint64_t seed, std::uint64_t budget) {
  SuiteReport report{"criterion-3 identity-check-equivalence", {}, 0.0};
  ItemTimer timer{report};
  std::mt19937_64 rng(seed ^ 0x303);
  const Alphabet alphabet(2);
  std::vector<GroupUniverse> universes{
      GroupUniverse(0, {2}),    GroupUniverse(0, {3}),    GroupUniverse(0, {4}),
      GroupUniverse(0, {5}),    GroupUniverse(0, {6}),    GroupUniverse(0, {7}),
      GroupUniverse(0, {8}),    GroupUniverse(0, {2, 2}), GroupUniverse(0, {2, 4}),
      GroupUniverse(0, {2, 2, 2})};

  auto brute_identity = [&](const Nuca& left, const Nuca& right) {
    const GroupUniverse& u = left.universe();
    const FiniteSubset all = u.enumerate_all();
    const std::uint64_t total = checked_pow(2, all.size(), budget);
    for (std::uint64_t code = 0; code < total; ++code) {
      const Configuration x = total_config(u, all, 2, code);
      if (!(evaluate(left, evaluate(right, x)) == x)) return false;
    }
    return true;
  };

  std::vector<std::pair<Nuca, Nuca>> pairs;
  std::uniform_int_distribution<std::size_t> pick(0, universes.size() - 1);
  for (int i = 0; i < 50; ++i) {
    const GroupUniverse& u = universes[pick(rng)];
    pairs.emplace_back(Nuca(random_config(rng, u, alphabet, 1, 1, u.ball(1))),
                       Nuca(random_config(rng, u, alphabet, 1, 1, u.ball(1))));
  }
  {
    const GroupUniverse u(0, {5});
    const Memory m(u, {u.identity()});
    const Nuca id(RuleConfiguration::constant(LocalRule::projection(alphabet, m)));
    pairs.emplace_back(id, id);
  }
  {
    const GroupUniverse u(0, {6});
    const Nuca shift(RuleConfiguration::constant(
        LocalRule(alphabet, Memory(u, {u.element({0}), u.element({1})}), {0, 1, 0, 1})));
    const Nuca unshift(RuleConfiguration::constant(
        LocalRule(alphabet, Memory(u, {u.element({-1}), u.element({0})}), {0, 0, 1, 1})));
    pairs.emplace_back(unshift, shift);
    pairs.emplace_back(shift, unshift);
  }
  {
    const GroupUniverse u(0, {8});
    const Memory m(u, {u.element({0}), u.element({1})});
    const LocalRule pi = LocalRule::projection(alphabet, m);
    const LocalRule x_or(alphabet, m, {0, 1, 1, 0});
    const Nuca involution(
        RuleConfiguration::asymptotically_constant(pi, {{u.element({0}), x_or}}));
    pairs.emplace_back(involution, involution);
    const Nuca xor_everywhere(RuleConfiguration::constant(x_or));
    pairs.emplace_back(Nuca(RuleConfiguration::constant(pi)), xor_everywhere);
  }

  bool ok = true;
  std::string detail;
  int refuted = 0;
  for (std::size_t i = 0; i < pairs.size() && ok; ++i) {
    const auto& [left, right] = pairs[i];
    const IdentityCheckResult check = identity_check(left, right);
    ok = check.holds == brute_identity(left, right);
    if (!ok) {
      detail = "disagreement at pair " + std::to_string(i);
      break;
    }
    if (!check.holds) {
      ++refuted;
      // The returned witness must reproduce the violation through the engine.
      const GroupUniverse& u = left.universe();
      const Configuration x(u, 0, check.witness->shifted(*check.cell));
      ok = evaluate(left, evaluate(right, x)).at(*check.cell) != x.at(*check.cell);
      if (!ok) detail = "witness fails to re-verify at pair " + std::to_string(i);
    }
  }
  std::ostringstream os;
  os << pairs.size() << " pairs, " << refuted << " refuted with engine-verified witnesses";
  add_item(report, "lemma-vs-brute-force", ok, ok ? os.str() : detail);
  return report;
}

// ---------------------------------------------------------------------------
// Shared sweep for criteria 4 and 5: single-cell perturbations over Z of the
// projection, shift, and inverse-shift backgrounds by all 16 two-cell rules.

struct PerturbationCase {
  Nuca automaton;
  bool reversible;
  std::string label;
};

std::vector<PerturbationCase> perturbation_catalog(std::uint64_t budget) {
  const GroupUniverse u(1, {});
  const Alphabet alphabet(2);
  const Memory ball1 = Memory::from_set(u, u.ball(1));
  const std::vector<std::pair<std::string, LocalRule>> backgrounds{
      {"projection", LocalRule::projection(alphabet, ball1)},
      {"shift", select_cell_rule(u, alphabet, 1)},
      {"inverse-shift", select_cell_rule(u, alphabet, -1)}};
  const Memory pair_memory(u, {u.element({0}), u.element({1})});

  std::vector<PerturbationCase> cases;
  for (const auto& [bg_name, bg] : backgrounds) {
    for (int t = 0; t < 16; ++t) {
      const LocalRule exception =
          LocalRule(alphabet, pair_memory, {t >> 3 & 1, t >> 2 & 1, t >> 1 & 1, t & 1})
              .enlarged(ball1);
      RuleConfiguration config =
          RuleConfiguration::asymptotically_constant(bg, {{u.identity(), exception}});
      if (config.exceptions().empty()) config = RuleConfiguration::constant(config.background());
      Nuca n(config);
      const ReversibilityResult rev = reversibility_search(n, 3, budget);
      cases.push_back({std::move(n), rev.verdict == Verdict::holds,
                       bg_name + "+rule" + std::to_string(t)});
    }
  }
  return cases;
}

SuiteReport criterion_perturbation_invert(std::uint64_t seed, std::uint64_t budget) {
  SuiteReport report{"criterion-4 perturbation-invertibility", {}, 0.0};
  ItemTimer timer{report};
  (void)seed;
  const GroupUniverse u(1, {});
  const std::vector<PerturbationCase> cases = perturbation_catalog(budget);
  const FiniteSubset window = u.ball(3);
  const std::uint64_t states = checked_pow(2, window.size(), budget);

  int reversible = 0;
  bool ok = true;
  std::string detail;
  for (const PerturbationCase& c : cases) {
    if (!c.reversible) continue;
    ++reversible;
    const InvertResult inv = perturbation_invert(c.automaton, 3, budget);
    if (inv.verdict != Verdict::holds) {
      ok = false;
      detail = "reversible case " + c.label + " failed to invert";
      break;
    }
    for (int background = 0; background < 2 && ok; ++background)
      for (std::uint64_t code = 0; code < states && ok; ++code) {
        const Configuration x(u, background, Pattern::from_code(u, window, 2, code));
        ok = inv.inverse->apply(evaluate(c.automaton, x)) == x &&
             evaluate(c.automaton, inv.inverse->apply(x)) == x;
        if (!ok) detail = "identity round trip failed for " + c.label;
      }
    if (!ok) break;
  }
  if (ok && reversible != 8) {
    ok = false;
    detail = "expected 8 reversible cases, found " + std::to_string(reversible);
  }
  std::ostringstream os;
  os << cases.size() << " cases, " << reversible
     << " reversible, all inverted with two-sided round trips on ball(3)";
  add_item(report, "theorem-a-sweep", ok, ok ? os.str() : detail);
  return report;
}

SuiteReport criterion_window_surjectivity(std::uint64_t seed, std::uint64_t budget) {
  SuiteReport report{"criterion-5 reversible-window-surjectivity", {}, 0.0};
  ItemTimer timer{report};
  (void)seed;
  const GroupUniverse u(1, {});
  const std::vector<PerturbationCase> cases = perturbation_catalog(budget);
  int reversible = 0;
  bool ok = true;
  std::string detail;
  for (const PerturbationCase& c : cases) {
    if (!c.reversible) continue;
    ++reversible;
    for (int k = 0; k <= 4 && ok; ++k) {
      const PropertyReport r = surjectivity_window(c.automaton, u.ball(k), budget);
      ok = r.verdict != Verdict::refuted;
      if (!ok) detail = "window witness for " + c.label + " at radius " + std::to_string(k);
    }
    if (!ok) break;
  }
  std::ostringstream os;
  os << reversible << " reversible cases, no missing window pattern up to ball(4)";
  add_item(report, "theorem-b-sweep", ok, ok ? os.str() : detail);
  return report;
}

// ---------------------------------------------------------------------------
// Criterion 6: localization of the sparse involution family.

Nuca sparse_involution() {
  const GroupUniverse u(1, {});
  const Alphabet alphabet(2);
  const Memory m(u, {u.element({0}), u.element({1})});
  return Nuca(RuleConfiguration::sparse_singular(LocalRule::projection(alphabet, m), 4,
                                                 LocalRule(alphabet, m, {0, 1, 1, 0})));
}

SuiteReport criterion_sparse_localization(std::uint64_t seed, std::uint64_t budget) {
  SuiteReport report{"criterion-6 sparse-localization-contract", {}, 0.0};
  ItemTimer timer{report};
  (void)seed;
  const Nuca s = sparse_involution();
  const GroupUniverse& u = s.universe();
  for (int k = 1; k <= 3; ++k) {
    bool ok = true;
    std::string detail;
    try {
      const LocalizedPair lp = ubs_localize(s, s, u.ball(k), 1 << 20, budget);
      const Nuca se = s.enlarged(lp.p.memory());
      const Nuca te = s.enlarged(lp.q.memory());
      for (const Element& g : u.ball(k)) {
        if (!(lp.p.config().rule_at(g) == se.config().rule_at(g))) ok = false;
        if (!(lp.q.config().rule_at(g) == te.config().rule_at(g))) ok = false;
      }
      if (!identity_check(lp.q, lp.p).holds) ok = false;
      if (!ok) detail = "window agreement or identity failed";
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    add_item(report, "ball-" + std::to_string(k), ok,
             ok ? "window agreement and identity verified" : detail);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Criterion 7: exact finite-universe dual surjunctivity.

SuiteReport criterion_finite_dual_surjunctivity(std::uint64_t seed, std::uint64_t budget,
                                                int samples) {
  SuiteReport report{"criterion-7 finite-dual-surjunctivity", {}, 0.0};
  ItemTimer timer{report};
  std::mt19937_64 rng(seed ^ 0x707);
  const Alphabet alphabet(2);
  const std::vector<GroupUniverse> universes{GroupUniverse(0, {2}), GroupUniverse(0, {3}),
                                             GroupUniverse(0, {4})};
  bool ok = true;
  std::string detail;
  int both = 0;
  for (int i = 0; i < samples && ok; ++i) {
    const GroupUniverse& u = universes[static_cast<std::size_t>(i) % universes.size()];
    const Nuca n(random_config(rng, u, alphabet, 1, 2, u.enumerate_all()));
    const PropertyReport post = post_surjectivity_check(n, 0, 0, budget);
    const PropertyReport pre = pre_injectivity_check(n, 0, budget);
    if (post.verdict == Verdict::holds && pre.verdict == Verdict::holds) {
      ++both;
      if (stable_sweep(n, StableProperty::invertible, budget).verdict != Verdict::holds) {
        ok = false;
        detail = "counterexample at sample " + std::to_string(i);
      }
    }
  }
  std::ostringstream os;
  os << samples << " samples, " << both << " pre-injective and post-surjective, 0 counterexamples";
  add_item(report, "corollary-2.3-sweep", ok, ok ? os.str() : detail);
  return report;
}

// ---------------------------------------------------------------------------
// Criterion 8: linear duality.

LinearRuleConfiguration random_linear_config(std::mt19937_64& rng, const GroupUniverse& u,
                                             int p, int n, int max_exceptions) {
  const LinearAlphabet alphabet(p, n);
  const Memory memory = random_memory(rng, u, 2);
  std::uniform_int_distribution<int> entry(0, p - 1);
  auto rand_rule = [&]() {
    std::vector<FpMatrix> mats;
    for (std::size_t i = 0; i < memory.size(); ++i) {
      FpMatrix m(p, n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m.set(r, c, entry(rng));
      mats.push_back(std::move(m));
    }
    return LinearLocalRule(alphabet, memory, std::move(mats));
  };
  const LinearLocalRule background = rand_rule();
  std::uniform_int_distribution<int> count(0, max_exceptions);
  const int exceptions = count(rng);
  if (exceptions == 0) return LinearRuleConfiguration::constant(background);
  const std::vector<Element> zone = u.ball(1).elements();
  std::uniform_int_distribution<std::size_t> pick(0, zone.size() - 1);
  std::vector<std::pair<Element, LinearLocalRule>> entries;
  for (int i = 0; i < exceptions; ++i) {
    const Element& cell = zone[pick(rng)];
    bool seen = false;
    for (const auto& [c, r] : entries) seen = seen || c == cell;
    if (!seen) entries.emplace_back(cell, rand_rule());
  }
  if (entries.empty()) return LinearRuleConfiguration::constant(background);
  return LinearRuleConfiguration::asymptotically_constant(background, std::move(entries));
}

SuiteReport criterion_linear_duality(std::uint64_t seed, std::uint64_t budget) {
  SuiteReport report{"criterion-8 linear-duality", {}, 0.0};
  ItemTimer timer{report};
  std::mt19937_64 rng(seed ^ 0x808);
  const std::vector<GroupUniverse> finite{GroupUniverse(0, {3}), GroupUniverse(0, {4}),
                                          GroupUniverse(0, {2, 2})};

  {
    bool ok = true;
    std::string detail;
    const std::vector<GroupUniverse> mixed{GroupUniverse(1, {}), GroupUniverse(0, {4}),
                                           GroupUniverse(0, {2, 2})};
    const int ps[2] = {2, 3};
    for (int i = 0; i < 200 && ok; ++i) {
      const GroupUniverse& u = mixed[static_cast<std::size_t>(i) % mixed.size()];
      const int p = ps[i % 2];
      const int n = 1 + (i / 2) % 2;
      const LinearRuleConfiguration s = random_linear_config(rng, u, p, n, 2);
      const DoubleDualResult dd = double_dual_check(s);
      ok = dd.holds;
      if (!ok) detail = "double dual failed at sample " + std::to_string(i);
    }
    add_item(report, "double-dual", ok, ok ? "200 random configurations" : detail);
  }

  {
    bool ok = true;
    std::string detail;
    int checked = 0;
    for (const GroupUniverse& u : finite) {
      const LinearAlphabet alphabet(2, 1);
      const Memory memory = Memory::from_set(u, u.ball(1));
      const std::size_t cells = memory.size();
      const std::uint64_t rules = checked_pow(2, cells, budget);
      auto rule_of = [&](std::uint64_t bits) {
        std::vector<FpMatrix> mats;
        for (std::size_t i = 0; i < cells; ++i) {
          FpMatrix m(2, 1, 1);
          m.set(0, 0, static_cast<int>((bits >> i) & 1));
          mats.push_back(std::move(m));
        }
        return LinearLocalRule(alphabet, memory, std::move(mats));
      };
      auto transpose_agrees = [&](const LinearRuleConfiguration& s) {
        return global_matrix(dual(s), budget) == global_matrix(s, budget).transposed();
      };
      for (std::uint64_t bits = 0; bits < rules && ok; ++bits) {
        ++checked;
        if (!transpose_agrees(LinearRuleConfiguration::constant(rule_of(bits)))) {
          ok = false;
          detail = "constant transpose mismatch over " + u.to_string();
        }
      }
      for (std::uint64_t bg = 0; bg < rules && ok; ++bg)
        for (std::uint64_t ex = 0; ex < rules && ok; ++ex)
          for (const Element& cell : u.enumerate_all()) {
            if (bg == ex) continue;
            ++checked;
            const LinearRuleConfiguration s = LinearRuleConfiguration::asymptotically_constant(
                rule_of(bg), {{cell, rule_of(ex)}});
            if (!transpose_agrees(s)) {
              ok = false;
              detail = "perturbed transpose mismatch over " + u.to_string();
              break;
            }
          }
    }
    add_item(report, "transpose-oracle", ok,
             ok ? std::to_string(checked) + " exhaustive configurations" : detail);
  }

  {
    bool ok = true;
    std::string detail;
    int invertible = 0;
    for (int i = 0; i < 200 && ok; ++i) {
      const GroupUniverse& u = finite[static_cast<std::size_t>(i) % finite.size()];
      const int p = (i % 2 == 0) ? 2 : 3;
      const int n = 1 + (i / 2) % 2;
      const LinearRuleConfiguration s = random_linear_config(rng, u, p, n, 2);
      const bool direct = global_matrix(s, budget).invertible();
      const bool dual_side = global_matrix(dual(s), budget).invertible();
      if (direct != dual_side) {
        ok = false;
        detail = "invertibility disagreement at sample " + std::to_string(i);
        break;
      }
      if (direct) ++invertible;
      if (i % 10 == 0) {
        const PropertyReport oracle = injectivity_oracle(to_nuca(s, budget), budget);
        if ((oracle.verdict == Verdict::holds) != direct) {
          ok = false;
          detail = "matrix route disagrees with the enumeration oracle at sample " +
                   std::to_string(i);
        }
      }
    }
    add_item(report, "invertibility-duality", ok,
             ok ? "200 samples, " + std::to_string(invertible) + " invertible" : detail);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Criterion 9: asynchronous runs reduce to synchronous iterates.

SuiteReport criterion_async_reduction(std::uint64_t seed, std::uint64_t budget) {
  SuiteReport report{"criterion-9 async-reduction", {}, 0.0};
  ItemTimer timer{report};
  std::mt19937_64 rng(seed ^ 0x909);
  const GroupUniverse u(0, {6});
  const Alphabet alphabet(2);
  const FiniteSubset all = u.enumerate_all();
  std::uniform_int_distribution<std::uint64_t> state(0, 63);

  {
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 20 && ok; ++trial) {
      const LocalRule rule = random_rule(rng, alphabet, random_memory(rng, u, 1));
      const Configuration x0 = total_config(u, all, 2, state(rng));
      const std::vector<FiniteSubset> schedule(10, all);
      const Configuration via_async = async_run(rule, schedule, x0);
      Configuration via_sync = x0;
      const Nuca synchronous(RuleConfiguration::constant(rule));
      for (int i = 0; i < 10; ++i) via_sync = evaluate(synchronous, via_sync);
      ok = via_async == via_sync;
      if (!ok) detail = "mismatch at trial " + std::to_string(trial);
    }
    add_item(report, "full-updates-synchronous", ok, ok ? "20 rules x 10 steps" : detail);
  }

  {
    bool ok = true;
    std::string detail;
    const Memory m(u, {u.element({0}), u.element({1})});
    const FiniteSubset u0 = FiniteSubset::of({u.element({0})});
    const FiniteSubset u1 = FiniteSubset::of({u.element({3})});
    for (int trial = 0; trial < 20 && ok; ++trial) {
      const LocalRule rule = random_rule(rng, alphabet, m);
      const Configuration x0 = total_config(u, all, 2, state(rng));
      ok = async_run(rule, {u0, u1}, x0) == async_run(rule, {u1, u0}, x0);
      if (!ok) detail = "order dependence at trial " + std::to_string(trial);
    }
    add_item(report, "disjoint-singletons-commute", ok, ok ? "20 rules" : detail);
  }
  (void)budget;
  return report;
}

}  // namespace

bool SuiteReport::pass() const {
  for (const SuiteItem& item : items)
    if (!item.pass) return false;
  return !items.empty();
}

std::string render(const SuiteReport& report) {
  std::ostringstream os;
  os << "suite=" << report.name << '\n';
  for (const SuiteItem& item : report.items)
    os << (item.pass ? "ok   " : "FAIL ") << item.name << " - " << item.detail << '\n';
  os << "result=" << (report.pass() ? "pass" : "fail") << " seconds=" << report.seconds << '\n';
  return os.str();
}

int acceptance_criteria_count() { return 9; }

std::string acceptance_criterion_name(int number) {
  switch (number) {
    case 1: return "engine-coherence";
    case 2: return "composition-soundness";
    case 3: return "identity-check-equivalence";
    case 4: return "perturbation-invertibility";
    case 5: return "reversible-window-surjectivity";
    case 6: return "sparse-localization-contract";
    case 7: return "finite-dual-surjunctivity";
    case 8: return "linear-duality";
    case 9: return "async-reduction";
  }
  throw std::invalid_argument("unknown acceptance criterion " + std::to_string(number));
}

SuiteReport run_acceptance_criterion(int number, std::uint64_t seed, std::uint64_t budget) {
  switch (number) {
    case 1: return criterion_engine_coherence(seed, budget);
    case 2: return criterion_composition(seed, budget);
    case 3: return criterion_identity_equivalence(seed, budget);
    case 4: return criterion_perturbation_invert(seed, budget);
    case 5: return criterion_window_surjectivity(seed, budget);
    case 6: return criterion_sparse_localization(seed, budget);
    case 7: return criterion_finite_dual_surjunctivity(seed, budget, 500);
    case 8: return criterion_linear_duality(seed, budget);
    case 9: return criterion_async_reduction(seed, budget);
  }
  throw std::invalid_argument("unknown acceptance criterion " + std::to_string(number));
}

namespace {

ExperimentSpec load_fixture(const std::string& dir, const std::string& name) {
  return load_spec_file(std::filesystem::path(dir) / name);
}

std::string read_file(const std::string& dir, const std::string& name) {
  std::ifstream in(std::filesystem::path(dir) / name);
  if (!in) throw std::runtime_error("cannot open fixture " + name + " under " + dir);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void fixture_item(SuiteReport& report, const std::string& name,
                  const std::function<std::string()>& body) {
  try {
    add_item(report, name, true, body());
  } catch (const std::exception& e) {
    add_item(report, name, false, e.what());
  }
}

void merge(SuiteReport& into, const SuiteReport& from) {
  for (const SuiteItem& item : from.items)
    into.items.push_back({from.name + "/" + item.name, item.pass, item.detail});
}

void require(bool condition, const std::string& message) {
  if (!condition) throw std::runtime_error(message);
}

}  // namespace

std::vector<std::string> verify_suite_names() {
  return {"theorem-a", "theorem-b", "theorem-c", "theorem-d",
          "duality",   "lemma-6.1", "corollaries"};
}

std::vector<std::string> suite_fixture_files(const std::string& suite) {
  if (suite == "theorem-a")
    return {"z_perturbed_xor.nuca", "z_shift.nuca", "z6_xor.nuca", "z6_input.pat",
            "z6_schedule.txt"};
  if (suite == "theorem-b") return {"z_sparse4_xor.nuca"};
  if (suite == "theorem-c") return {"z3_xor.nuca", "z6_xor.nuca"};
  if (suite == "theorem-d") return {"z_sparse4_xor.nuca"};
  if (suite == "duality") return {"z_linear_xor.nuca", "z3_linear_shift.nuca"};
  if (suite == "lemma-6.1") return {"z_sparse4_xor.nuca"};
  if (suite == "corollaries") return {"z3_xor.nuca"};
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

SuiteReport run_verify_suite(const std::string& suite, const std::string& fixtures_dir,
                             std::uint64_t seed, std::uint64_t budget) {
  SuiteReport report{"verify " + suite, {}, 0.0};
  ItemTimer timer{report};

  if (suite == "theorem-a") {
    merge(report, criterion_perturbation_invert(seed, budget));
    fixture_item(report, "fixture z_perturbed_xor invert", [&] {
      const Nuca n = nuca_from_spec(load_fixture(fixtures_dir, "z_perturbed_xor.nuca"));
      const InvertResult inv = perturbation_invert(n, 3, budget);
      require(inv.verdict == Verdict::holds, "inversion failed");
      require(inv.inverse->flattened().has_value(), "no flattened inverse");
      const std::string round_trip = serialize_nuca_spec(*inv.inverse->flattened());
      nuca_from_spec(parse_spec_text(round_trip));
      return "inverse found and serialized";
    });
    fixture_item(report, "fixture z_shift reversible", [&] {
      const Nuca n = nuca_from_spec(load_fixture(fixtures_dir, "z_shift.nuca"));
      const ReversibilityResult rev = reversibility_search(n, 2, budget);
      require(rev.verdict == Verdict::holds, "shift not reversible");
      return "left inverse at radius " + std::to_string(rev.radius);
    });
    fixture_item(report, "fixture async demo", [&] {
      const ExperimentSpec spec = load_fixture(fixtures_dir, "z6_xor.nuca");
      const Nuca n = nuca_from_spec(spec);
      const Configuration x0 = configuration_from_state(
          spec.universe, parse_state_text(spec.universe, read_file(fixtures_dir, "z6_input.pat")));
      const std::vector<FiniteSubset> schedule =
          parse_schedule_text(spec.universe, read_file(fixtures_dir, "z6_schedule.txt"));
      Configuration via_sync = x0;
      for (std::size_t i = 0; i < schedule.size(); ++i) via_sync = evaluate(n, via_sync);
      const Configuration via_async =
          async_run(n.config().background(), schedule, x0);
      require(via_async == via_sync, "async run disagrees with synchronous iterate");
      return std::to_string(schedule.size()) + " full-universe steps match";
    });
    return report;
  }
  if (suite == "theorem-b") {
    merge(report, criterion_window_surjectivity(seed, budget));
    fixture_item(report, "fixture z_sparse4_xor windows", [&] {
      const Nuca n = nuca_from_spec(load_fixture(fixtures_dir, "z_sparse4_xor.nuca"));
      for (int k = 0; k <= 3; ++k)
        require(surjectivity_window(n, n.universe().ball(k), budget).verdict != Verdict::refuted,
                "unexpected window witness");
      return "window images full up to ball(3)";
    });
    return report;
  }
  if (suite == "theorem-c") {
    merge(report, criterion_finite_dual_surjunctivity(seed, budget, 500));
    fixture_item(report, "fixture z3_xor exactness", [&] {
      const Nuca n = nuca_from_spec(load_fixture(fixtures_dir, "z3_xor.nuca"));
      const PropertyReport post = post_surjectivity_check(n, 0, 0, budget);
      const PropertyReport oracle = injectivity_oracle(n, budget);
      require(post.verdict == Verdict::refuted, "xor should not be surjective on Z/3");
      require(oracle.verdict == Verdict::refuted, "xor should not be injective on Z/3");
      return "post-surjectivity matches the exact oracle";
    });
    fixture_item(report, "fixture z6_xor exactness", [&] {
      const Nuca n = nuca_from_spec(load_fixture(fixtures_dir, "z6_xor.nuca"));
      require(post_surjectivity_check(n, 0, 0, budget).verdict == Verdict::refuted,
              "xor should not be surjective on Z/6");
      return "refuted as expected";
    });
    return report;
  }
  if (suite == "theorem-d") {
    fixture_item(report, "ball-exhaustion", [&] {
      for (const GroupUniverse& u : {GroupUniverse(1, {}), GroupUniverse(2, {})}) {
        for (int k = 0; k <= 3; ++k) {
          const FiniteSubset b = u.ball(k);
          require(u.inverse(b) == b, "ball not symmetric");
          require(b.contains(u.identity()), "ball misses the identity");
          for (int j = 0; j + k <= 4; ++j)
            require(u.product(b, u.ball(j)) == u.ball(k + j), "ball product mismatch");
        }
      }
      return "products and symmetry over Z and Z^2 up to radius 4";
    });
    fixture_item(report, "finite-block-factorization", [&] {
      const GroupUniverse u(0, {8});
      const Alphabet alphabet(2);
      const Memory m(u, {u.element({0}), u.element({1})});
      const Nuca n(RuleConfiguration::asymptotically_constant(
          LocalRule::projection(alphabet, m),
          {{u.identity(), LocalRule(alphabet, m, {0, 1, 1, 0})}}));
      const FiniteSubset block = u.ball(2);
      const FiniteSubset active = FiniteSubset::of({u.identity()});
      const BlockMap factor = extract_block_map(n, block, active);
      const FiniteSubset all = u.enumerate_all();
      const FiniteSubset outside = set_difference(all, block);
      for (std::uint64_t code = 0; code < 256; ++code) {
        const Configuration x = total_config(u, all, 2, code);
        const Configuration y = evaluate(n, x);
        require(y.restrict_to(block) == factor.apply(x.restrict_to(block)),
                "block factor disagrees");
        require(y.restrict_to(outside) == x.restrict_to(outside),
                "outside cells must be fixed");
      }
      return "256 states factor through the block";
    });
    fixture_item(report, "fixture sparse ubs windows", [&] {
      const Nuca n = nuca_from_spec(load_fixture(fixtures_dir, "z_sparse4_xor.nuca"));
      const GroupUniverse& u = n.universe();
      for (int k = 1; k <= 3; ++k) {
        const FiniteSubset e = u.ball(k);
        const auto f = verify_ubs(n.config(), e, 1 << 20);
        require(f.has_value(), "ubs search exhausted");
        require(e.subset_of(*f), "F must contain E");
        const FiniteSubset zone = set_difference(u.product(*f, e), *f);
        for (const Element& g : zone)
          require(n.config().rule_at(g) == n.config().background(),
                  "restriction not constant at " + to_string(g));
      }
      return "definitional predicate re-checked cell by cell";
    });
    fixture_item(report, "sparse localize-invert pipeline", [&] {
      const Nuca s = nuca_from_spec(load_fixture(fixtures_dir, "z_sparse4_xor.nuca"));
      const GroupUniverse& u = s.universe();
      const LocalizedPair lp = ubs_localize(s, s, u.ball(2), 1 << 20, budget);
      const InvertResult inv = perturbation_invert(lp.p, 3, budget);
      require(inv.verdict == Verdict::holds, "localized automaton failed to invert");
      const FiniteSubset window = u.ball(2);
      for (std::uint64_t code = 0; code < 32; ++code) {
        const Configuration x(u, 0, Pattern::from_code(u, window, 2, code));
        require(inv.inverse->apply(evaluate(lp.p, x)) == x, "round trip failed");
      }
      return "localized involution inverted and round-tripped";
    });
    return report;
  }
  if (suite == "duality") {
    merge(report, criterion_linear_duality(seed, budget));
    fixture_item(report, "fixture z_linear_xor", [&] {
      const ExperimentSpec spec = load_fixture(fixtures_dir, "z_linear_xor.nuca");
      require(spec.linear_config.has_value(), "fixture is not linear");
      const LinearRuleConfiguration d = dual(*spec.linear_config);
      require(d.memory().as_set() ==
                  spec.universe.inverse(spec.linear_config->memory().as_set()),
              "dual memory must be the inverse set");
      require(double_dual_check(*spec.linear_config).holds, "double dual failed");
      return "dual memory and double dual verified";
    });
    fixture_item(report, "fixture z3_linear_shift", [&] {
      const ExperimentSpec spec = load_fixture(fixtures_dir, "z3_linear_shift.nuca");
      const FpMatrix m = global_matrix(*spec.linear_config, budget);
      int ones = 0;
      for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) ones += m.at(r, c) != 0;
      require(ones == m.rows(), "shift matrix must be a permutation");
      require(m.invertible(), "shift matrix must be invertible");
      require(global_matrix(dual(*spec.linear_config), budget) == m.transposed(),
              "transpose oracle failed");
      return "permutation global matrix with transpose duality";
    });
    return report;
  }
  if (suite == "lemma-6.1") {
    merge(report, criterion_sparse_localization(seed, budget));
    fixture_item(report, "fixture z_sparse4_xor localize", [&] {
      const Nuca s = nuca_from_spec(load_fixture(fixtures_dir, "z_sparse4_xor.nuca"));
      const LocalizedPair lp = ubs_localize(s, s, s.universe().ball(2), 1 << 20, budget);
      require(identity_check(lp.q, lp.p).holds, "identity contract failed");
      return "localized pair passes the identity contract";
    });
    return report;
  }
  if (suite == "corollaries") {
    merge(report, criterion_finite_dual_surjunctivity(seed, budget, 200));
    fixture_item(report, "left-invertible-iff-stably-injective", [&] {
      std::mt19937_64 rng(seed ^ 0xC0C);
      const Alphabet alphabet(2);
      int reversible = 0;
      for (const GroupUniverse& u : {GroupUniverse(0, {4}), GroupUniverse(0, {6})}) {
        for (int i = 0; i < 30; ++i) {
          const Nuca n(random_config(rng, u, alphabet, 1, 2, u.enumerate_all()));
          const bool search = reversibility_search(n, 3, budget).verdict == Verdict::holds;
          const bool stable =
              stable_sweep(n, StableProperty::injective, budget).verdict == Verdict::holds;
          require(search == stable, "equivalence failed on " + u.to_string());
          reversible += search;
        }
      }
      return "60 samples, " + std::to_string(reversible) + " reversible, equivalence exact";
    });
    fixture_item(report, "fixture z3_xor witnesses", [&] {
      const Nuca n = nuca_from_spec(load_fixture(fixtures_dir, "z3_xor.nuca"));
      const PropertyReport oracle = injectivity_oracle(n, budget);
      require(oracle.verdict == Verdict::refuted, "xor should not be injective");
      const auto& [x, y] = *oracle.witness_pair;
      require(!(x == y) && evaluate(n, x) == evaluate(n, y), "witness does not re-verify");
      require(stable_sweep(n, StableProperty::invertible, budget).verdict == Verdict::refuted,
              "stable sweep should refute");
      return "collision witness re-verified through the engine";
    });
    return report;
  }
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

}  // namespace nuca
