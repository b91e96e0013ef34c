#include "nuca/decide.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>

namespace nuca {

namespace {

std::string u64str(std::uint64_t v) { return std::to_string(v); }

Configuration config_from_code(const GroupUniverse& u, const FiniteSubset& cells, int q,
                               std::uint64_t code) {
  return Configuration(u, 0, Pattern::from_code(u, cells, q, code));
}

struct FiniteScan {
  bool injective;
  bool surjective;
  std::optional<std::pair<Configuration, Configuration>> collision;
  std::optional<Configuration> unreached;
};

// Full-orbit scan of a finite-universe automaton: image map plus the first
// collision and the first unreached configuration in code order.
FiniteScan finite_scan(const Nuca& n, std::uint64_t budget) {
  const GroupUniverse& u = n.universe();
  const FiniteSubset cells = u.enumerate_all();
  const int q = n.alphabet().size();
  const std::uint64_t total = checked_pow(static_cast<std::uint64_t>(q), cells.size(), budget);
  if (total > budget) throw std::runtime_error("enumeration exceeds the budget");
  std::vector<std::uint64_t> first(total, total);
  FiniteScan scan{true, true, std::nullopt, std::nullopt};
  for (std::uint64_t code = 0; code < total; ++code) {
    const Configuration x = config_from_code(u, cells, q, code);
    const std::uint64_t out = evaluate(n, x).restrict_to(cells).code(q);
    if (first[out] != total && scan.injective) {
      scan.injective = false;
      scan.collision = std::make_pair(config_from_code(u, cells, q, first[out]), x);
    }
    if (first[out] == total) first[out] = code;
  }
  for (std::uint64_t out = 0; out < total; ++out)
    if (first[out] == total) {
      scan.surjective = false;
      scan.unreached = config_from_code(u, cells, q, out);
      break;
    }
  if (scan.injective != scan.surjective)
    throw std::logic_error("internal: finite self-map scan disagrees with itself");
  return scan;
}

PropertyReport budget_exceeded(std::string property, std::uint64_t needed,
                               std::uint64_t budget) {
  PropertyReport r;
  r.property = std::move(property);
  r.verdict = Verdict::inconclusive;
  r.note = "enumeration budget exceeded";
  r.details.emplace_back("needed", u64str(needed));
  r.details.emplace_back("budget", u64str(budget));
  return r;
}

}  // namespace

InverseObject::InverseObject(std::vector<Stage> stages, std::optional<Nuca> flattened)
    : stages_(std::move(stages)), flattened_(std::move(flattened)) {
  if (stages_.empty()) throw std::invalid_argument("inverse object needs at least one stage");
}

Configuration InverseObject::apply(const Configuration& state) const {
  Configuration x = state;
  for (const Stage& stage : stages_) {
    if (const Nuca* n = std::get_if<Nuca>(&stage)) {
      x = evaluate(*n, x);
    } else {
      const BlockMap& b = std::get<BlockMap>(stage);
      x = x.overwritten(b.apply(x.restrict_to(b.domain())));
    }
  }
  return x;
}

PropertyReport injectivity_oracle(const Nuca& n, std::uint64_t budget) {
  const GroupUniverse& u = n.universe();
  if (!u.is_finite())
    throw std::invalid_argument("injectivity oracle requires a finite universe");
  const std::uint64_t total = checked_pow(static_cast<std::uint64_t>(n.alphabet().size()),
                                          u.enumerate_all().size(), budget);
  if (total > budget) return budget_exceeded("injective", total, budget);

  const FiniteScan scan = finite_scan(n, budget);
  PropertyReport r;
  r.property = "injective";
  r.verdict = scan.injective ? Verdict::holds : Verdict::refuted;
  r.details.emplace_back("configurations", u64str(total));
  r.details.emplace_back("surjective", scan.surjective ? "holds" : "refuted");
  if (scan.collision) {
    r.witness_pair = scan.collision;
    r.witness = "x=" + to_literal(scan.collision->first) +
                " y=" + to_literal(scan.collision->second);
  }
  return r;
}

PropertyReport surjectivity_window(const Nuca& n, const FiniteSubset& window,
                                   std::uint64_t budget) {
  const GroupUniverse& u = n.universe();
  const int q = n.alphabet().size();
  const FiniteSubset domain = u.product(window, n.memory().as_set());
  const std::uint64_t inputs =
      checked_pow(static_cast<std::uint64_t>(q), domain.size(), budget);
  if (inputs > budget) return budget_exceeded("surjective-window", inputs, budget);
  const std::uint64_t outputs =
      checked_pow(static_cast<std::uint64_t>(q), window.size(), budget);

  std::vector<bool> reached(outputs, false);
  for (std::uint64_t code = 0; code < inputs; ++code) {
    const Pattern x = Pattern::from_code(u, domain, q, code);
    reached[evaluate_window(n, x, window).code(q)] = true;
  }
  std::uint64_t count = 0;
  std::optional<std::uint64_t> missing;
  for (std::uint64_t out = 0; out < outputs; ++out) {
    if (reached[out])
      ++count;
    else if (!missing)
      missing = out;
  }
  PropertyReport r;
  r.property = "surjective-window";
  r.details.emplace_back("window_cells", u64str(window.size()));
  r.details.emplace_back("image_patterns", u64str(count));
  r.details.emplace_back("window_patterns", u64str(outputs));
  if (missing) {
    r.verdict = Verdict::refuted;
    r.witness_pattern = Pattern::from_code(u, window, q, *missing);
    r.witness = to_literal(*r.witness_pattern);
  } else {
    r.verdict = Verdict::inconclusive;
    r.note = "window image is full; surjectivity is not certified";
  }
  return r;
}

namespace {

// Derives a left-inverse rule for one cell from window observations, or
// nullopt when two windows share an observation but disagree at the cell.
std::optional<LocalRule> derive_inverse_rule(const Nuca& n, const Element& cell,
                                             const Memory& inverse_memory) {
  const GroupUniverse& u = n.universe();
  const int q = n.alphabet().size();
  const FiniteSubset cell_window = u.product(FiniteSubset::of({cell}), inverse_memory.as_set());
  const FiniteSubset cell_reach = u.product(cell_window, n.memory().as_set());
  const std::uint64_t patterns = checked_pow(static_cast<std::uint64_t>(q), cell_reach.size(),
                                             BlockMap::kMaterializeBudget);
  if (patterns > BlockMap::kMaterializeBudget)
    throw std::runtime_error("inverse rule derivation exceeds the materialization budget");
  const std::uint64_t table_size =
      checked_pow(static_cast<std::uint64_t>(q), inverse_memory.size(), patterns);
  // Unconstrained observations keep letter 0 so the result is deterministic.
  std::vector<int> table(table_size, 0);
  std::vector<bool> assigned(table_size, false);
  const Element back = u.inv(cell);
  for (std::uint64_t code = 0; code < patterns; ++code) {
    const Pattern w = Pattern::from_code(u, cell_reach, q, code);
    const Pattern seen = evaluate_window(n, w, cell_window).shifted(back);
    std::uint64_t oc = 0;
    for (const Element& m : inverse_memory.cells())
      oc = oc * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(seen.at(m));
    const int target = w.at(cell);
    if (assigned[oc] && table[oc] != target) return std::nullopt;
    table[oc] = target;
    assigned[oc] = true;
  }
  return LocalRule(n.alphabet(), inverse_memory, std::move(table));
}

}  // namespace

ReversibilityResult reversibility_search(const Nuca& n, int r_max, std::uint64_t budget) {
  if (n.config().kind() == RuleConfiguration::Kind::sparse_singular)
    throw std::invalid_argument(
        "reversibility search supports constant and asymptotically constant configurations");
  const GroupUniverse& u = n.universe();
  const int q = n.alphabet().size();
  std::uint64_t spent = 0;

  for (int r = 0; r <= r_max; ++r) {
    const Memory inverse_memory = Memory::from_set(u, u.ball(r));
    std::vector<Element> cells;
    bool whole_universe = false;
    if (u.is_finite()) {
      cells = u.enumerate_all().elements();
      whole_universe = true;
    } else {
      const FiniteSubset special = u.product(n.config().exception_support(),
                                             u.inverse(inverse_memory.as_set()));
      cells = special.elements();
      for (int rr = 0;; ++rr) {
        const FiniteSubset far = set_difference(u.ball(rr), special);
        if (!far.empty()) {
          cells.push_back(far.elements().front());
          break;
        }
      }
    }

    const FiniteSubset reach =
        u.product(u.product(FiniteSubset::of({u.identity()}), inverse_memory.as_set()),
                  n.memory().as_set());
    const std::uint64_t per_cell =
        checked_pow(static_cast<std::uint64_t>(q), reach.size(), budget);
    if (per_cell > budget || spent + per_cell * cells.size() > budget) {
      ReversibilityResult out{Verdict::inconclusive, std::nullopt, -1, {}};
      out.details.emplace_back("budget", u64str(budget));
      out.details.emplace_back("radius_reached", std::to_string(r));
      return out;
    }
    spent += per_cell * cells.size();

    bool ok = true;
    std::vector<std::pair<Element, LocalRule>> derived;
    for (const Element& g : cells) {
      auto rule = derive_inverse_rule(n, g, inverse_memory);
      if (!rule) {
        ok = false;
        break;
      }
      derived.emplace_back(g, std::move(*rule));
    }
    if (!ok) continue;

    RuleConfiguration config = RuleConfiguration::constant(derived.back().second);
    if (whole_universe) {
      // Lexicographically smallest cell anchors the background rule.
      const LocalRule background = derived.front().second;
      std::vector<std::pair<Element, LocalRule>> exceptions;
      for (auto& [cell, rule] : derived)
        if (!(rule == background)) exceptions.emplace_back(cell, std::move(rule));
      config = RuleConfiguration::asymptotically_constant(background, std::move(exceptions));
    } else {
      const LocalRule background = derived.back().second;  // the far representative
      derived.pop_back();
      std::vector<std::pair<Element, LocalRule>> exceptions;
      for (auto& [cell, rule] : derived)
        if (!(rule == background)) exceptions.emplace_back(cell, std::move(rule));
      config = RuleConfiguration::asymptotically_constant(background, std::move(exceptions));
    }
    if (n.config().kind() == RuleConfiguration::Kind::constant &&
        config.exceptions().empty())
      config = RuleConfiguration::constant(config.background());

    Nuca inverse(config);
    const IdentityCheckResult check = identity_check(inverse, n);
    if (!check.holds)
      throw std::logic_error("internal: derived left inverse fails the identity check");
    ReversibilityResult out{Verdict::holds, std::move(inverse), r, {}};
    out.details.emplace_back("radius", std::to_string(r));
    out.details.emplace_back("patterns_enumerated", u64str(spent));
    return out;
  }
  ReversibilityResult out{Verdict::inconclusive, std::nullopt, -1, {}};
  out.details.emplace_back("r_max", std::to_string(r_max));
  out.details.emplace_back("patterns_enumerated", u64str(spent));
  return out;
}

BlockMap extract_block_map(const Nuca& n, const FiniteSubset& block, const FiniteSubset& active,
                           std::uint64_t spot_check_seed) {
  const GroupUniverse& u = n.universe();
  const int q = n.alphabet().size();
  const Memory& mem = n.memory();
  for (const Element& g : active)
    for (const Element& m : mem.cells())
      if (!block.contains(u.mul(g, m)))
        throw std::invalid_argument("active cell " + to_string(g) + " reads " +
                                    to_string(u.mul(g, m)) + " outside the block");
  const LocalRule projection = LocalRule::projection(n.alphabet(), mem);
  for (const Element& g : set_difference(block, active))
    if (!(n.config().rule_at(g) == projection))
      throw std::invalid_argument("rule at " + to_string(g) +
                                  " is not the projection; the block does not factor");

  const auto& cells = block.elements();
  std::vector<std::optional<std::vector<std::size_t>>> reads(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!active.contains(cells[i])) continue;
    std::vector<std::size_t> idx;
    idx.reserve(mem.size());
    for (const Element& m : mem.cells()) idx.push_back(*block.index_of(u.mul(cells[i], m)));
    reads[i] = std::move(idx);
  }
  const RuleConfiguration config = n.config();
  auto eval = [config, cells, reads](const std::vector<int>& in) {
    std::vector<int> out(cells.size());
    std::vector<int> letters;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (!reads[i]) {
        out[i] = in[i];
        continue;
      }
      letters.clear();
      for (std::size_t pos : *reads[i]) letters.push_back(in[pos]);
      out[i] = config.rule_at(cells[i]).apply_letters(letters);
    }
    return out;
  };
  BlockMap result(u, q, block, block, std::move(eval));

  // Well-definedness is implied by the preconditions; spot-check two
  // extensions per random input against windowed evaluation.
  std::mt19937_64 rng(spot_check_seed);
  const FiniteSubset full = u.product(block, mem.as_set());
  const FiniteSubset outside = set_difference(full, block);
  std::uniform_int_distribution<int> letter(0, q - 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::pair<Element, int>> base;
    for (const Element& e : block) base.emplace_back(e, letter(rng));
    const Pattern x = Pattern::of(u, base);
    const Pattern expected = result.apply(x);
    for (int ext = 0; ext < 2; ++ext) {
      std::vector<std::pair<Element, int>> padded = base;
      for (const Element& e : outside) padded.emplace_back(e, ext == 0 ? 0 : letter(rng));
      const Pattern y = Pattern::of(u, padded);
      if (!(evaluate_window(n, y, block) == expected))
        throw std::logic_error("internal: block map disagrees with windowed evaluation");
    }
  }
  return result;
}

InvertResult perturbation_invert(const Nuca& n, int r_max, std::uint64_t budget) {
  if (n.config().kind() == RuleConfiguration::Kind::sparse_singular)
    throw std::invalid_argument(
        "perturbation inversion requires a constant or asymptotically constant configuration");
  const GroupUniverse& u = n.universe();
  const int q = n.alphabet().size();
  InvertResult out{Verdict::inconclusive, std::nullopt, std::nullopt, "", {}};

  const Nuca background(RuleConfiguration::constant(n.config().background()));
  const ReversibilityResult rev = reversibility_search(background, r_max, budget);
  if (rev.verdict != Verdict::holds) {
    out.reason = "background automaton not invertible within r_max";
    out.details.emplace_back("r_max", std::to_string(r_max));
    return out;
  }
  const Nuca& inverse_background = *rev.left_inverse;
  if (!identity_check(background, inverse_background).holds) {
    out.reason = "background inverse is one-sided within r_max";
    out.details.emplace_back("r_max", std::to_string(r_max));
    return out;
  }
  out.details.emplace_back("background_inverse_radius", std::to_string(rev.radius));

  const FiniteSubset perturbed = n.config().exception_support();
  if (perturbed.empty()) {
    out.verdict = Verdict::holds;
    out.inverse = InverseObject({inverse_background}, inverse_background);
    return out;
  }

  const Nuca composed = compose(n, inverse_background);
  const FiniteSubset block = u.product(
      u.product(perturbed, n.memory().as_set()), inverse_background.memory().as_set());
  const std::uint64_t entries =
      checked_pow(static_cast<std::uint64_t>(q), block.size(), budget);
  if (entries > budget) {
    out.reason = "block enumeration exceeds the budget";
    out.details.emplace_back("needed", u64str(entries));
    out.details.emplace_back("budget", u64str(budget));
    return out;
  }
  out.details.emplace_back("block_cells", u64str(block.size()));

  const BlockMap factor = extract_block_map(composed, block, perturbed);
  const BlockMap::Bijectivity bij = factor.bijectivity(budget);
  if (!bij.bijective) {
    const auto [a, b] = *bij.collision;
    const Configuration xa = evaluate(inverse_background, config_from_code(u, block, q, a));
    const Configuration xb = evaluate(inverse_background, config_from_code(u, block, q, b));
    out.verdict = Verdict::refuted;
    out.collision = std::make_pair(xa, xb);
    out.reason = "block factor is not injective";
    return out;
  }
  std::vector<InverseObject::Stage> stages;
  stages.emplace_back(*factor.inverted(budget));
  stages.emplace_back(inverse_background);

  std::optional<Nuca> flattened;
  const ReversibilityResult direct = reversibility_search(n, r_max, budget);
  if (direct.verdict == Verdict::holds && identity_check(n, *direct.left_inverse).holds)
    flattened = direct.left_inverse;

  out.verdict = Verdict::holds;
  out.inverse = InverseObject(std::move(stages), std::move(flattened));
  return out;
}

namespace {

// Sparse-singular left-inverse verification. Cells near small or crowded
// sites are checked one by one; every remaining cell is a translate of a
// checked one (a background cell, or an offset from one isolated site), so
// the finite sweep is exhaustive for this family.
bool verify_left_inverse_sparse(const Nuca& left, const Nuca& right, std::uint64_t budget) {
  const RuleConfiguration& t = left.config();
  const RuleConfiguration& s = right.config();
  if (t.kind() != RuleConfiguration::Kind::sparse_singular ||
      s.kind() != RuleConfiguration::Kind::sparse_singular ||
      t.sparse_base() != s.sparse_base())
    throw std::invalid_argument(
        "sparse left-inverse verification needs matching sparse-singular classes");
  const GroupUniverse& u = left.universe();
  const std::int64_t base = s.sparse_base();
  const std::int64_t reach =
      u.radius(left.memory().as_set()) +
      u.radius(u.product(left.memory().as_set(), right.memory().as_set()));

  std::int64_t extras = 0;
  for (const auto& [cell, rule] : s.exceptions()) extras = std::max(extras, u.word_norm(cell));
  for (const auto& [cell, rule] : t.exceptions()) extras = std::max(extras, u.word_norm(cell));

  std::int64_t site = base;
  while (site * base - site <= 2 * reach + 1 || site <= extras + reach) site *= base;
  const std::int64_t explicit_radius = site * base + reach;
  if (static_cast<std::uint64_t>(explicit_radius) > budget)
    throw std::runtime_error("sparse verification radius exceeds the budget");

  for (const Element& g : u.ball(static_cast<int>(explicit_radius)))
    if (identity_cell_obstruction(left, right, g)) return false;
  // One representative background cell clear of every site: the next site
  // sits more than 4*reach away, so this offset cannot touch it.
  const std::int64_t far = explicit_radius + reach + 1;
  return !identity_cell_obstruction(left, right, u.element({far})).has_value();
}

}  // namespace

bool verify_left_inverse(const Nuca& left, const Nuca& right, std::uint64_t budget) {
  const bool left_sparse = left.config().kind() == RuleConfiguration::Kind::sparse_singular;
  const bool right_sparse = right.config().kind() == RuleConfiguration::Kind::sparse_singular;
  if (!left_sparse && !right_sparse) return identity_check(left, right).holds;
  if (left_sparse != right_sparse)
    throw std::invalid_argument(
        "left-inverse verification across mixed sparse classes is not supported");
  return verify_left_inverse_sparse(left, right, budget);
}

LocalizedPair ubs_localize(const Nuca& s, const Nuca& t, const FiniteSubset& window,
                           std::int64_t ubs_search_limit, std::uint64_t budget) {
  if (s.universe() != t.universe())
    throw std::invalid_argument("automata live over different universes");
  if (!(s.alphabet() == t.alphabet()))
    throw std::invalid_argument("automata use different alphabets");
  const GroupUniverse& u = s.universe();

  // Shared symmetric memory for both sides.
  FiniteSubset mem_set = set_union(s.memory().as_set(), t.memory().as_set());
  mem_set = set_union(mem_set, u.inverse(mem_set));
  mem_set = set_union(mem_set, FiniteSubset::of({u.identity()}));
  const Memory memory = Memory::from_set(u, mem_set);
  const Nuca se = s.enlarged(memory);
  const Nuca te = t.enlarged(memory);

  if (!verify_left_inverse(te, se, budget))
    throw std::invalid_argument("t is not a left inverse of s");

  FiniteSubset e = set_union(window, mem_set);
  e = set_union(e, u.inverse(e));
  const FiniteSubset e3 = u.product(u.product(e, e), e);

  const auto f = verify_ubs(se.config(), e3, ubs_search_limit);
  if (!f) throw std::runtime_error("singularity localization exhausted the search limit");
  const FiniteSubset fe = u.product(*f, e);
  const FiniteSubset fe2 = u.product(fe, e);
  const FiniteSubset fe3 = u.product(fe2, e);
  const FiniteSubset constant_zone = set_difference(fe3, *f);

  const LocalRule constant_rule = constant_zone.empty()
                                      ? se.config().background()
                                      : se.config().rule_at(constant_zone.elements().front());

  std::vector<std::pair<Element, LocalRule>> p_exceptions;
  for (const Element& g : fe) {
    const LocalRule& rule = se.config().rule_at(g);
    if (!(rule == constant_rule)) p_exceptions.emplace_back(g, rule);
  }
  const Nuca p(RuleConfiguration::asymptotically_constant(constant_rule, std::move(p_exceptions)));

  const FiniteSubset anchor_zone = set_difference(fe2, fe);
  Nuca q = te;
  if (anchor_zone.empty()) {
    // Finite universe degenerate case: the window already covers everything.
    std::vector<std::pair<Element, LocalRule>> q_exceptions;
    const LocalRule background = te.config().rule_at(u.enumerate_all().elements().front());
    for (const Element& g : u.enumerate_all()) {
      const LocalRule& rule = te.config().rule_at(g);
      if (!(rule == background)) q_exceptions.emplace_back(g, rule);
    }
    q = Nuca(RuleConfiguration::asymptotically_constant(background, std::move(q_exceptions)));
  } else {
    const Element anchor = anchor_zone.elements().front();
    const LocalRule background = te.config().rule_at(anchor);
    std::vector<std::pair<Element, LocalRule>> q_exceptions;
    for (const Element& g : fe) {
      const LocalRule& rule = te.config().rule_at(g);
      if (!(rule == background)) q_exceptions.emplace_back(g, rule);
    }
    q = Nuca(RuleConfiguration::asymptotically_constant(background, std::move(q_exceptions)));
  }

  if (!identity_check(q, p).holds)
    throw std::logic_error("internal: localized pair fails the identity check");
  return {p, q};
}

PropertyReport post_surjectivity_check(const Nuca& n, int defect_radius, int correction_radius,
                                       std::uint64_t budget) {
  const GroupUniverse& u = n.universe();
  const int q = n.alphabet().size();
  PropertyReport r;
  r.property = "post-surjective";

  if (u.is_finite()) {
    const std::uint64_t total =
        checked_pow(static_cast<std::uint64_t>(q), u.enumerate_all().size(), budget);
    if (total > budget) return budget_exceeded("post-surjective", total, budget);
    const FiniteScan scan = finite_scan(n, budget);
    r.verdict = scan.surjective ? Verdict::holds : Verdict::refuted;
    r.note = "finite universe: post-surjectivity is surjectivity";
    if (scan.unreached) {
      r.witness_configuration = scan.unreached;
      r.witness = to_literal(*scan.unreached);
    }
    return r;
  }

  if (n.config().kind() == RuleConfiguration::Kind::sparse_singular)
    throw std::invalid_argument(
        "post-surjectivity sampling supports constant and asymptotically constant "
        "configurations");
  const FiniteSubset defect = u.ball(defect_radius);
  const FiniteSubset correction = u.ball(correction_radius);
  const std::uint64_t defects = checked_pow(static_cast<std::uint64_t>(q), defect.size(), budget);
  const std::uint64_t corrections =
      checked_pow(static_cast<std::uint64_t>(q), correction.size(), budget);
  const std::uint64_t work = static_cast<std::uint64_t>(q) * defects * defects * corrections;
  if (defects > budget || corrections > budget || work > budget)
    return budget_exceeded("post-surjective", work, budget);

  r.details.emplace_back("defect_radius", std::to_string(defect_radius));
  r.details.emplace_back("correction_radius", std::to_string(correction_radius));
  for (int background = 0; background < q; ++background) {
    for (std::uint64_t xc = 0; xc < defects; ++xc) {
      const Configuration x(u, background, Pattern::from_code(u, defect, q, xc));
      const Configuration image = evaluate(n, x);
      for (std::uint64_t yc = 0; yc < defects; ++yc) {
        const Configuration y = image.overwritten(Pattern::from_code(u, defect, q, yc));
        bool corrected = false;
        for (std::uint64_t zc = 0; zc < corrections && !corrected; ++zc) {
          const Configuration z = x.overwritten(Pattern::from_code(u, correction, q, zc));
          corrected = evaluate(n, z) == y;
        }
        if (!corrected) {
          r.verdict = Verdict::refuted;
          r.witness_pair = std::make_pair(x, y);
          r.witness = "x=" + to_literal(x) + " y=" + to_literal(y);
          r.note = "no correction within the correction ball";
          return r;
        }
      }
    }
  }
  r.verdict = Verdict::inconclusive;
  r.note = "all sampled defects corrected; post-surjectivity is not certified";
  return r;
}

PropertyReport pre_injectivity_check(const Nuca& n, int radius, std::uint64_t budget) {
  const GroupUniverse& u = n.universe();
  const int q = n.alphabet().size();
  PropertyReport r;
  r.property = "pre-injective";

  if (u.is_finite()) {
    const std::uint64_t total =
        checked_pow(static_cast<std::uint64_t>(q), u.enumerate_all().size(), budget);
    if (total > budget) return budget_exceeded("pre-injective", total, budget);
    const FiniteScan scan = finite_scan(n, budget);
    r.verdict = scan.injective ? Verdict::holds : Verdict::refuted;
    r.note = "finite universe: pre-injectivity is injectivity";
    if (scan.collision) {
      r.witness_pair = scan.collision;
      r.witness = "x=" + to_literal(scan.collision->first) +
                  " y=" + to_literal(scan.collision->second);
    }
    return r;
  }

  if (n.config().kind() == RuleConfiguration::Kind::sparse_singular)
    throw std::invalid_argument(
        "pre-injectivity sampling supports constant and asymptotically constant configurations");
  const FiniteSubset support = u.ball(radius);
  const std::uint64_t patterns =
      checked_pow(static_cast<std::uint64_t>(q), support.size(), budget);
  const std::uint64_t work = static_cast<std::uint64_t>(q) * patterns * patterns / 2;
  if (patterns > budget || work > budget)
    return budget_exceeded("pre-injective", work, budget);

  r.details.emplace_back("radius", std::to_string(radius));
  for (int background = 0; background < q; ++background) {
    for (std::uint64_t a = 0; a < patterns; ++a) {
      const Configuration x(u, background, Pattern::from_code(u, support, q, a));
      const Configuration fx = evaluate(n, x);
      for (std::uint64_t b = a + 1; b < patterns; ++b) {
        const Configuration y(u, background, Pattern::from_code(u, support, q, b));
        if (x == y) continue;
        if (evaluate(n, y) == fx) {
          r.verdict = Verdict::refuted;
          r.witness_pair = std::make_pair(x, y);
          r.witness = "x=" + to_literal(x) + " y=" + to_literal(y);
          return r;
        }
      }
    }
  }
  r.verdict = Verdict::inconclusive;
  r.note = "no asymptotic collision within the ball; pre-injectivity is not certified";
  return r;
}

StableProperty parse_stable_property(const std::string& name) {
  if (name == "injective") return StableProperty::injective;
  if (name == "surjective") return StableProperty::surjective;
  if (name == "post-surjective" || name == "post_surjective")
    return StableProperty::post_surjective;
  if (name == "pre-injective" || name == "pre_injective") return StableProperty::pre_injective;
  if (name == "invertible") return StableProperty::invertible;
  throw std::invalid_argument("unknown stable property '" + name + "'");
}

std::string to_string(StableProperty p) {
  switch (p) {
    case StableProperty::injective:
      return "injective";
    case StableProperty::surjective:
      return "surjective";
    case StableProperty::post_surjective:
      return "post-surjective";
    case StableProperty::pre_injective:
      return "pre-injective";
    case StableProperty::invertible:
      return "invertible";
  }
  return "invertible";
}

PropertyReport stable_sweep(const Nuca& n, StableProperty property, std::uint64_t budget) {
  const GroupUniverse& u = n.universe();
  if (!u.is_finite())
    throw std::invalid_argument(
        "stable sweep requires a finite universe; use reversibility_search over infinite ones");
  const int q = n.alphabet().size();
  const FiniteSubset all = u.enumerate_all();
  const std::uint64_t total = checked_pow(static_cast<std::uint64_t>(q), all.size(), budget);
  if (total > budget || total * all.size() > budget)
    return budget_exceeded("stable-" + to_string(property), total * all.size(), budget);

  PropertyReport r;
  r.property = "stable-" + to_string(property);
  r.details.emplace_back("translates", u64str(all.size()));
  for (const Element& g : all) {
    const Nuca translate = n.shifted(g);
    const FiniteScan scan = finite_scan(translate, budget);
    bool ok = true;
    switch (property) {
      case StableProperty::injective:
      case StableProperty::pre_injective:
        ok = scan.injective;
        break;
      case StableProperty::surjective:
      case StableProperty::post_surjective:
        ok = scan.surjective;
        break;
      case StableProperty::invertible:
        ok = scan.injective && scan.surjective;
        break;
    }
    if (!ok) {
      r.verdict = Verdict::refuted;
      r.note = "translate " + to_string(g) + " fails";
      if (scan.collision) {
        r.witness_pair = scan.collision;
        r.witness = "translate=" + to_string(g) + " x=" + to_literal(scan.collision->first) +
                    " y=" + to_literal(scan.collision->second);
      } else if (scan.unreached) {
        r.witness_configuration = scan.unreached;
        r.witness = "translate=" + to_string(g) + " unreached=" + to_literal(*scan.unreached);
      }
      return r;
    }
  }
  r.verdict = Verdict::holds;
  return r;
}

}  // namespace nuca
