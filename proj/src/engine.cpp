#include "nuca/engine.hpp"

#include <algorithm>

namespace nuca {

namespace {

void require_same_frame(const Nuca& a, const Nuca& b) {
  if (a.universe() != b.universe())
    throw std::invalid_argument("automata live over different universes");
  if (!(a.alphabet() == b.alphabet()))
    throw std::invalid_argument("automata use different alphabets");
}

bool is_sparse(const Nuca& n) {
  return n.config().kind() == RuleConfiguration::Kind::sparse_singular;
}

}  // namespace

Nuca::Nuca(RuleConfiguration config) : config_(std::move(config)) {
  if (!config_.memory().contains_identity())
    config_ = config_.enlarged(config_.memory().with_identity());
}

Pattern evaluate_window(const Nuca& n, const Pattern& state, const FiniteSubset& window) {
  const GroupUniverse& u = n.universe();
  if (state.universe() != u) throw std::invalid_argument("state universe mismatch");
  const Memory& mem = n.memory();
  const FiniteSubset needed = u.product(window, mem.as_set());
  const FiniteSubset missing = set_difference(needed, state.support());
  if (!missing.empty()) {
    std::string msg = "window evaluation needs cells:";
    for (const Element& e : missing) msg += ' ' + to_string(e);
    throw std::invalid_argument(msg);
  }
  std::vector<std::pair<Element, int>> out;
  out.reserve(window.size());
  std::vector<int> letters;
  for (const Element& g : window) {
    letters.clear();
    for (const Element& m : mem.cells()) letters.push_back(state.at(u.mul(g, m)));
    out.emplace_back(g, n.config().rule_at(g).apply_letters(letters));
  }
  return Pattern::of(u, std::move(out));
}

Configuration evaluate(const Nuca& n, const Configuration& state) {
  const GroupUniverse& u = n.universe();
  if (state.universe() != u) throw std::invalid_argument("state universe mismatch");
  if (is_sparse(n))
    throw std::invalid_argument(
        "evaluate does not support sparse-singular configurations; use evaluate_window");
  const int q = n.alphabet().size();
  if (state.background() >= q) throw std::invalid_argument("state letter out of range");
  for (int v : state.exceptions().values())
    if (v >= q) throw std::invalid_argument("state letter out of range");

  const Memory& mem = n.memory();
  const int out_background =
      n.config().background().apply_letters(std::vector<int>(mem.size(), state.background()));

  FiniteSubset candidates = n.config().exception_support();
  if (!state.exceptions().support().empty())
    candidates = set_union(
        candidates, u.product(state.exceptions().support(), u.inverse(mem.as_set())));

  std::vector<std::pair<Element, int>> out;
  out.reserve(candidates.size());
  std::vector<int> letters;
  for (const Element& g : candidates) {
    letters.clear();
    for (const Element& m : mem.cells()) letters.push_back(state.at(u.mul(g, m)));
    out.emplace_back(g, n.config().rule_at(g).apply_letters(letters));
  }
  return Configuration(u, out_background, Pattern::of(u, std::move(out)));
}

namespace {

// Rule table of outer(g) applied after the induced inner map on the outer
// memory; `inner_rules` is parallel to the outer memory cells.
LocalRule composed_rule(const GroupUniverse& u, const Alphabet& alphabet,
                        const LocalRule& outer_rule,
                        const std::vector<const LocalRule*>& inner_rules,
                        const Memory& outer_memory, const Memory& inner_memory,
                        const Memory& product_memory) {
  const int q = alphabet.size();
  const std::uint64_t size = checked_pow(static_cast<std::uint64_t>(q), product_memory.size(),
                                         BlockMap::kMaterializeBudget);
  if (size > BlockMap::kMaterializeBudget)
    throw std::runtime_error("composed rule table exceeds the materialization budget");
  std::vector<std::vector<std::size_t>> reads(outer_memory.size());
  for (std::size_t i = 0; i < outer_memory.size(); ++i) {
    const Element& m = outer_memory.cells()[i];
    reads[i].reserve(inner_memory.size());
    for (const Element& ncell : inner_memory.cells())
      reads[i].push_back(*product_memory.index_of(u.mul(m, ncell)));
  }
  std::vector<int> table(size, 0);
  std::vector<int> window(product_memory.size(), 0);
  std::vector<int> mid(outer_memory.size(), 0);
  std::vector<int> inner_letters;
  for (std::uint64_t code = 0; code < size; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = window.size(); i-- > 0;) {
      window[i] = static_cast<int>(c % static_cast<std::uint64_t>(q));
      c /= static_cast<std::uint64_t>(q);
    }
    for (std::size_t i = 0; i < mid.size(); ++i) {
      inner_letters.clear();
      for (std::size_t pos : reads[i]) inner_letters.push_back(window[pos]);
      mid[i] = inner_rules[i]->apply_letters(inner_letters);
    }
    table[code] = outer_rule.apply_letters(mid);
  }
  return LocalRule(alphabet, product_memory, std::move(table));
}

}  // namespace

Nuca compose(const Nuca& outer, const Nuca& inner) {
  require_same_frame(outer, inner);
  if (is_sparse(outer) || is_sparse(inner))
    throw std::invalid_argument("compose does not support sparse-singular configurations");
  const GroupUniverse& u = outer.universe();
  const Memory& m_outer = outer.memory();
  const Memory& m_inner = inner.memory();
  const Memory product_memory =
      Memory::from_set(u, u.product(m_outer.as_set(), m_inner.as_set()));

  auto rules_under = [&](const Element& g) {
    std::vector<const LocalRule*> rules;
    rules.reserve(m_outer.size());
    for (const Element& m : m_outer.cells()) rules.push_back(&inner.config().rule_at(u.mul(g, m)));
    return rules;
  };

  std::vector<const LocalRule*> background_rules(m_outer.size(), &inner.config().background());
  const LocalRule background = composed_rule(u, outer.alphabet(), outer.config().background(),
                                             background_rules, m_outer, m_inner, product_memory);
  if (outer.config().kind() == RuleConfiguration::Kind::constant &&
      inner.config().kind() == RuleConfiguration::Kind::constant)
    return Nuca(RuleConfiguration::constant(background));

  FiniteSubset candidates = outer.config().exception_support();
  if (inner.config().kind() != RuleConfiguration::Kind::constant)
    candidates = set_union(candidates, u.product(inner.config().exception_support(),
                                                 u.inverse(m_outer.as_set())));
  std::vector<std::pair<Element, LocalRule>> exceptions;
  for (const Element& g : candidates)
    exceptions.emplace_back(g, composed_rule(u, outer.alphabet(), outer.config().rule_at(g),
                                             rules_under(g), m_outer, m_inner, product_memory));
  return Nuca(RuleConfiguration::asymptotically_constant(background, std::move(exceptions)));
}

std::optional<Pattern> identity_cell_obstruction(const Nuca& left, const Nuca& right,
                                                 const Element& cell) {
  const GroupUniverse& u = left.universe();
  const int q = left.alphabet().size();
  const FiniteSubset n_set = left.memory().as_set();
  const FiniteSubset nm = u.product(n_set, right.memory().as_set());
  const FiniteSubset cell_window = u.product(FiniteSubset::of({cell}), n_set);
  const FiniteSubset cell_reach = u.product(FiniteSubset::of({cell}), nm);
  const std::uint64_t patterns =
      checked_pow(static_cast<std::uint64_t>(q), cell_reach.size(), kDefaultBudget);
  if (patterns > kDefaultBudget)
    throw std::runtime_error("identity check window enumeration exceeds the budget");
  const Element back = u.inv(cell);
  for (std::uint64_t code = 0; code < patterns; ++code) {
    const Pattern w = Pattern::from_code(u, cell_reach, q, code);
    const Pattern mid = evaluate_window(right, w, cell_window);
    const int out = left.config().rule_at(cell).apply(mid.shifted(back));
    if (out != w.at(cell)) return w.shifted(back);
  }
  return std::nullopt;
}

IdentityCheckResult identity_check(const Nuca& left, const Nuca& right) {
  require_same_frame(left, right);
  if (is_sparse(left) || is_sparse(right))
    throw std::invalid_argument(
        "identity check supports constant and asymptotically constant configurations");
  const GroupUniverse& u = left.universe();

  std::vector<Element> cells;
  if (u.is_finite()) {
    cells = u.enumerate_all().elements();
  } else {
    FiniteSubset special = left.config().exception_support();
    special = set_union(special, u.product(right.config().exception_support(),
                                           u.inverse(left.memory().as_set())));
    cells = special.elements();
    // Background cells all share one translated condition; sample three.
    std::vector<Element> reps;
    for (int r = 0; reps.size() < 3; ++r)
      for (const Element& g : set_difference(u.ball(r), special)) {
        if (std::find(reps.begin(), reps.end(), g) != reps.end()) continue;
        reps.push_back(g);
        if (reps.size() == 3) break;
      }
    cells.insert(cells.end(), reps.begin(), reps.end());
  }
  for (const Element& g : cells)
    if (auto witness = identity_cell_obstruction(left, right, g))
      return {false, g, std::move(witness)};
  return {true, std::nullopt, std::nullopt};
}

Configuration async_run(const LocalRule& update_rule, const std::vector<FiniteSubset>& schedule,
                        const Configuration& initial, std::optional<std::size_t> steps) {
  const std::size_t count = steps.value_or(schedule.size());
  if (count > schedule.size())
    throw std::invalid_argument("step count exceeds the schedule length");
  const Memory memory = update_rule.memory().with_identity();
  const LocalRule rule = update_rule.enlarged(memory);
  const LocalRule hold = LocalRule::projection(rule.alphabet(), memory);
  Configuration state = initial;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<std::pair<Element, LocalRule>> active;
    active.reserve(schedule[i].size());
    for (const Element& g : schedule[i]) active.emplace_back(g, rule);
    const Nuca step(RuleConfiguration::asymptotically_constant(hold, std::move(active)));
    state = evaluate(step, state);
  }
  return state;
}

}  // namespace nuca
