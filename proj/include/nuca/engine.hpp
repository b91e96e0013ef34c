#pragma once

#include "nuca/rules.hpp"

namespace nuca {

/// Executable non-uniform automaton: universe, alphabet, memory, and one rule
/// per cell. The memory is normalized at construction to contain the identity.
class Nuca {
 public:
  explicit Nuca(RuleConfiguration config);

  const GroupUniverse& universe() const { return config_.universe(); }
  const Alphabet& alphabet() const { return config_.background().alphabet(); }
  const Memory& memory() const { return config_.memory(); }
  const RuleConfiguration& config() const { return config_; }

  Nuca shifted(const Element& g) const { return Nuca(config_.shifted(g)); }
  Nuca enlarged(const Memory& larger) const { return Nuca(config_.enlarged(larger)); }

  friend bool operator==(const Nuca&, const Nuca&) = default;

 private:
  RuleConfiguration config_;
};

/// Applies the automaton on the window: output cell g holds the rule at g
/// applied to the g-translated memory pattern. The state must cover the
/// window times the memory; the error names any missing cells.
Pattern evaluate_window(const Nuca& n, const Pattern& state, const FiniteSubset& window);

/// Total image of an asymptotically constant state. Unsupported for
/// sparse-singular configurations (their image need not have this shape);
/// use evaluate_window there.
Configuration evaluate(const Nuca& n, const Configuration& state);

/// Automaton computing outer after inner, on the product memory. Composing
/// two constants yields a constant; constant/asymptotic mixes stay
/// asymptotically constant. Sparse-singular operands are unsupported.
Nuca compose(const Nuca& outer, const Nuca& inner);

struct IdentityCheckResult {
  bool holds;
  std::optional<Element> cell;
  std::optional<Pattern> witness;  // pattern on N*M in cell-relative coordinates
};

/// Decides whether left after right is the identity map, one cell class at a
/// time: every exception-affected cell is checked directly and the uniform
/// background class through representatives. Requires constant or
/// asymptotically constant configurations on both sides.
IdentityCheckResult identity_check(const Nuca& left, const Nuca& right);

/// Per-cell identity condition at one cell; returns a violating window
/// pattern in cell-relative coordinates, if any. Enumerates A^{gNM}.
std::optional<Pattern> identity_cell_obstruction(const Nuca& left, const Nuca& right,
                                                 const Element& cell);

/// Runs the update rule asynchronously: step i applies `update_rule` on the
/// cells of schedule[i] and leaves every other cell unchanged.
Configuration async_run(const LocalRule& update_rule, const std::vector<FiniteSubset>& schedule,
                        const Configuration& initial,
                        std::optional<std::size_t> steps = std::nullopt);

}  // namespace nuca
