#pragma once

#include <functional>
#include <optional>

#include "nuca/configurations.hpp"

namespace nuca {

/// Ordered neighborhood a cell reads. The declared cell order fixes rule
/// table indexing, so the same cells in a different order are a different
/// memory.
class Memory {
 public:
  Memory(GroupUniverse u, std::vector<Element> cells);
  /// Memory in canonical (sorted) cell order.
  static Memory from_set(GroupUniverse u, const FiniteSubset& cells);

  const GroupUniverse& universe() const { return u_; }
  const std::vector<Element>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool contains_identity() const;
  /// Same memory, with the identity appended at the end when absent.
  Memory with_identity() const;
  std::optional<std::size_t> index_of(const Element& e) const;
  const FiniteSubset& as_set() const { return set_; }
  bool subset_of(const Memory& other) const;

  friend bool operator==(const Memory& a, const Memory& b) {
    return a.u_ == b.u_ && a.cells_ == b.cells_;
  }

 private:
  GroupUniverse u_;
  std::vector<Element> cells_;
  FiniteSubset set_;
};

/// Transition table A^M -> A. Entries are indexed lexicographically in the
/// memory's declared cell order, first cell as the most significant base-q
/// digit, letter 0 lowest.
class LocalRule {
 public:
  LocalRule(Alphabet alphabet, Memory memory, std::vector<int> table);
  /// v -> v(identity); requires the identity in the memory.
  static LocalRule projection(Alphabet alphabet, Memory memory);

  const Alphabet& alphabet() const { return alphabet_; }
  const Memory& memory() const { return memory_; }
  const std::vector<int>& table() const { return table_; }

  int apply_code(std::uint64_t code) const { return table_[code]; }
  /// Letters in memory cell order.
  int apply_letters(const std::vector<int>& letters) const;
  /// The pattern must cover the memory cells.
  int apply(const Pattern& v) const;

  /// Equivalent rule on a larger memory: reads only the original cells.
  LocalRule enlarged(const Memory& larger) const;
  bool compatible_with(const LocalRule& other) const;

  friend bool operator==(const LocalRule&, const LocalRule&) = default;

 private:
  Alphabet alphabet_;
  Memory memory_;
  std::vector<int> table_;
};

/// True when the integer point g = (k) lies on a geometric site +-base^j, j>=1.
bool is_geometric_site(const Element& g, std::int64_t base);

/// Assignment of a local rule to every cell, in one of three representable
/// classes: constant, asymptotically constant (finitely many exceptions), or
/// sparse-singular over Z (a fixed rule on the geometric sites +-base^k plus
/// finitely many extra exceptions). All rules share one alphabet and memory;
/// exceptions equal to what the cell would otherwise hold are stripped.
template <class R>
class BasicRuleConfiguration {
 public:
  enum class Kind { constant, asymptotically_constant, sparse_singular };

  static BasicRuleConfiguration constant(R rule) {
    return BasicRuleConfiguration(Kind::constant, std::move(rule), {}, 0, std::nullopt);
  }

  static BasicRuleConfiguration asymptotically_constant(
      R background, std::vector<std::pair<Element, R>> exceptions) {
    return BasicRuleConfiguration(Kind::asymptotically_constant, std::move(background),
                                  std::move(exceptions), 0, std::nullopt);
  }

  static BasicRuleConfiguration sparse_singular(
      R background, std::int64_t base, R singular,
      std::vector<std::pair<Element, R>> extras = {}) {
    return BasicRuleConfiguration(Kind::sparse_singular, std::move(background),
                                  std::move(extras), base, std::move(singular));
  }

  Kind kind() const { return kind_; }
  const GroupUniverse& universe() const { return background_.memory().universe(); }
  const Memory& memory() const { return background_.memory(); }
  const R& background() const { return background_; }

  const R& rule_at(const Element& g) const {
    for (const auto& [cell, rule] : exceptions_)
      if (cell == g) return rule;
    if (kind_ == Kind::sparse_singular && is_geometric_site(g, base_)) return *singular_;
    return background_;
  }

  /// Exception entries sorted by cell (extras, for the sparse class).
  const std::vector<std::pair<Element, R>>& exceptions() const { return exceptions_; }

  FiniteSubset exception_support() const {
    if (kind_ == Kind::sparse_singular)
      throw std::invalid_argument("sparse-singular configurations have unbounded support");
    std::vector<Element> cells;
    cells.reserve(exceptions_.size());
    for (const auto& [cell, rule] : exceptions_) cells.push_back(cell);
    return FiniteSubset::of(std::move(cells));
  }

  std::int64_t sparse_base() const { return base_; }
  const R& sparse_rule() const { return *singular_; }

  BasicRuleConfiguration enlarged(const Memory& larger) const {
    std::vector<std::pair<Element, R>> exc;
    exc.reserve(exceptions_.size());
    for (const auto& [cell, rule] : exceptions_) exc.emplace_back(cell, rule.enlarged(larger));
    std::optional<R> sing;
    if (singular_) sing = singular_->enlarged(larger);
    return BasicRuleConfiguration(kind_, background_.enlarged(larger), std::move(exc), base_,
                                  std::move(sing));
  }

  /// Translated assignment g.s with (g.s)(h) = s(g^-1 h).
  BasicRuleConfiguration shifted(const Element& g) const {
    if (kind_ == Kind::sparse_singular)
      throw std::invalid_argument("cannot shift a sparse-singular configuration");
    std::vector<std::pair<Element, R>> exc;
    exc.reserve(exceptions_.size());
    for (const auto& [cell, rule] : exceptions_)
      exc.emplace_back(universe().mul(g, cell), rule);
    return BasicRuleConfiguration(kind_, background_, std::move(exc), base_, singular_);
  }

  friend bool operator==(const BasicRuleConfiguration&, const BasicRuleConfiguration&) = default;

 private:
  BasicRuleConfiguration(Kind kind, R background, std::vector<std::pair<Element, R>> exceptions,
                         std::int64_t base, std::optional<R> singular)
      : kind_(kind),
        background_(std::move(background)),
        exceptions_(std::move(exceptions)),
        base_(base),
        singular_(std::move(singular)) {
    const GroupUniverse& u = background_.memory().universe();
    if (kind_ == Kind::sparse_singular) {
      if (u.free_rank() != 1 || !u.moduli().empty())
        throw std::invalid_argument("sparse-singular configurations require universe Z");
      if (base_ < 2) throw std::invalid_argument("sparse base must be >= 2");
      if (!singular_->compatible_with(background_))
        throw std::invalid_argument("singular rule alphabet/memory mismatch");
    }
    std::sort(exceptions_.begin(), exceptions_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Element, R>> kept;
    for (auto& [cell, rule] : exceptions_) {
      if (!u.contains(cell))
        throw std::invalid_argument("exception cell " + to_string(cell) + " is not in " +
                                    u.to_string());
      if (!rule.compatible_with(background_))
        throw std::invalid_argument("exception rule alphabet/memory mismatch at " +
                                    to_string(cell));
      if (!kept.empty() && kept.back().first == cell)
        throw std::invalid_argument("duplicate exception cell " + to_string(cell));
      const R& inherent = (kind_ == Kind::sparse_singular && is_geometric_site(cell, base_))
                              ? *singular_
                              : background_;
      if (!(rule == inherent)) kept.emplace_back(cell, std::move(rule));
    }
    exceptions_ = std::move(kept);
  }

  Kind kind_;
  R background_;
  std::vector<std::pair<Element, R>> exceptions_;
  std::int64_t base_;
  std::optional<R> singular_;
};

using RuleConfiguration = BasicRuleConfiguration<LocalRule>;

/// Finite map A^domain -> A^codomain. Tables up to the materialization budget
/// are precomputed; larger maps evaluate per input. Codes are lexicographic in
/// the sorted domain/codomain order.
class BlockMap {
 public:
  using EvalFn = std::function<std::vector<int>(const std::vector<int>&)>;
  static constexpr std::uint64_t kMaterializeBudget = std::uint64_t{1} << 20;

  BlockMap(GroupUniverse u, int alphabet_size, FiniteSubset domain, FiniteSubset codomain,
           EvalFn eval);
  static BlockMap from_table(GroupUniverse u, int alphabet_size, FiniteSubset domain,
                             FiniteSubset codomain, std::vector<std::uint64_t> table);

  const GroupUniverse& universe() const { return u_; }
  int alphabet_size() const { return q_; }
  const FiniteSubset& domain() const { return domain_; }
  const FiniteSubset& codomain() const { return codomain_; }
  bool materialized() const { return table_.has_value(); }

  std::vector<int> apply_letters(const std::vector<int>& input) const;
  std::uint64_t apply_code(std::uint64_t code) const;
  /// The pattern must cover the domain; result lives on the codomain.
  Pattern apply(const Pattern& x) const;

  struct Bijectivity {
    bool bijective;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> collision;  // input codes
  };
  /// Requires |domain| == |codomain|; enumerates all inputs.
  Bijectivity bijectivity(std::uint64_t budget) const;
  std::optional<BlockMap> inverted(std::uint64_t budget) const;

 private:
  GroupUniverse u_;
  int q_;
  FiniteSubset domain_;
  FiniteSubset codomain_;
  EvalFn eval_;
  std::optional<std::vector<std::uint64_t>> table_;
};

/// Induced local map on the window E: reads A^{EM}, applies each cell's rule.
/// `rules` is parallel to E's sorted elements and all rules share one memory.
BlockMap induced_local_map(const FiniteSubset& window, const std::vector<LocalRule>& rules);
BlockMap induced_local_map(const RuleConfiguration& s, const FiniteSubset& window);

/// Searches a finite F containing E with s constant on FE \ F. E must be
/// symmetric and contain the identity. Constant and asymptotically constant
/// configurations always succeed; the sparse class scans geometric radii and
/// gives up once they exceed search_limit.
std::optional<FiniteSubset> verify_ubs(const RuleConfiguration& s, const FiniteSubset& window,
                                       std::int64_t search_limit);

}  // namespace nuca
