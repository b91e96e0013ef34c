#pragma once

#include <optional>
#include <utility>

#include "nuca/universe.hpp"

namespace nuca {

/// Letters are indices 0..size-1. Names are cosmetic; equality ignores them.
class Alphabet {
 public:
  explicit Alphabet(int size, std::vector<std::string> names = {});
  int size() const { return size_; }
  const std::vector<std::string>& names() const { return names_; }
  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.size_ == b.size_;
  }

 private:
  int size_;
  std::vector<std::string> names_;
};

/// Finite assignment of letters: exactly one value per support cell. Values
/// are stored parallel to the sorted support, so codes and iteration are
/// deterministic (first support cell = most significant base-q digit).
class Pattern {
 public:
  static Pattern of(GroupUniverse u, std::vector<std::pair<Element, int>> cells);
  static Pattern empty(GroupUniverse u);
  static Pattern constant(GroupUniverse u, const FiniteSubset& support, int letter);
  static Pattern from_code(GroupUniverse u, const FiniteSubset& support, int q,
                           std::uint64_t code);
  std::uint64_t code(int q) const;

  const GroupUniverse& universe() const { return u_; }
  const FiniteSubset& support() const { return support_; }
  const std::vector<int>& values() const { return values_; }
  int at(const Element& e) const;
  std::optional<int> find(const Element& e) const;

  Pattern shifted(const Element& g) const;
  /// Sub-pattern on cells; throws naming absent cells.
  Pattern restricted(const FiniteSubset& cells) const;

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  Pattern(GroupUniverse u, FiniteSubset support, std::vector<int> values)
      : u_(std::move(u)), support_(std::move(support)), values_(std::move(values)) {}
  GroupUniverse u_;
  FiniteSubset support_;
  std::vector<int> values_;
};

/// Total map equal to `background` away from a finite exception pattern.
/// Exceptions holding the background letter are stripped at construction, so
/// equality and diffs are structural.
class Configuration {
 public:
  Configuration(GroupUniverse u, int background, Pattern exceptions);
  static Configuration uniform(GroupUniverse u, int background);

  const GroupUniverse& universe() const { return u_; }
  int background() const { return background_; }
  const Pattern& exceptions() const { return exceptions_; }

  int at(const Element& e) const;
  Configuration shifted(const Element& g) const;
  Pattern restrict_to(const FiniteSubset& cells) const;
  /// Copy with the given cells overwritten by the pattern's values.
  Configuration overwritten(const Pattern& patch) const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  GroupUniverse u_;
  int background_;
  Pattern exceptions_;
};

struct AsymptoticDiff {
  bool asymptotic;
  FiniteSubset diff;  // meaningful only when asymptotic
};

/// Exact finite disagreement set, or asymptotic=false when the backgrounds
/// differ over an infinite universe.
AsymptoticDiff asymptotic_diff(const Configuration& x, const Configuration& y);

std::string to_literal(const Pattern& p);
std::string to_literal(const Configuration& x);

}  // namespace nuca
