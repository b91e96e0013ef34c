#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nuca/common.hpp"

namespace nuca {

/// Group element of Z^r x Z/m_1 x ... x Z/m_k, stored as a single coordinate
/// vector: free coordinates first, then torsion coordinates reduced into
/// [0, m_i). Elements are canonicalized eagerly, so equality is structural.
struct Element {
  std::vector<std::int64_t> coords;
  auto operator<=>(const Element&) const = default;
};

std::string to_string(const Element& e);

/// Duplicate-free set of elements kept sorted, so equality is structural and
/// iteration order is deterministic (lexicographic on coordinates).
class FiniteSubset {
 public:
  FiniteSubset() = default;
  static FiniteSubset of(std::vector<Element> elems);

  const std::vector<Element>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  bool contains(const Element& e) const;
  std::optional<std::size_t> index_of(const Element& e) const;
  bool subset_of(const FiniteSubset& other) const;

  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }
  friend bool operator==(const FiniteSubset&, const FiniteSubset&) = default;

 private:
  std::vector<Element> elems_;
};

FiniteSubset set_union(const FiniteSubset& a, const FiniteSubset& b);
FiniteSubset set_difference(const FiniteSubset& a, const FiniteSubset& b);

/// Finitely generated abelian group Z^free_rank x prod_i Z/moduli[i]. The
/// canonical generating set consists of the identity together with +-1 in
/// every coordinate; balls are taken with respect to it.
class GroupUniverse {
 public:
  GroupUniverse() = default;  // trivial group
  GroupUniverse(int free_rank, std::vector<std::int64_t> moduli);

  int free_rank() const { return free_rank_; }
  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  int dim() const { return free_rank_ + static_cast<int>(moduli_.size()); }
  bool is_finite() const { return free_rank_ == 0; }
  /// Group order for finite universes, clamped to cap + 1 on overflow.
  std::uint64_t order_clamped(std::uint64_t cap) const;

  Element identity() const;
  /// Canonicalizes the coordinates (torsion reduction); checks arity.
  Element element(std::vector<std::int64_t> coords) const;
  bool contains(const Element& e) const;

  Element mul(const Element& a, const Element& b) const;
  Element inv(const Element& a) const;
  /// Word length with respect to the canonical generating set.
  std::int64_t word_norm(const Element& e) const;

  FiniteSubset generating_set() const;
  FiniteSubset ball(int radius) const;
  FiniteSubset product(const FiniteSubset& a, const FiniteSubset& b) const;
  FiniteSubset inverse(const FiniteSubset& a) const;
  /// All elements of a finite universe; throws for infinite ones.
  FiniteSubset enumerate_all() const;
  /// Max word norm over the set (0 for the empty set).
  std::int64_t radius(const FiniteSubset& a) const;

  std::string to_string() const;
  friend bool operator==(const GroupUniverse&, const GroupUniverse&) = default;

 private:
  int free_rank_ = 0;
  std::vector<std::int64_t> moduli_;
};

/// Parses literals like "Z", "Z^2", "Z/3", "Z * Z/4".
GroupUniverse parse_universe(std::string_view literal);
/// Parses element literals like "(1,-2)".
Element parse_element(const GroupUniverse& u, std::string_view literal);

}  // namespace nuca
