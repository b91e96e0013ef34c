#pragma once

#include "nuca/engine.hpp"

namespace nuca {

/// F_p^n vector alphabet. Letters enumerate the vectors lexicographically,
/// first component as the most significant base-p digit.
class LinearAlphabet {
 public:
  LinearAlphabet(int p, int n);
  int p() const { return p_; }
  int n() const { return n_; }
  int size() const { return size_; }
  Alphabet to_alphabet() const { return Alphabet(size_); }
  std::vector<int> decode(int letter) const;
  int encode(const std::vector<int>& vec) const;
  friend bool operator==(const LinearAlphabet&, const LinearAlphabet&) = default;

 private:
  int p_;
  int n_;
  int size_;
};

/// Dense matrix over F_p.
class FpMatrix {
 public:
  FpMatrix(int p, int rows, int cols);
  static FpMatrix identity(int p, int n);

  int p() const { return p_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  void set(int r, int c, int value);

  FpMatrix transposed() const;
  FpMatrix times(const FpMatrix& other) const;
  std::vector<int> apply(const std::vector<int>& vec) const;
  bool is_zero() const;
  /// Square matrices only; Gaussian elimination mod p.
  bool invertible() const;
  std::vector<std::vector<int>> rows_list() const;

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

 private:
  int p_;
  int rows_;
  int cols_;
  std::vector<int> data_;
};

/// Local rule v -> sum_m matrix(m) * v(m) over F_p; matrices are parallel to
/// the memory cells, and a cell outside the memory reads as the zero matrix.
class LinearLocalRule {
 public:
  LinearLocalRule(LinearAlphabet alphabet, Memory memory, std::vector<FpMatrix> matrices);
  static LinearLocalRule projection(LinearAlphabet alphabet, Memory memory);

  const LinearAlphabet& alphabet() const { return alphabet_; }
  const Memory& memory() const { return memory_; }
  const std::vector<FpMatrix>& matrices() const { return matrices_; }
  /// Matrix read at an arbitrary cell (zero off the memory).
  FpMatrix matrix_at(const Element& cell) const;

  std::vector<int> apply(const std::vector<std::vector<int>>& values) const;
  LinearLocalRule enlarged(const Memory& larger) const;
  bool compatible_with(const LinearLocalRule& other) const;
  /// Memory-order-insensitive semantic equality (zero entries ignored).
  bool same_map_as(const LinearLocalRule& other) const;

  friend bool operator==(const LinearLocalRule&, const LinearLocalRule&) = default;

 private:
  LinearAlphabet alphabet_;
  Memory memory_;
  std::vector<FpMatrix> matrices_;
};

using LinearRuleConfiguration = BasicRuleConfiguration<LinearLocalRule>;

/// Table form of a linear rule; bridges into the general machinery.
LocalRule to_table(const LinearLocalRule& rule, std::uint64_t budget = default_budget());
Nuca to_nuca(const LinearRuleConfiguration& s, std::uint64_t budget = default_budget());

/// Dual assignment on the inverse memory: entry at (g, m) is the transpose of
/// the entry at (g m, m^-1). Constant stays constant, asymptotically constant
/// stays asymptotically constant; sparse-singular is unsupported.
LinearRuleConfiguration dual(const LinearRuleConfiguration& s);

struct DoubleDualResult {
  bool holds;
  std::optional<Element> cell;
};

/// Structural check that dual(dual(s)) is s again; a failure signals an
/// implementation bug and names the disagreeing cell.
DoubleDualResult double_dual_check(const LinearRuleConfiguration& s);

/// Block matrix of the whole automaton on a finite universe: block (g, h)
/// holds the matrix the rule at g applies to the value at h. Multiplying a
/// vectorized configuration equals engine evaluation.
FpMatrix global_matrix(const LinearRuleConfiguration& s, std::uint64_t budget = default_budget());

/// Recovers matrices from a rule table when the table is linear.
std::optional<LinearLocalRule> linear_rule_from_table(const LocalRule& rule,
                                                      const LinearAlphabet& alphabet);

}  // namespace nuca
