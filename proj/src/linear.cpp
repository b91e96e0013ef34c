#include "nuca/linear.hpp"

namespace nuca {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

LinearAlphabet::LinearAlphabet(int p, int n) : p_(p), n_(n) {
  if (!is_prime(p_)) throw std::invalid_argument("field order must be prime");
  if (n_ < 1) throw std::invalid_argument("vector dimension must be >= 1");
  const std::uint64_t size =
      checked_pow(static_cast<std::uint64_t>(p_), static_cast<std::uint64_t>(n_), 1u << 20);
  if (size > (1u << 20)) throw std::invalid_argument("vector alphabet too large");
  size_ = static_cast<int>(size);
}

std::vector<int> LinearAlphabet::decode(int letter) const {
  if (letter < 0 || letter >= size_) throw std::invalid_argument("letter out of range");
  std::vector<int> vec(static_cast<std::size_t>(n_), 0);
  for (int i = n_; i-- > 0;) {
    vec[static_cast<std::size_t>(i)] = letter % p_;
    letter /= p_;
  }
  return vec;
}

int LinearAlphabet::encode(const std::vector<int>& vec) const {
  if (vec.size() != static_cast<std::size_t>(n_))
    throw std::invalid_argument("vector dimension mismatch");
  int letter = 0;
  for (int c : vec) {
    if (c < 0 || c >= p_) throw std::invalid_argument("vector entry out of range");
    letter = letter * p_ + c;
  }
  return letter;
}

FpMatrix::FpMatrix(int p, int rows, int cols)
    : p_(p), rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {
  if (!is_prime(p_)) throw std::invalid_argument("field order must be prime");
  if (rows_ < 0 || cols_ < 0) throw std::invalid_argument("matrix shape must be nonnegative");
}

FpMatrix FpMatrix::identity(int p, int n) {
  FpMatrix m(p, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

void FpMatrix::set(int r, int c, int value) {
  data_[static_cast<std::size_t>(r) * cols_ + c] = ((value % p_) + p_) % p_;
}

FpMatrix FpMatrix::transposed() const {
  FpMatrix t(p_, cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
  return t;
}

FpMatrix FpMatrix::times(const FpMatrix& other) const {
  if (cols_ != other.rows_ || p_ != other.p_)
    throw std::invalid_argument("matrix shape mismatch");
  FpMatrix out(p_, rows_, other.cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < other.cols_; ++c) {
      int acc = 0;
      for (int k = 0; k < cols_; ++k) acc = (acc + at(r, k) * other.at(k, c)) % p_;
      out.set(r, c, acc);
    }
  return out;
}

std::vector<int> FpMatrix::apply(const std::vector<int>& vec) const {
  if (vec.size() != static_cast<std::size_t>(cols_))
    throw std::invalid_argument("matrix/vector shape mismatch");
  std::vector<int> out(static_cast<std::size_t>(rows_), 0);
  for (int r = 0; r < rows_; ++r) {
    int acc = 0;
    for (int c = 0; c < cols_; ++c) acc = (acc + at(r, c) * vec[static_cast<std::size_t>(c)]) % p_;
    out[static_cast<std::size_t>(r)] = acc;
  }
  return out;
}

bool FpMatrix::is_zero() const {
  for (int v : data_)
    if (v != 0) return false;
  return true;
}

bool FpMatrix::invertible() const {
  if (rows_ != cols_) throw std::invalid_argument("invertibility needs a square matrix");
  FpMatrix m = *this;
  for (int col = 0; col < cols_; ++col) {
    int pivot = -1;
    for (int r = col; r < rows_; ++r)
      if (m.at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return false;
    if (pivot != col)
      for (int c = 0; c < cols_; ++c) {
        const int tmp = m.at(col, c);
        m.set(col, c, m.at(pivot, c));
        m.set(pivot, c, tmp);
      }
    // Scale the pivot row to 1 via the inverse of the pivot entry.
    int inv = 1;
    for (int k = 1; k < p_; ++k)
      if ((m.at(col, col) * k) % p_ == 1) {
        inv = k;
        break;
      }
    for (int c = 0; c < cols_; ++c) m.set(col, c, m.at(col, c) * inv);
    for (int r = 0; r < rows_; ++r) {
      if (r == col || m.at(r, col) == 0) continue;
      const int factor = m.at(r, col);
      for (int c = 0; c < cols_; ++c) m.set(r, c, m.at(r, c) - factor * m.at(col, c));
    }
  }
  return true;
}

std::vector<std::vector<int>> FpMatrix::rows_list() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(rows_));
  for (int r = 0; r < rows_; ++r) {
    out[static_cast<std::size_t>(r)].resize(static_cast<std::size_t>(cols_));
    for (int c = 0; c < cols_; ++c) out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = at(r, c);
  }
  return out;
}

LinearLocalRule::LinearLocalRule(LinearAlphabet alphabet, Memory memory,
                                 std::vector<FpMatrix> matrices)
    : alphabet_(std::move(alphabet)), memory_(std::move(memory)), matrices_(std::move(matrices)) {
  if (matrices_.size() != memory_.size())
    throw std::invalid_argument("one matrix per memory cell required");
  for (const FpMatrix& m : matrices_)
    if (m.p() != alphabet_.p() || m.rows() != alphabet_.n() || m.cols() != alphabet_.n())
      throw std::invalid_argument("matrix shape must be n x n over F_p");
}

LinearLocalRule LinearLocalRule::projection(LinearAlphabet alphabet, Memory memory) {
  const auto idx = memory.index_of(memory.universe().identity());
  if (!idx) throw std::invalid_argument("projection rule needs the identity in its memory");
  std::vector<FpMatrix> mats(memory.size(), FpMatrix(alphabet.p(), alphabet.n(), alphabet.n()));
  mats[*idx] = FpMatrix::identity(alphabet.p(), alphabet.n());
  return LinearLocalRule(std::move(alphabet), std::move(memory), std::move(mats));
}

FpMatrix LinearLocalRule::matrix_at(const Element& cell) const {
  const auto idx = memory_.index_of(cell);
  if (!idx) return FpMatrix(alphabet_.p(), alphabet_.n(), alphabet_.n());
  return matrices_[*idx];
}

std::vector<int> LinearLocalRule::apply(const std::vector<std::vector<int>>& values) const {
  if (values.size() != memory_.size())
    throw std::invalid_argument("rule input arity mismatch");
  std::vector<int> acc(static_cast<std::size_t>(alphabet_.n()), 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::vector<int> term = matrices_[i].apply(values[i]);
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] = (acc[j] + term[j]) % alphabet_.p();
  }
  return acc;
}

LinearLocalRule LinearLocalRule::enlarged(const Memory& larger) const {
  if (memory_ == larger) return *this;
  if (!memory_.subset_of(larger))
    throw std::invalid_argument("enlarged memory must contain the current memory");
  std::vector<FpMatrix> mats(larger.size(), FpMatrix(alphabet_.p(), alphabet_.n(), alphabet_.n()));
  for (std::size_t i = 0; i < memory_.size(); ++i)
    mats[*larger.index_of(memory_.cells()[i])] = matrices_[i];
  return LinearLocalRule(alphabet_, larger, std::move(mats));
}

bool LinearLocalRule::compatible_with(const LinearLocalRule& other) const {
  return alphabet_ == other.alphabet_ && memory_ == other.memory_;
}

bool LinearLocalRule::same_map_as(const LinearLocalRule& other) const {
  if (!(alphabet_ == other.alphabet_)) return false;
  if (!(memory_.universe() == other.memory_.universe())) return false;
  for (const Element& cell : set_union(memory_.as_set(), other.memory_.as_set()))
    if (!(matrix_at(cell) == other.matrix_at(cell))) return false;
  return true;
}

LocalRule to_table(const LinearLocalRule& rule, std::uint64_t budget) {
  const int q = rule.alphabet().size();
  const std::uint64_t size =
      checked_pow(static_cast<std::uint64_t>(q), rule.memory().size(), budget);
  if (size > budget || size > BlockMap::kMaterializeBudget)
    throw std::runtime_error("linear rule table exceeds the budget");
  std::vector<int> table(size, 0);
  std::vector<std::vector<int>> values(rule.memory().size());
  for (std::uint64_t code = 0; code < size; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = rule.memory().size(); i-- > 0;) {
      values[i] = rule.alphabet().decode(static_cast<int>(c % static_cast<std::uint64_t>(q)));
      c /= static_cast<std::uint64_t>(q);
    }
    table[code] = rule.alphabet().encode(rule.apply(values));
  }
  return LocalRule(rule.alphabet().to_alphabet(), rule.memory(), std::move(table));
}

Nuca to_nuca(const LinearRuleConfiguration& s, std::uint64_t budget) {
  switch (s.kind()) {
    case LinearRuleConfiguration::Kind::constant:
      return Nuca(RuleConfiguration::constant(to_table(s.background(), budget)));
    case LinearRuleConfiguration::Kind::asymptotically_constant: {
      std::vector<std::pair<Element, LocalRule>> exceptions;
      for (const auto& [cell, rule] : s.exceptions())
        exceptions.emplace_back(cell, to_table(rule, budget));
      return Nuca(RuleConfiguration::asymptotically_constant(to_table(s.background(), budget),
                                                             std::move(exceptions)));
    }
    case LinearRuleConfiguration::Kind::sparse_singular: {
      std::vector<std::pair<Element, LocalRule>> extras;
      for (const auto& [cell, rule] : s.exceptions())
        extras.emplace_back(cell, to_table(rule, budget));
      return Nuca(RuleConfiguration::sparse_singular(to_table(s.background(), budget),
                                                     s.sparse_base(),
                                                     to_table(s.sparse_rule(), budget),
                                                     std::move(extras)));
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

LinearLocalRule dual_rule_at(const LinearRuleConfiguration& s, const Element& g,
                             const Memory& dual_memory) {
  const GroupUniverse& u = s.universe();
  std::vector<FpMatrix> mats;
  mats.reserve(dual_memory.size());
  for (const Element& m : dual_memory.cells())
    mats.push_back(s.rule_at(u.mul(g, m)).matrix_at(u.inv(m)).transposed());
  return LinearLocalRule(s.background().alphabet(), dual_memory, std::move(mats));
}

}  // namespace

LinearRuleConfiguration dual(const LinearRuleConfiguration& s) {
  if (s.kind() == LinearRuleConfiguration::Kind::sparse_singular)
    throw std::invalid_argument("dual of a sparse-singular configuration is unsupported");
  const GroupUniverse& u = s.universe();
  const Memory dual_memory = Memory::from_set(u, u.inverse(s.memory().as_set()));
  const LinearLocalRule background = dual_rule_at(
      LinearRuleConfiguration::constant(s.background()), u.identity(), dual_memory);
  if (s.kind() == LinearRuleConfiguration::Kind::constant)
    return LinearRuleConfiguration::constant(background);

  // Dual entries can move only where g m lands in the exception support.
  const FiniteSubset candidates = u.product(s.exception_support(), s.memory().as_set());
  std::vector<std::pair<Element, LinearLocalRule>> exceptions;
  for (const Element& g : candidates) exceptions.emplace_back(g, dual_rule_at(s, g, dual_memory));
  return LinearRuleConfiguration::asymptotically_constant(background, std::move(exceptions));
}

DoubleDualResult double_dual_check(const LinearRuleConfiguration& s) {
  const LinearRuleConfiguration dd = dual(dual(s));
  if (dd.kind() != s.kind()) return {false, std::nullopt};
  const GroupUniverse& u = s.universe();
  if (!dd.background().same_map_as(s.background())) return {false, u.identity()};
  FiniteSubset support = s.exception_support();
  if (s.kind() == LinearRuleConfiguration::Kind::asymptotically_constant)
    support = set_union(support, dd.exception_support());
  for (const Element& g : support)
    if (!dd.rule_at(g).same_map_as(s.rule_at(g))) return {false, g};
  return {true, std::nullopt};
}

FpMatrix global_matrix(const LinearRuleConfiguration& s, std::uint64_t budget) {
  const GroupUniverse& u = s.universe();
  if (!u.is_finite()) throw std::invalid_argument("global matrix requires a finite universe");
  const FiniteSubset cells = u.enumerate_all();
  const int n = s.background().alphabet().n();
  const std::uint64_t dim = static_cast<std::uint64_t>(n) * cells.size();
  if (dim > budget) throw std::runtime_error("global matrix exceeds the budget");
  FpMatrix big(s.background().alphabet().p(), static_cast<int>(dim), static_cast<int>(dim));
  const auto& elems = cells.elements();
  for (std::size_t gi = 0; gi < elems.size(); ++gi) {
    const LinearLocalRule& rule = s.rule_at(elems[gi]);
    for (std::size_t hj = 0; hj < elems.size(); ++hj) {
      const Element rel = u.mul(u.inv(elems[gi]), elems[hj]);
      const FpMatrix block = rule.matrix_at(rel);
      if (block.is_zero()) continue;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          big.set(static_cast<int>(gi) * n + r, static_cast<int>(hj) * n + c, block.at(r, c));
    }
  }
  return big;
}

std::optional<LinearLocalRule> linear_rule_from_table(const LocalRule& rule,
                                                      const LinearAlphabet& alphabet) {
  if (rule.alphabet().size() != alphabet.size()) return std::nullopt;
  const Memory& memory = rule.memory();
  const int n = alphabet.n();
  std::vector<FpMatrix> mats;
  mats.reserve(memory.size());
  std::vector<std::vector<int>> zero(memory.size(),
                                     std::vector<int>(static_cast<std::size_t>(n), 0));
  auto encode_all = [&](const std::vector<std::vector<int>>& vecs) {
    std::vector<int> letters(vecs.size());
    for (std::size_t i = 0; i < vecs.size(); ++i) letters[i] = alphabet.encode(vecs[i]);
    return letters;
  };
  if (rule.apply_letters(encode_all(zero)) != 0) return std::nullopt;
  for (std::size_t i = 0; i < memory.size(); ++i) {
    FpMatrix m(alphabet.p(), n, n);
    for (int j = 0; j < n; ++j) {
      std::vector<std::vector<int>> probe = zero;
      probe[i][static_cast<std::size_t>(j)] = 1;
      const std::vector<int> column = alphabet.decode(rule.apply_letters(encode_all(probe)));
      for (int r = 0; r < n; ++r) m.set(r, j, column[static_cast<std::size_t>(r)]);
    }
    mats.push_back(std::move(m));
  }
  LinearLocalRule candidate(alphabet, memory, std::move(mats));
  const std::uint64_t size = checked_pow(static_cast<std::uint64_t>(alphabet.size()),
                                         memory.size(), BlockMap::kMaterializeBudget);
  std::vector<std::vector<int>> values(memory.size());
  for (std::uint64_t code = 0; code < size; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = memory.size(); i-- > 0;) {
      values[i] = alphabet.decode(static_cast<int>(c % static_cast<std::uint64_t>(alphabet.size())));
      c /= static_cast<std::uint64_t>(alphabet.size());
    }
    if (alphabet.encode(candidate.apply(values)) != rule.apply_code(code)) return std::nullopt;
  }
  return candidate;
}

}  // namespace nuca
