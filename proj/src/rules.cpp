#include "nuca/rules.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

namespace nuca {

Memory::Memory(GroupUniverse u, std::vector<Element> cells)
    : u_(std::move(u)), cells_(std::move(cells)) {
  for (const Element& e : cells_)
    if (!u_.contains(e))
      throw std::invalid_argument("memory cell " + to_string(e) + " is not in " +
                                  u_.to_string());
  set_ = FiniteSubset::of(cells_);
  if (set_.size() != cells_.size())
    throw std::invalid_argument("memory cells must be duplicate-free");
}

Memory Memory::from_set(GroupUniverse u, const FiniteSubset& cells) {
  return Memory(std::move(u), cells.elements());
}

bool Memory::contains_identity() const { return set_.contains(u_.identity()); }

Memory Memory::with_identity() const {
  if (contains_identity()) return *this;
  std::vector<Element> cells = cells_;
  cells.push_back(u_.identity());
  return Memory(u_, std::move(cells));
}

std::optional<std::size_t> Memory::index_of(const Element& e) const {
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i] == e) return i;
  return std::nullopt;
}

bool Memory::subset_of(const Memory& other) const {
  return u_ == other.u_ && set_.subset_of(other.set_);
}

LocalRule::LocalRule(Alphabet alphabet, Memory memory, std::vector<int> table)
    : alphabet_(std::move(alphabet)), memory_(std::move(memory)), table_(std::move(table)) {
  const std::uint64_t expected =
      checked_pow(static_cast<std::uint64_t>(alphabet_.size()), memory_.size(),
                  BlockMap::kMaterializeBudget);
  if (expected > BlockMap::kMaterializeBudget)
    throw std::invalid_argument("rule table exceeds the materialization budget");
  if (table_.size() != expected)
    throw std::invalid_argument("rule table size must be q^|M|");
  for (int v : table_)
    if (v < 0 || v >= alphabet_.size())
      throw std::invalid_argument("rule table letter out of range");
}

LocalRule LocalRule::projection(Alphabet alphabet, Memory memory) {
  const auto idx = memory.index_of(memory.universe().identity());
  if (!idx) throw std::invalid_argument("projection rule needs the identity in its memory");
  const int q = alphabet.size();
  const std::uint64_t size = checked_pow(static_cast<std::uint64_t>(q), memory.size(),
                                         BlockMap::kMaterializeBudget);
  if (size > BlockMap::kMaterializeBudget)
    throw std::invalid_argument("rule table exceeds the materialization budget");
  std::vector<int> table(size, 0);
  const std::uint64_t place = checked_pow(static_cast<std::uint64_t>(q),
                                          memory.size() - 1 - *idx, size);
  for (std::uint64_t code = 0; code < size; ++code)
    table[code] = static_cast<int>((code / place) % static_cast<std::uint64_t>(q));
  return LocalRule(std::move(alphabet), std::move(memory), std::move(table));
}

int LocalRule::apply_letters(const std::vector<int>& letters) const {
  if (letters.size() != memory_.size())
    throw std::invalid_argument("rule input arity mismatch");
  std::uint64_t code = 0;
  for (int v : letters) {
    if (v < 0 || v >= alphabet_.size())
      throw std::invalid_argument("rule input letter out of range");
    code = code * static_cast<std::uint64_t>(alphabet_.size()) + static_cast<std::uint64_t>(v);
  }
  return table_[code];
}

int LocalRule::apply(const Pattern& v) const {
  std::vector<int> letters;
  letters.reserve(memory_.size());
  for (const Element& m : memory_.cells()) letters.push_back(v.at(m));
  return apply_letters(letters);
}

LocalRule LocalRule::enlarged(const Memory& larger) const {
  if (memory_ == larger) return *this;
  if (!memory_.subset_of(larger))
    throw std::invalid_argument("enlarged memory must contain the current memory");
  std::vector<std::size_t> where;
  where.reserve(memory_.size());
  for (const Element& m : memory_.cells()) where.push_back(*larger.index_of(m));
  const int q = alphabet_.size();
  const std::uint64_t size = checked_pow(static_cast<std::uint64_t>(q), larger.size(),
                                         BlockMap::kMaterializeBudget);
  if (size > BlockMap::kMaterializeBudget)
    throw std::invalid_argument("rule table exceeds the materialization budget");
  std::vector<int> table(size, 0);
  std::vector<int> big(larger.size(), 0);
  std::vector<int> small(memory_.size(), 0);
  for (std::uint64_t code = 0; code < size; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = larger.size(); i-- > 0;) {
      big[i] = static_cast<int>(c % static_cast<std::uint64_t>(q));
      c /= static_cast<std::uint64_t>(q);
    }
    for (std::size_t i = 0; i < where.size(); ++i) small[i] = big[where[i]];
    table[code] = apply_letters(small);
  }
  return LocalRule(alphabet_, larger, std::move(table));
}

bool LocalRule::compatible_with(const LocalRule& other) const {
  return alphabet_ == other.alphabet_ && memory_ == other.memory_;
}

bool is_geometric_site(const Element& g, std::int64_t base) {
  if (g.coords.size() != 1) return false;
  std::int64_t v = std::abs(g.coords[0]);
  if (v < base) return false;
  while (v % base == 0) v /= base;
  return v == 1;
}

BlockMap::BlockMap(GroupUniverse u, int alphabet_size, FiniteSubset domain,
                   FiniteSubset codomain, EvalFn eval)
    : u_(std::move(u)),
      q_(alphabet_size),
      domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      eval_(std::move(eval)) {
  if (q_ < 1) throw std::invalid_argument("alphabet size must be >= 1");
  const std::uint64_t entries =
      checked_pow(static_cast<std::uint64_t>(q_), domain_.size(), kMaterializeBudget);
  if (entries <= kMaterializeBudget) {
    std::vector<std::uint64_t> table(entries);
    for (std::uint64_t code = 0; code < entries; ++code) {
      const Pattern in = Pattern::from_code(u_, domain_, q_, code);
      const std::vector<int> out = eval_(in.values());
      if (out.size() != codomain_.size())
        throw std::logic_error("block map output arity mismatch");
      std::uint64_t oc = 0;
      for (int v : out) {
        if (v < 0 || v >= q_) throw std::logic_error("block map output letter out of range");
        oc = oc * static_cast<std::uint64_t>(q_) + static_cast<std::uint64_t>(v);
      }
      table[code] = oc;
    }
    table_ = std::move(table);
  }
}

BlockMap BlockMap::from_table(GroupUniverse u, int alphabet_size, FiniteSubset domain,
                              FiniteSubset codomain, std::vector<std::uint64_t> table) {
  auto shared = std::make_shared<std::vector<std::uint64_t>>(std::move(table));
  const std::size_t n = codomain.size();
  const int q = alphabet_size;
  return BlockMap(std::move(u), alphabet_size, std::move(domain), std::move(codomain),
                  [shared, n, q](const std::vector<int>& in) {
                    std::uint64_t code = 0;
                    for (int v : in)
                      code = code * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(v);
                    std::uint64_t oc = (*shared)[code];
                    std::vector<int> out(n, 0);
                    for (std::size_t i = n; i-- > 0;) {
                      out[i] = static_cast<int>(oc % static_cast<std::uint64_t>(q));
                      oc /= static_cast<std::uint64_t>(q);
                    }
                    return out;
                  });
}

std::vector<int> BlockMap::apply_letters(const std::vector<int>& input) const {
  if (input.size() != domain_.size())
    throw std::invalid_argument("block map input arity mismatch");
  if (table_) {
    std::uint64_t code = 0;
    for (int v : input) {
      if (v < 0 || v >= q_) throw std::invalid_argument("block map input letter out of range");
      code = code * static_cast<std::uint64_t>(q_) + static_cast<std::uint64_t>(v);
    }
    std::uint64_t oc = (*table_)[code];
    std::vector<int> out(codomain_.size(), 0);
    for (std::size_t i = codomain_.size(); i-- > 0;) {
      out[i] = static_cast<int>(oc % static_cast<std::uint64_t>(q_));
      oc /= static_cast<std::uint64_t>(q_);
    }
    return out;
  }
  return eval_(input);
}

std::uint64_t BlockMap::apply_code(std::uint64_t code) const {
  const Pattern in = Pattern::from_code(u_, domain_, q_, code);
  const std::vector<int> out = apply_letters(in.values());
  std::uint64_t oc = 0;
  for (int v : out) oc = oc * static_cast<std::uint64_t>(q_) + static_cast<std::uint64_t>(v);
  return oc;
}

Pattern BlockMap::apply(const Pattern& x) const {
  const Pattern in = x.restricted(domain_);
  const std::vector<int> out = apply_letters(in.values());
  std::vector<std::pair<Element, int>> cells;
  const auto& elems = codomain_.elements();
  cells.reserve(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) cells.emplace_back(elems[i], out[i]);
  return Pattern::of(u_, std::move(cells));
}

BlockMap::Bijectivity BlockMap::bijectivity(std::uint64_t budget) const {
  if (domain_.size() != codomain_.size())
    throw std::invalid_argument("bijectivity needs equal domain and codomain sizes");
  const std::uint64_t entries =
      checked_pow(static_cast<std::uint64_t>(q_), domain_.size(), budget);
  if (entries > budget) throw std::runtime_error("block map enumeration exceeds the budget");
  std::vector<std::uint64_t> first(entries, entries);
  for (std::uint64_t code = 0; code < entries; ++code) {
    const std::uint64_t out = apply_code(code);
    if (first[out] != entries) return {false, std::make_pair(first[out], code)};
    first[out] = code;
  }
  return {true, std::nullopt};
}

std::optional<BlockMap> BlockMap::inverted(std::uint64_t budget) const {
  const Bijectivity b = bijectivity(budget);
  if (!b.bijective) return std::nullopt;
  const std::uint64_t entries =
      checked_pow(static_cast<std::uint64_t>(q_), domain_.size(), budget);
  std::vector<std::uint64_t> inverse(entries, 0);
  for (std::uint64_t code = 0; code < entries; ++code) inverse[apply_code(code)] = code;
  return BlockMap::from_table(u_, q_, codomain_, domain_, std::move(inverse));
}

BlockMap induced_local_map(const FiniteSubset& window, const std::vector<LocalRule>& rules) {
  if (rules.size() != window.size())
    throw std::invalid_argument("induced local map needs one rule per window cell");
  if (window.empty())
    throw std::invalid_argument("induced local map needs a nonempty window");
  for (const LocalRule& r : rules)
    if (!r.compatible_with(rules.front()))
      throw std::invalid_argument("induced local map rules must share alphabet and memory");
  const Memory& mem = rules.front().memory();
  const GroupUniverse& u = mem.universe();
  const FiniteSubset domain = u.product(window, mem.as_set());
  // Precompute, per window cell, where its memory reads land in the domain.
  std::vector<std::vector<std::size_t>> reads(window.size());
  const auto& cells = window.elements();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    reads[i].reserve(mem.size());
    for (const Element& m : mem.cells()) reads[i].push_back(*domain.index_of(u.mul(cells[i], m)));
  }
  auto eval = [rules, reads](const std::vector<int>& in) {
    std::vector<int> out(rules.size());
    std::vector<int> letters;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      letters.clear();
      for (std::size_t pos : reads[i]) letters.push_back(in[pos]);
      out[i] = rules[i].apply_letters(letters);
    }
    return out;
  };
  return BlockMap(u, rules.front().alphabet().size(), domain, window, std::move(eval));
}

BlockMap induced_local_map(const RuleConfiguration& s, const FiniteSubset& window) {
  std::vector<LocalRule> rules;
  rules.reserve(window.size());
  for (const Element& g : window) rules.push_back(s.rule_at(g));
  return induced_local_map(window, rules);
}

namespace {

bool constant_on(const RuleConfiguration& s, const FiniteSubset& cells) {
  if (cells.empty()) return true;
  const LocalRule& first = s.rule_at(cells.elements().front());
  for (const Element& g : cells)
    if (!(s.rule_at(g) == first)) return false;
  return true;
}

}  // namespace

std::optional<FiniteSubset> verify_ubs(const RuleConfiguration& s, const FiniteSubset& window,
                                       std::int64_t search_limit) {
  const GroupUniverse& u = s.universe();
  if (!window.contains(u.identity()))
    throw std::invalid_argument("singularity window must contain the identity");
  if (!(u.inverse(window) == window))
    throw std::invalid_argument("singularity window must be symmetric");
  switch (s.kind()) {
    case RuleConfiguration::Kind::constant:
      return window;
    case RuleConfiguration::Kind::asymptotically_constant: {
      const FiniteSubset reach = set_union(u.product(s.exception_support(), window), window);
      return u.ball(static_cast<int>(u.radius(reach)));
    }
    case RuleConfiguration::Kind::sparse_singular: {
      const std::int64_t base = s.sparse_base();
      const std::int64_t r = u.radius(window);
      std::int64_t site = base;  // base^k
      for (;;) {
        const std::int64_t next = site * base;  // base^{k+1}
        if (next > search_limit) return std::nullopt;
        if (next - site > r) {
          const FiniteSubset f = u.ball(static_cast<int>(next));
          if (constant_on(s, set_difference(u.product(f, window), f))) return f;
        }
        site = next;
      }
    }
  }
  return std::nullopt;
}

}  // namespace nuca
