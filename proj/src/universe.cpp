#include "nuca/universe.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace nuca {

std::string to_string(const Element& e) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < e.coords.size(); ++i) {
    if (i) os << ',';
    os << e.coords[i];
  }
  os << ')';
  return os.str();
}

FiniteSubset FiniteSubset::of(std::vector<Element> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  FiniteSubset s;
  s.elems_ = std::move(elems);
  return s;
}

bool FiniteSubset::contains(const Element& e) const {
  return std::binary_search(elems_.begin(), elems_.end(), e);
}

std::optional<std::size_t> FiniteSubset::index_of(const Element& e) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), e);
  if (it == elems_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - elems_.begin());
}

bool FiniteSubset::subset_of(const FiniteSubset& other) const {
  return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(),
                       elems_.end());
}

FiniteSubset set_union(const FiniteSubset& a, const FiniteSubset& b) {
  std::vector<Element> all(a.elements());
  all.insert(all.end(), b.elements().begin(), b.elements().end());
  return FiniteSubset::of(std::move(all));
}

FiniteSubset set_difference(const FiniteSubset& a, const FiniteSubset& b) {
  std::vector<Element> out;
  for (const Element& e : a)
    if (!b.contains(e)) out.push_back(e);
  return FiniteSubset::of(std::move(out));
}

GroupUniverse::GroupUniverse(int free_rank, std::vector<std::int64_t> moduli)
    : free_rank_(free_rank), moduli_(std::move(moduli)) {
  if (free_rank_ < 0) throw std::invalid_argument("free rank must be nonnegative");
  for (std::int64_t m : moduli_)
    if (m < 2) throw std::invalid_argument("cyclic moduli must be >= 2");
}

std::uint64_t GroupUniverse::order_clamped(std::uint64_t cap) const {
  if (!is_finite()) throw std::invalid_argument("infinite universe");
  std::uint64_t n = 1;
  for (std::int64_t m : moduli_) {
    if (n > cap / static_cast<std::uint64_t>(m)) return cap + 1;
    n *= static_cast<std::uint64_t>(m);
  }
  return n;
}

Element GroupUniverse::identity() const {
  return Element{std::vector<std::int64_t>(static_cast<std::size_t>(dim()), 0)};
}

Element GroupUniverse::element(std::vector<std::int64_t> coords) const {
  if (coords.size() != static_cast<std::size_t>(dim()))
    throw std::invalid_argument("element arity does not match universe " + to_string());
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    const std::int64_t m = moduli_[i];
    std::int64_t& c = coords[static_cast<std::size_t>(free_rank_) + i];
    c = ((c % m) + m) % m;
  }
  return Element{std::move(coords)};
}

bool GroupUniverse::contains(const Element& e) const {
  if (e.coords.size() != static_cast<std::size_t>(dim())) return false;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    const std::int64_t c = e.coords[static_cast<std::size_t>(free_rank_) + i];
    if (c < 0 || c >= moduli_[i]) return false;
  }
  return true;
}

namespace {
void require_member(const GroupUniverse& u, const Element& e) {
  if (!u.contains(e))
    throw std::invalid_argument("element " + to_string(e) + " does not belong to " +
                                u.to_string());
}
}  // namespace

Element GroupUniverse::mul(const Element& a, const Element& b) const {
  require_member(*this, a);
  require_member(*this, b);
  std::vector<std::int64_t> c(a.coords);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords[i];
  return element(std::move(c));
}

Element GroupUniverse::inv(const Element& a) const {
  require_member(*this, a);
  std::vector<std::int64_t> c(a.coords);
  for (std::int64_t& v : c) v = -v;
  return element(std::move(c));
}

std::int64_t GroupUniverse::word_norm(const Element& e) const {
  require_member(*this, e);
  std::int64_t n = 0;
  for (int i = 0; i < free_rank_; ++i) n += std::abs(e.coords[static_cast<std::size_t>(i)]);
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    const std::int64_t c = e.coords[static_cast<std::size_t>(free_rank_) + i];
    n += std::min(c, moduli_[i] - c);
  }
  return n;
}

FiniteSubset GroupUniverse::generating_set() const {
  std::vector<Element> gens{identity()};
  for (int i = 0; i < dim(); ++i) {
    std::vector<std::int64_t> plus(static_cast<std::size_t>(dim()), 0);
    plus[static_cast<std::size_t>(i)] = 1;
    std::vector<std::int64_t> minus(static_cast<std::size_t>(dim()), 0);
    minus[static_cast<std::size_t>(i)] = -1;
    gens.push_back(element(std::move(plus)));
    gens.push_back(element(std::move(minus)));
  }
  return FiniteSubset::of(std::move(gens));
}

FiniteSubset GroupUniverse::ball(int radius) const {
  if (radius < 0) throw std::invalid_argument("ball radius must be nonnegative");
  const FiniteSubset delta = generating_set();
  FiniteSubset b = FiniteSubset::of({identity()});
  for (int i = 0; i < radius; ++i) b = product(b, delta);
  return b;
}

FiniteSubset GroupUniverse::product(const FiniteSubset& a, const FiniteSubset& b) const {
  std::vector<Element> out;
  out.reserve(a.size() * b.size());
  for (const Element& x : a)
    for (const Element& y : b) out.push_back(mul(x, y));
  return FiniteSubset::of(std::move(out));
}

FiniteSubset GroupUniverse::inverse(const FiniteSubset& a) const {
  std::vector<Element> out;
  out.reserve(a.size());
  for (const Element& x : a) out.push_back(inv(x));
  return FiniteSubset::of(std::move(out));
}

FiniteSubset GroupUniverse::enumerate_all() const {
  if (!is_finite()) throw std::invalid_argument("cannot enumerate an infinite universe");
  std::vector<Element> out;
  std::vector<std::int64_t> c(moduli_.size(), 0);
  while (true) {
    out.push_back(Element{c});
    std::size_t i = moduli_.size();
    while (i > 0) {
      --i;
      if (++c[i] < moduli_[i]) break;
      c[i] = 0;
      if (i == 0) return FiniteSubset::of(std::move(out));
    }
    if (moduli_.empty()) return FiniteSubset::of(std::move(out));
  }
}

std::int64_t GroupUniverse::radius(const FiniteSubset& a) const {
  std::int64_t r = 0;
  for (const Element& e : a) r = std::max(r, word_norm(e));
  return r;
}

std::string GroupUniverse::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank_ == 1) {
    os << "Z";
    first = false;
  } else if (free_rank_ != 0) {
    os << "Z^" << free_rank_;
    first = false;
  }
  for (std::int64_t m : moduli_) {
    if (!first) os << " * ";
    os << "Z/" << m;
    first = false;
  }
  if (first) os << "Z^0";
  return os.str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, const std::string& what) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError("malformed " + what + ": '" + std::string(s) + "'");
  return v;
}

}  // namespace

GroupUniverse parse_universe(std::string_view literal) {
  int rank = 0;
  std::vector<std::int64_t> moduli;
  std::string_view rest = literal;
  bool any = false;
  while (true) {
    const std::size_t star = rest.find('*');
    std::string_view tok = trim(star == std::string_view::npos ? rest : rest.substr(0, star));
    if (tok == "Z") {
      rank += 1;
    } else if (tok.starts_with("Z^")) {
      const std::int64_t d = parse_int(tok.substr(2), "universe literal");
      if (d < 0) throw ParseError("negative free rank in universe literal");
      rank += static_cast<int>(d);
    } else if (tok.starts_with("Z/")) {
      const std::int64_t m = parse_int(tok.substr(2), "universe literal");
      if (m < 2) throw ParseError("cyclic modulus must be >= 2 in universe literal");
      moduli.push_back(m);
    } else {
      throw ParseError("malformed universe literal: '" + std::string(tok) + "'");
    }
    any = true;
    if (star == std::string_view::npos) break;
    rest = rest.substr(star + 1);
  }
  if (!any) throw ParseError("empty universe literal");
  return GroupUniverse(rank, std::move(moduli));
}

Element parse_element(const GroupUniverse& u, std::string_view literal) {
  std::string_view s = trim(literal);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw ParseError("element literal must be parenthesized: '" + std::string(literal) + "'");
  s = s.substr(1, s.size() - 2);
  std::vector<std::int64_t> coords;
  if (!trim(s).empty()) {
    while (true) {
      const std::size_t comma = s.find(',');
      coords.push_back(parse_int(trim(comma == std::string_view::npos ? s : s.substr(0, comma)),
                                 "element coordinate"));
      if (comma == std::string_view::npos) break;
      s = s.substr(comma + 1);
    }
  }
  if (coords.size() != static_cast<std::size_t>(u.dim()))
    throw ParseError("element " + std::string(literal) + " has wrong arity for " +
                     u.to_string());
  return u.element(std::move(coords));
}

}  // namespace nuca
