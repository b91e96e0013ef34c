#include "nuca/configurations.hpp"

#include <algorithm>
#include <sstream>

namespace nuca {

Alphabet::Alphabet(int size, std::vector<std::string> names)
    : size_(size), names_(std::move(names)) {
  if (size_ < 1) throw std::invalid_argument("alphabet size must be >= 1");
  if (!names_.empty() && names_.size() != static_cast<std::size_t>(size_))
    throw std::invalid_argument("alphabet names must match the alphabet size");
}

Pattern Pattern::of(GroupUniverse u, std::vector<std::pair<Element, int>> cells) {
  std::sort(cells.begin(), cells.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Element> support;
  std::vector<int> values;
  support.reserve(cells.size());
  values.reserve(cells.size());
  for (auto& [e, v] : cells) {
    if (!u.contains(e))
      throw std::invalid_argument("pattern cell " + to_string(e) + " is not in " +
                                  u.to_string());
    if (v < 0) throw std::invalid_argument("letters must be nonnegative");
    if (!support.empty() && support.back() == e)
      throw std::invalid_argument("duplicate pattern cell " + to_string(e));
    support.push_back(e);
    values.push_back(v);
  }
  return Pattern(std::move(u), FiniteSubset::of(std::move(support)), std::move(values));
}

Pattern Pattern::empty(GroupUniverse u) { return Pattern(std::move(u), {}, {}); }

Pattern Pattern::constant(GroupUniverse u, const FiniteSubset& support, int letter) {
  std::vector<std::pair<Element, int>> cells;
  cells.reserve(support.size());
  for (const Element& e : support) cells.emplace_back(e, letter);
  return of(std::move(u), std::move(cells));
}

Pattern Pattern::from_code(GroupUniverse u, const FiniteSubset& support, int q,
                           std::uint64_t code) {
  const std::size_t n = support.size();
  std::vector<int> values(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    values[i] = static_cast<int>(code % static_cast<std::uint64_t>(q));
    code /= static_cast<std::uint64_t>(q);
  }
  return Pattern(std::move(u), support, std::move(values));
}

std::uint64_t Pattern::code(int q) const {
  std::uint64_t c = 0;
  for (int v : values_) {
    if (v >= q) throw std::invalid_argument("pattern letter exceeds alphabet size");
    c = c * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(v);
  }
  return c;
}

int Pattern::at(const Element& e) const {
  const auto idx = support_.index_of(e);
  if (!idx) throw std::out_of_range("pattern has no value at " + to_string(e));
  return values_[*idx];
}

std::optional<int> Pattern::find(const Element& e) const {
  const auto idx = support_.index_of(e);
  if (!idx) return std::nullopt;
  return values_[*idx];
}

Pattern Pattern::shifted(const Element& g) const {
  std::vector<std::pair<Element, int>> cells;
  cells.reserve(support_.size());
  const auto& elems = support_.elements();
  for (std::size_t i = 0; i < elems.size(); ++i)
    cells.emplace_back(u_.mul(g, elems[i]), values_[i]);
  return of(u_, std::move(cells));
}

Pattern Pattern::restricted(const FiniteSubset& cells) const {
  const FiniteSubset missing = set_difference(cells, support_);
  if (!missing.empty()) {
    std::ostringstream os;
    os << "pattern does not cover cells:";
    for (const Element& e : missing) os << ' ' << to_string(e);
    throw std::invalid_argument(os.str());
  }
  std::vector<std::pair<Element, int>> out;
  out.reserve(cells.size());
  for (const Element& e : cells) out.emplace_back(e, at(e));
  return of(u_, std::move(out));
}

Configuration::Configuration(GroupUniverse u, int background, Pattern exceptions)
    : u_(std::move(u)), background_(background), exceptions_(Pattern::empty(u_)) {
  if (background_ < 0) throw std::invalid_argument("letters must be nonnegative");
  if (exceptions.universe() != u_)
    throw std::invalid_argument("exception pattern universe mismatch");
  std::vector<std::pair<Element, int>> kept;
  const auto& elems = exceptions.support().elements();
  for (std::size_t i = 0; i < elems.size(); ++i)
    if (exceptions.values()[i] != background_)
      kept.emplace_back(elems[i], exceptions.values()[i]);
  exceptions_ = Pattern::of(u_, std::move(kept));
}

Configuration Configuration::uniform(GroupUniverse u, int background) {
  GroupUniverse copy = u;
  return Configuration(std::move(copy), background, Pattern::empty(std::move(u)));
}

int Configuration::at(const Element& e) const {
  if (!u_.contains(e))
    throw std::invalid_argument("cell " + to_string(e) + " is not in " + u_.to_string());
  const auto v = exceptions_.find(e);
  return v ? *v : background_;
}

Configuration Configuration::shifted(const Element& g) const {
  return Configuration(u_, background_, exceptions_.shifted(g));
}

Pattern Configuration::restrict_to(const FiniteSubset& cells) const {
  std::vector<std::pair<Element, int>> out;
  out.reserve(cells.size());
  for (const Element& e : cells) out.emplace_back(e, at(e));
  return Pattern::of(u_, std::move(out));
}

Configuration Configuration::overwritten(const Pattern& patch) const {
  if (patch.universe() != u_) throw std::invalid_argument("patch universe mismatch");
  std::vector<std::pair<Element, int>> cells;
  const auto& old = exceptions_.support().elements();
  for (std::size_t i = 0; i < old.size(); ++i)
    if (!patch.support().contains(old[i]))
      cells.emplace_back(old[i], exceptions_.values()[i]);
  const auto& pe = patch.support().elements();
  for (std::size_t i = 0; i < pe.size(); ++i)
    cells.emplace_back(pe[i], patch.values()[i]);
  return Configuration(u_, background_, Pattern::of(u_, std::move(cells)));
}

AsymptoticDiff asymptotic_diff(const Configuration& x, const Configuration& y) {
  if (x.universe() != y.universe())
    throw std::invalid_argument("configurations live over different universes");
  const GroupUniverse& u = x.universe();
  if (x.background() != y.background()) {
    if (!u.is_finite()) return {false, {}};
    std::vector<Element> diff;
    for (const Element& e : u.enumerate_all())
      if (x.at(e) != y.at(e)) diff.push_back(e);
    return {true, FiniteSubset::of(std::move(diff))};
  }
  std::vector<Element> diff;
  for (const Element& e : set_union(x.exceptions().support(), y.exceptions().support()))
    if (x.at(e) != y.at(e)) diff.push_back(e);
  return {true, FiniteSubset::of(std::move(diff))};
}

std::string to_literal(const Pattern& p) {
  std::ostringstream os;
  const auto& elems = p.support().elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (i) os << ';';
    os << to_string(elems[i]) << '=' << p.values()[i];
  }
  return os.str();
}

std::string to_literal(const Configuration& x) {
  std::ostringstream os;
  os << "background=" << x.background();
  const std::string exc = to_literal(x.exceptions());
  if (!exc.empty()) os << ';' << exc;
  return os.str();
}

}  // namespace nuca
