#include "nuca/spec_format.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace nuca {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

// Splits "(0),(1,2)" on commas outside parentheses.
std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(cur);
  return out;
}

std::int64_t parse_i64(const std::string& s, int line, const std::string& what) {
  try {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("malformed " + what + ": '" + s + "'", line);
  }
}

std::vector<Element> parse_memory_list(const GroupUniverse& u, const std::string& text,
                                       int line) {
  const std::string body = trim(text);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']')
    throw ParseError("memory list must be bracketed: '" + text + "'", line);
  std::vector<Element> cells;
  for (const std::string& tok : split_top_level(body.substr(1, body.size() - 2), ',')) {
    if (trim(tok).empty()) continue;
    try {
      cells.push_back(parse_element(u, trim(tok)));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line);
    }
  }
  return cells;
}

FpMatrix parse_matrix(int p, int n, const std::string& text, int line) {
  const std::string body = trim(text);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']')
    throw ParseError("matrix literal must be bracketed: '" + text + "'", line);
  FpMatrix m(p, n, n);
  const std::vector<std::string> rows = split_top_level(body.substr(1, body.size() - 2), ',');
  if (rows.size() != static_cast<std::size_t>(n))
    throw ParseError("matrix literal must have n rows", line);
  for (int r = 0; r < n; ++r) {
    const std::string row = trim(rows[static_cast<std::size_t>(r)]);
    if (row.size() < 2 || row.front() != '[' || row.back() != ']')
      throw ParseError("matrix row must be bracketed: '" + row + "'", line);
    const std::vector<std::string> entries =
        split_top_level(row.substr(1, row.size() - 2), ',');
    if (entries.size() != static_cast<std::size_t>(n))
      throw ParseError("matrix row must have n entries", line);
    for (int c = 0; c < n; ++c)
      m.set(r, c, static_cast<int>(parse_i64(trim(entries[static_cast<std::size_t>(c)]), line,
                                             "matrix entry")));
  }
  return m;
}

std::string key_of(const std::string& token) {
  const std::size_t eq = token.find('=');
  return eq == std::string::npos ? token : token.substr(0, eq);
}

std::string value_of(const std::string& token, int line) {
  const std::size_t eq = token.find('=');
  if (eq == std::string::npos)
    throw ParseError("expected key=value, got '" + token + "'", line);
  return token.substr(eq + 1);
}

struct ConfigLines {
  std::string background;
  std::vector<std::pair<Element, std::string>> exceptions;
  std::optional<std::int64_t> sparse_base;
  std::string sparse_rule;
  int first_line = 0;
};

const std::vector<std::string> kKnownParams = {"window",      "rmax",  "budget",
                                               "seed",        "steps", "rdefect",
                                               "rcorrection", "property"};

}  // namespace

std::optional<std::int64_t> ExperimentSpec::param_int(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  return parse_i64(it->second, 0, "parameter " + key);
}

ExperimentSpec parse_spec_text(const std::string& text) {
  ExperimentSpec spec;
  spec.source = text;
  spec.digest = fnv1a_hex(text);
  bool have_universe = false;
  ConfigLines cfg;

  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    const std::size_t sp = s.find(' ');
    const std::string head = s.substr(0, sp);
    const std::string rest = sp == std::string::npos ? "" : trim(s.substr(sp + 1));

    if (head == "universe") {
      try {
        spec.universe = parse_universe(rest);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), line);
      }
      have_universe = true;
    } else if (head == "alphabet") {
      if (spec.linear_alphabet) throw ParseError("alphabet conflicts with linalphabet", line);
      spec.alphabet = Alphabet(static_cast<int>(parse_i64(rest, line, "alphabet size")));
    } else if (head == "linalphabet") {
      if (spec.alphabet) throw ParseError("linalphabet conflicts with alphabet", line);
      std::optional<int> p, n;
      for (const std::string& tok : split_ws(rest)) {
        if (key_of(tok) == "p") p = static_cast<int>(parse_i64(value_of(tok, line), line, "p"));
        else if (key_of(tok) == "n") n = static_cast<int>(parse_i64(value_of(tok, line), line, "n"));
        else throw ParseError("unknown linalphabet field '" + tok + "'", line);
      }
      if (!p || !n) throw ParseError("linalphabet needs p= and n=", line);
      spec.linear_alphabet = LinearAlphabet(*p, *n);
    } else if (head == "rule") {
      if (!have_universe) throw ParseError("rule before universe", line);
      if (!spec.alphabet) throw ParseError("rule before alphabet", line);
      const std::vector<std::string> toks = split_ws(rest);
      if (toks.size() != 3) throw ParseError("rule needs a name, memory= and table=", line);
      const std::string& name = toks[0];
      if (key_of(toks[1]) != "memory" || key_of(toks[2]) != "table")
        throw ParseError("rule needs memory= then table=", line);
      Memory memory(spec.universe, parse_memory_list(spec.universe, value_of(toks[1], line), line));
      const std::string digits = value_of(toks[2], line);
      std::vector<int> table;
      table.reserve(digits.size());
      for (char c : digits) {
        if (c < '0' || c > '9') throw ParseError("table digits must be 0-9", line);
        table.push_back(c - '0');
      }
      try {
        spec.rules.emplace_back(name, LocalRule(*spec.alphabet, std::move(memory), std::move(table)));
      } catch (const std::exception& e) {
        throw ParseError(std::string("rule '") + name + "': " + e.what(), line);
      }
    } else if (head == "linrule") {
      if (!have_universe) throw ParseError("linrule before universe", line);
      if (!spec.linear_alphabet) throw ParseError("linrule before linalphabet", line);
      const std::vector<std::string> toks = split_ws(rest);
      if (toks.size() < 4) throw ParseError("linrule needs name p= n= memory= m(..)=", line);
      const std::string& name = toks[0];
      std::optional<Memory> memory;
      std::vector<std::pair<Element, FpMatrix>> entries;
      const int p = spec.linear_alphabet->p();
      const int n = spec.linear_alphabet->n();
      for (std::size_t i = 1; i < toks.size(); ++i) {
        const std::string key = key_of(toks[i]);
        if (key == "p") {
          if (parse_i64(value_of(toks[i], line), line, "p") != p)
            throw ParseError("linrule field order disagrees with linalphabet p", line);
        } else if (key == "n") {
          if (parse_i64(value_of(toks[i], line), line, "n") != n)
            throw ParseError("linrule dimension disagrees with linalphabet n", line);
        } else if (key == "memory") {
          memory = Memory(spec.universe,
                          parse_memory_list(spec.universe, value_of(toks[i], line), line));
        } else if (key.starts_with("m(") && key.ends_with(")")) {
          try {
            entries.emplace_back(parse_element(spec.universe, key.substr(1)),
                                 parse_matrix(p, n, value_of(toks[i], line), line));
          } catch (const ParseError& e) {
            throw ParseError(e.what(), line);
          }
        } else {
          throw ParseError("unknown linrule field '" + toks[i] + "'", line);
        }
      }
      if (!memory) throw ParseError("linrule needs memory=", line);
      std::vector<FpMatrix> mats(memory->size(), FpMatrix(p, n, n));
      for (auto& [cell, mat] : entries) {
        const auto idx = memory->index_of(cell);
        if (!idx) throw ParseError("matrix cell " + to_string(cell) + " is not in the memory", line);
        mats[*idx] = std::move(mat);
      }
      try {
        spec.linear_rules.emplace_back(
            name, LinearLocalRule(*spec.linear_alphabet, std::move(*memory), std::move(mats)));
      } catch (const std::exception& e) {
        throw ParseError(std::string("linrule '") + name + "': " + e.what(), line);
      }
    } else if (head == "config") {
      if (cfg.first_line == 0) cfg.first_line = line;
      const std::vector<std::string> toks = split_ws(rest);
      if (toks.empty()) throw ParseError("empty config directive", line);
      if (key_of(toks[0]) == "background" && toks.size() == 1) {
        cfg.background = value_of(toks[0], line);
      } else if (toks[0] == "exception") {
        // config exception (cell) = name
        std::string tail;
        for (std::size_t i = 1; i < toks.size(); ++i) tail += toks[i];
        const std::size_t eq = tail.rfind('=');
        if (eq == std::string::npos) throw ParseError("exception needs (cell) = name", line);
        try {
          cfg.exceptions.emplace_back(parse_element(spec.universe, trim(tail.substr(0, eq))),
                                      trim(tail.substr(eq + 1)));
        } catch (const ParseError& e) {
          throw ParseError(e.what(), line);
        }
      } else if (toks[0] == "sparse") {
        for (std::size_t i = 1; i < toks.size(); ++i) {
          if (key_of(toks[i]) == "base")
            cfg.sparse_base = parse_i64(value_of(toks[i], line), line, "sparse base");
          else if (key_of(toks[i]) == "rule")
            cfg.sparse_rule = value_of(toks[i], line);
          else
            throw ParseError("unknown sparse field '" + toks[i] + "'", line);
        }
        if (!cfg.sparse_base || cfg.sparse_rule.empty())
          throw ParseError("sparse needs base= and rule=", line);
      } else {
        throw ParseError("unknown config directive '" + rest + "'", line);
      }
    } else if (std::find(kKnownParams.begin(), kKnownParams.end(), head) != kKnownParams.end()) {
      if (rest.empty()) throw ParseError("parameter '" + head + "' needs a value", line);
      spec.params[head] = rest;
    } else {
      throw ParseError("unknown directive '" + head + "'", line);
    }
  }

  if (!have_universe && (!spec.rules.empty() || !spec.linear_rules.empty()))
    throw ParseError("spec declares rules without a universe");

  if (cfg.first_line != 0) {
    if (cfg.background.empty())
      throw ParseError("config needs a background rule", cfg.first_line);
    if (spec.alphabet) {
      auto find_rule = [&](const std::string& name) -> const LocalRule& {
        for (const auto& [rule_name, rule] : spec.rules)
          if (rule_name == name) return rule;
        throw ParseError("unknown rule '" + name + "'", cfg.first_line);
      };
      // Normalize every referenced rule onto the union memory.
      FiniteSubset cells = find_rule(cfg.background).memory().as_set();
      for (const auto& [cell, name] : cfg.exceptions)
        cells = set_union(cells, find_rule(name).memory().as_set());
      if (cfg.sparse_base) cells = set_union(cells, find_rule(cfg.sparse_rule).memory().as_set());
      const Memory memory = Memory::from_set(spec.universe, cells);
      const LocalRule background = find_rule(cfg.background).enlarged(memory);
      std::vector<std::pair<Element, LocalRule>> exceptions;
      for (const auto& [cell, name] : cfg.exceptions)
        exceptions.emplace_back(cell, find_rule(name).enlarged(memory));
      try {
        if (cfg.sparse_base)
          spec.config = RuleConfiguration::sparse_singular(
              background, *cfg.sparse_base, find_rule(cfg.sparse_rule).enlarged(memory),
              std::move(exceptions));
        else
          spec.config =
              RuleConfiguration::asymptotically_constant(background, std::move(exceptions));
      } catch (const std::exception& e) {
        throw ParseError(e.what(), cfg.first_line);
      }
      if (spec.config->kind() == RuleConfiguration::Kind::asymptotically_constant &&
          spec.config->exceptions().empty())
        spec.config = RuleConfiguration::constant(spec.config->background());
    } else if (spec.linear_alphabet) {
      auto find_rule = [&](const std::string& name) -> const LinearLocalRule& {
        for (const auto& [rule_name, rule] : spec.linear_rules)
          if (rule_name == name) return rule;
        throw ParseError("unknown linrule '" + name + "'", cfg.first_line);
      };
      FiniteSubset cells = find_rule(cfg.background).memory().as_set();
      for (const auto& [cell, name] : cfg.exceptions)
        cells = set_union(cells, find_rule(name).memory().as_set());
      if (cfg.sparse_base) cells = set_union(cells, find_rule(cfg.sparse_rule).memory().as_set());
      const Memory memory = Memory::from_set(spec.universe, cells);
      const LinearLocalRule background = find_rule(cfg.background).enlarged(memory);
      std::vector<std::pair<Element, LinearLocalRule>> exceptions;
      for (const auto& [cell, name] : cfg.exceptions)
        exceptions.emplace_back(cell, find_rule(name).enlarged(memory));
      try {
        if (cfg.sparse_base)
          spec.linear_config = LinearRuleConfiguration::sparse_singular(
              background, *cfg.sparse_base, find_rule(cfg.sparse_rule).enlarged(memory),
              std::move(exceptions));
        else
          spec.linear_config =
              LinearRuleConfiguration::asymptotically_constant(background, std::move(exceptions));
      } catch (const std::exception& e) {
        throw ParseError(e.what(), cfg.first_line);
      }
      if (spec.linear_config->kind() == LinearRuleConfiguration::Kind::asymptotically_constant &&
          spec.linear_config->exceptions().empty())
        spec.linear_config = LinearRuleConfiguration::constant(spec.linear_config->background());
    } else {
      throw ParseError("config needs an alphabet or linalphabet", cfg.first_line);
    }
  }
  return spec;
}

ExperimentSpec load_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_spec_text(buffer.str());
}

Nuca nuca_from_spec(const ExperimentSpec& spec, std::uint64_t budget) {
  if (spec.config) return Nuca(*spec.config);
  if (spec.linear_config) return to_nuca(*spec.linear_config, budget);
  throw std::runtime_error("spec has no rule configuration");
}

std::string serialize_rule_line(const std::string& name, const LocalRule& rule) {
  if (rule.alphabet().size() > 10)
    throw std::invalid_argument("table serialization supports alphabets of size <= 10");
  std::ostringstream os;
  os << "rule " << name << " memory=[";
  const auto& cells = rule.memory().cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << to_string(cells[i]);
  }
  os << "] table=";
  for (int v : rule.table()) os << v;
  return os.str();
}

std::string serialize_linear_rule_line(const std::string& name, const LinearLocalRule& rule) {
  std::ostringstream os;
  os << "linrule " << name << " p=" << rule.alphabet().p() << " n=" << rule.alphabet().n()
     << " memory=[";
  const auto& cells = rule.memory().cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << to_string(cells[i]);
  }
  os << ']';
  for (std::size_t i = 0; i < cells.size(); ++i) {
    os << " m" << to_string(cells[i]) << "=[";
    const FpMatrix& m = rule.matrices()[i];
    for (int r = 0; r < m.rows(); ++r) {
      if (r) os << ',';
      os << '[';
      for (int c = 0; c < m.cols(); ++c) {
        if (c) os << ',';
        os << m.at(r, c);
      }
      os << ']';
    }
    os << ']';
  }
  return os.str();
}

namespace {

template <class Config, class SerializeRule>
std::string serialize_config_spec(const GroupUniverse& u, const std::string& alphabet_line,
                                  const Config& config, SerializeRule serialize_rule) {
  std::ostringstream os;
  os << "universe " << u.to_string() << '\n' << alphabet_line << '\n';
  os << serialize_rule("bg", config.background()) << '\n';
  if (config.kind() == Config::Kind::sparse_singular)
    os << serialize_rule("sing", config.sparse_rule()) << '\n';
  for (std::size_t i = 0; i < config.exceptions().size(); ++i)
    os << serialize_rule("e" + std::to_string(i), config.exceptions()[i].second) << '\n';
  os << "config background=bg\n";
  if (config.kind() == Config::Kind::sparse_singular)
    os << "config sparse base=" << config.sparse_base() << " rule=sing\n";
  for (std::size_t i = 0; i < config.exceptions().size(); ++i)
    os << "config exception " << to_string(config.exceptions()[i].first) << " = e" << i << '\n';
  return os.str();
}

}  // namespace

std::string serialize_nuca_spec(const Nuca& n) {
  return serialize_config_spec(
      n.universe(), "alphabet " + std::to_string(n.alphabet().size()), n.config(),
      [](const std::string& name, const LocalRule& rule) {
        return serialize_rule_line(name, rule);
      });
}

std::string serialize_linear_spec(const GroupUniverse& u, const LinearRuleConfiguration& s) {
  const LinearAlphabet& a = s.background().alphabet();
  return serialize_config_spec(
      u, "linalphabet p=" + std::to_string(a.p()) + " n=" + std::to_string(a.n()), s,
      [](const std::string& name, const LinearLocalRule& rule) {
        return serialize_linear_rule_line(name, rule);
      });
}

ParsedState parse_state_text(const GroupUniverse& u, const std::string& text) {
  ParsedState state;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    for (const std::string& entry : split_top_level(raw, ';')) {
      const std::string s = trim(entry);
      if (s.empty()) continue;
      const std::size_t eq = s.rfind('=');
      if (eq == std::string::npos)
        throw ParseError("state entry needs '=': '" + s + "'", line);
      const std::string key = trim(s.substr(0, eq));
      const int value = static_cast<int>(parse_i64(trim(s.substr(eq + 1)), line, "letter"));
      if (key == "background") {
        if (state.background) throw ParseError("duplicate background entry", line);
        state.background = value;
      } else {
        try {
          state.cells.emplace_back(parse_element(u, key), value);
        } catch (const ParseError& e) {
          throw ParseError(e.what(), line);
        }
      }
    }
  }
  return state;
}

Configuration configuration_from_state(const GroupUniverse& u, const ParsedState& state) {
  if (!state.background)
    throw std::invalid_argument("state has no background; it only describes a pattern");
  return Configuration(u, *state.background, Pattern::of(u, state.cells));
}

Pattern pattern_from_state(const GroupUniverse& u, const ParsedState& state) {
  return Pattern::of(u, state.cells);
}

std::string to_state_text(const Configuration& x) {
  std::ostringstream os;
  os << "background=" << x.background() << '\n';
  os << to_state_text(x.exceptions());
  return os.str();
}

std::string to_state_text(const Pattern& p) {
  std::ostringstream os;
  const auto& elems = p.support().elements();
  for (std::size_t i = 0; i < elems.size(); ++i)
    os << to_string(elems[i]) << '=' << p.values()[i] << '\n';
  return os.str();
}

std::vector<FiniteSubset> parse_schedule_text(const GroupUniverse& u, const std::string& text) {
  std::vector<FiniteSubset> schedule;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string s = trim(raw);
    if (s.empty()) continue;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::vector<Element> cells;
    for (const std::string& tok : split_ws(s)) {
      try {
        cells.push_back(parse_element(u, tok));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), line);
      }
    }
    schedule.push_back(FiniteSubset::of(std::move(cells)));
  }
  return schedule;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  for (int i = 15; i >= 0; --i) os << ((h >> (i * 4)) & 0xF);
  return os.str();
}

}  // namespace nuca
