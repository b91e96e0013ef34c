#pragma once

#include <filesystem>
#include <map>

#include "nuca/linear.hpp"

namespace nuca {

/// Parsed experiment spec: universe, alphabet, named rules, one rule
/// configuration, and command parameters. Exactly one of the general or
/// linear alphabet/rule families may appear in a file.
struct ExperimentSpec {
  std::string source;
  std::string digest;
  GroupUniverse universe;
  std::optional<Alphabet> alphabet;
  std::optional<LinearAlphabet> linear_alphabet;
  std::vector<std::pair<std::string, LocalRule>> rules;
  std::vector<std::pair<std::string, LinearLocalRule>> linear_rules;
  std::optional<RuleConfiguration> config;
  std::optional<LinearRuleConfiguration> linear_config;
  std::map<std::string, std::string> params;

  bool is_linear() const { return linear_alphabet.has_value(); }
  std::optional<std::int64_t> param_int(const std::string& key) const;
};

ExperimentSpec parse_spec_text(const std::string& text);
ExperimentSpec load_spec_file(const std::filesystem::path& path);

/// Builds the executable automaton; linear configs go through their table
/// form.
Nuca nuca_from_spec(const ExperimentSpec& spec, std::uint64_t budget = default_budget());

std::string serialize_rule_line(const std::string& name, const LocalRule& rule);
std::string serialize_linear_rule_line(const std::string& name, const LinearLocalRule& rule);
/// Canonical spec text for an automaton; parsing it back reproduces the
/// configuration bit-exactly.
std::string serialize_nuca_spec(const Nuca& n);
std::string serialize_linear_spec(const GroupUniverse& u, const LinearRuleConfiguration& s);

/// State files: `background=letter` plus `(cell)=letter` entries, separated
/// by newlines or semicolons. A missing background yields a bare pattern.
struct ParsedState {
  std::optional<int> background;
  std::vector<std::pair<Element, int>> cells;
};
ParsedState parse_state_text(const GroupUniverse& u, const std::string& text);
Configuration configuration_from_state(const GroupUniverse& u, const ParsedState& state);
Pattern pattern_from_state(const GroupUniverse& u, const ParsedState& state);
std::string to_state_text(const Configuration& x);
std::string to_state_text(const Pattern& p);

/// Schedule files: one update set per line, element literals separated by
/// spaces or commas.
std::vector<FiniteSubset> parse_schedule_text(const GroupUniverse& u, const std::string& text);

std::string fnv1a_hex(const std::string& text);

}  // namespace nuca
