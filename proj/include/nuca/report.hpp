#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nuca/configurations.hpp"

namespace nuca {

enum class Verdict { holds, refuted, inconclusive };

std::string to_string(Verdict v);
/// Process exit code convention: holds 0, refuted 1, inconclusive 2.
int exit_code(Verdict v);

/// Outcome of a decision procedure. Refutations carry witnesses that
/// re-verify through the engine alone; details record the search bounds so
/// inconclusive verdicts are reproducible.
struct PropertyReport {
  std::string property;
  Verdict verdict = Verdict::inconclusive;
  std::string witness;  // rendered; empty when none
  std::string note;
  std::vector<std::pair<std::string, std::string>> details;

  std::optional<std::pair<Configuration, Configuration>> witness_pair;
  std::optional<Pattern> witness_pattern;
  std::optional<Configuration> witness_configuration;
};

std::string render(const PropertyReport& report);

}  // namespace nuca
