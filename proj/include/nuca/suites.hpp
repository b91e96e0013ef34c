#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nuca/common.hpp"

namespace nuca {

struct SuiteItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string name;
  std::vector<SuiteItem> items;
  double seconds = 0.0;
  bool pass() const;
};

std::string render(const SuiteReport& report);

/// Desk-scale acceptance criteria, numbered 1..9. All checks are exact.
int acceptance_criteria_count();
std::string acceptance_criterion_name(int number);
SuiteReport run_acceptance_criterion(int number, std::uint64_t seed = 1,
                                     std::uint64_t budget = default_budget());

/// Named verification suites exposed by the CLI. Each one bundles acceptance
/// checks with fixture-backed smoke items.
std::vector<std::string> verify_suite_names();
std::vector<std::string> suite_fixture_files(const std::string& suite);
SuiteReport run_verify_suite(const std::string& suite, const std::string& fixtures_dir,
                             std::uint64_t seed = 1, std::uint64_t budget = default_budget());

}  // namespace nuca
