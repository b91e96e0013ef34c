#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nuca {

/// Raised on malformed literals and spec files. `line` is 1-based and 0 when
/// the input was a bare literal rather than a file.
struct ParseError : std::runtime_error {
  int line;
  explicit ParseError(const std::string& msg, int line_number = 0)
      : std::runtime_error(line_number > 0
                               ? "line " + std::to_string(line_number) + ": " + msg
                               : msg),
        line(line_number) {}
};

/// base^exp, clamped: returns cap + 1 as soon as the power exceeds cap.
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap);

/// Default number of evaluated patterns a single decision procedure may spend.
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 20;

/// NUCA_BUDGET environment override, falling back to kDefaultBudget.
std::uint64_t default_budget();

}  // namespace nuca
