#include "nuca/common.hpp"

#include <cstdlib>

namespace nuca {

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && result > cap / base) return cap + 1;
    result *= base;
    if (result > cap) return cap + 1;
  }
  return result;
}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("NUCA_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::uint64_t>(v);
  }
  return kDefaultBudget;
}

}  // namespace nuca
