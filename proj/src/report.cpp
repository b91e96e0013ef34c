#include "nuca/report.hpp"

#include <sstream>

namespace nuca {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::refuted:
      return "refuted";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return 0;
    case Verdict::refuted:
      return 1;
    case Verdict::inconclusive:
      return 2;
  }
  return 2;
}

std::string render(const PropertyReport& report) {
  std::ostringstream os;
  os << "property=" << report.property << '\n';
  os << "verdict=" << to_string(report.verdict) << '\n';
  if (!report.note.empty()) os << "note=" << report.note << '\n';
  if (report.verdict == Verdict::refuted) os << "witness=" << report.witness << '\n';
  for (const auto& [key, value] : report.details) os << key << '=' << value << '\n';
  return os.str();
}

}  // namespace nuca
