#pragma once

#include <string>
#include <vector>

namespace ordp {

/// Outcome of one named check.
struct Verdict {
  std::string name;
  bool holds;
  std::string detail;
};

inline bool all_hold(const std::vector<Verdict>& vs) {
  for (const auto& v : vs) {
    if (!v.holds) return false;
  }
  return true;
}

inline std::string first_failure(const std::vector<Verdict>& vs) {
  for (const auto& v : vs) {
    if (!v.holds) return v.name + (v.detail.empty() ? "" : ": " + v.detail);
  }
  return {};
}

}  // namespace ordp
