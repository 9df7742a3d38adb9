#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ymforms {

inline constexpr int kCriteriaCount = 12;

struct CriterionOutcome {
  int id = 0;
  std::string title;
  bool pass = false;
  std::vector<std::string> details;
};

// Runs one acceptance criterion (1-based) end to end.
CriterionOutcome run_criterion(int id);

// Prints "[PASS]/[FAIL] criterion N: title" plus detail lines.
void print_outcome(std::ostream& os, const CriterionOutcome& o);

}  // namespace ymforms
