#pragma once

#include <string>
#include <vector>

namespace sympwidth {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // measured values behind the verdict
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 12;

/// Runs one acceptance criterion (1..12). Throws std::invalid_argument for
/// unknown ids; numerical exceptions inside a criterion mark it failed.
CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_criteria(const std::vector<int>& ids);

}  // namespace sympwidth
