#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace symloc {

struct CriterionResult {
  int number = 0;
  std::string name;
  bool passed = false;
  double worst_residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

// Run one acceptance criterion (1..16), or all of them. `seed` feeds every
// randomized fixture so runs are reproducible.
CriterionResult run_criterion(int number, std::uint64_t seed = 7);
std::vector<CriterionResult> run_all_criteria(std::uint64_t seed = 7);

std::string format_criteria_table(const std::vector<CriterionResult>& results);

}  // namespace symloc
