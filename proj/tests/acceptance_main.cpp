// Acceptance gate: runs every criterion at its pinned tolerance and prints
// one pass/fail line per criterion. Exit status reflects the conjunction.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "accept/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 7;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) seed = std::strtoull(argv[++i], nullptr, 10);
    if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) only = std::atoi(argv[++i]);
  }

  std::vector<symloc::CriterionResult> results;
  if (only > 0) {
    results.push_back(symloc::run_criterion(only, seed));
  } else {
    results = symloc::run_all_criteria(seed);
  }
  std::fputs(symloc::format_criteria_table(results).c_str(), stdout);

  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  std::printf("%s (%zu criteria)\n", all ? "ALL PASS" : "FAILURES PRESENT", results.size());
  return all ? 0 : 1;
}
