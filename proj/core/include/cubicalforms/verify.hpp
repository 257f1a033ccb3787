#pragma once

#include <string>
#include <vector>

namespace cubicalforms {

// One reproduction check: a pinned expansion or identity recomputed from
// scratch and compared exactly.  `detail` carries the first offending term
// (or the thrown error) when the check fails.
struct CheckResult {
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;  // 0: no explicit budget
  std::string detail;
};

// The full reproduction suite, in a fixed order.  Each entry is computed
// fresh; a throw inside a check marks that check failed instead of
// propagating.
std::vector<CheckResult> run_paper_suite();

bool all_passed(const std::vector<CheckResult>& results);
double total_seconds(const std::vector<CheckResult>& results);

// One line per check plus a total line.
std::string format_report(const std::vector<CheckResult>& results);

}  // namespace cubicalforms
