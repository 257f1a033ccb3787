// Reproduction gate: one line per acceptance criterion, exit 0 only when
// every line passes.
#include <cstdio>
#include <string>

#include "cubicalforms/verify.hpp"

int main() {
  using namespace cubicalforms;
  std::vector<CheckResult> rs = run_paper_suite();
  bool ok = true;
  int n = 0;
  for (const auto& r : rs) {
    ++n;
    ok = ok && r.pass;
    std::string budget;
    if (r.budget_seconds > 0)
      budget = ", budget " + std::to_string(static_cast<long>(r.budget_seconds)) + " s";
    std::printf("%s  criterion %d: %s (%.2f s%s)%s%s\n", r.pass ? "PASS" : "FAIL", n,
                r.name.c_str(), r.seconds, budget.c_str(), r.pass ? "" : "  ",
                r.pass ? "" : r.detail.c_str());
  }
  double total = total_seconds(rs);
  bool final_ok = all_passed(rs) && total < 900.0;
  ok = ok && final_ok;
  std::printf("%s  criterion %d: aggregate suite (%zu checks, %.2f s, budget 900 s)\n",
              final_ok ? "PASS" : "FAIL", n + 1, rs.size(), total);
  return ok ? 0 : 1;
}
