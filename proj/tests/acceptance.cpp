// Release acceptance gate: runs every self-check at full strength and
// prints one verdict line per item.  Exits nonzero if any item fails or
// blows its wall-clock budget.

#include <cstdio>

#include "lsurg/selfcheck.hpp"

namespace {

// Wall-clock budgets in seconds; 0 means unbudgeted.
double budget_for(int id) {
  switch (id) {
    case 1:
      return 5.0;  // truth tables must stay interactive
    case 10:
      return 600.0;  // the Monte Carlo sweep gets ten minutes
    default:
      return 0.0;
  }
}

}  // namespace

int main() {
  lsurg::CheckSettings settings;  // full release settings
  int failures = 0;
  lsurg::run_self_checks(settings, [&](const lsurg::CheckResult& r) {
    bool pass = r.pass;
    const double budget = budget_for(r.id);
    std::string detail = r.detail;
    if (pass && budget > 0.0 && r.seconds > budget) {
      pass = false;
      detail = "over budget: " + std::to_string(r.seconds) + " s > " +
               std::to_string(budget) + " s";
    }
    if (!pass) ++failures;
    std::printf("%s  %2d  %-30s  %8.2fs  %s\n", pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds, detail.c_str());
    std::fflush(stdout);
  });
  if (failures == 0) {
    std::printf("all 13 checks passed\n");
    return 0;
  }
  std::printf("%d check(s) failed\n", failures);
  return 1;
}
