#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lsurg {

// One end-to-end verification item: a named behavioural property of the
// library, checked by running the protocols and comparing against reference
// values computed independently of the code under test.
struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // numbers backing the verdict, or the first mismatch
  double seconds = 0.0;
};

// Trial-count knobs for the statistical items.  Defaults are the release
// settings; reduced() is a faster configuration for the CLI selftest that
// still exercises every code path.
struct CheckSettings {
  int64_t scaling_trials = 100000;  // per arm of the low-noise scaling sweep
  int64_t inversion_trials = 2000;  // per arm of the high-noise sweep
  int matcher_instances = 1000;     // random matcher cross-check instances
  bool fault_sweep = true;          // exhaustive single-fault CNOT sweep
  uint64_t seed = 20260823;

  static CheckSettings reduced();
};

using CheckProgress = std::function<void(const CheckResult&)>;

// Runs every check in order; on_done fires after each one completes.  A
// failing check lands in its result rather than throwing.
std::vector<CheckResult> run_self_checks(const CheckSettings& settings,
                                         const CheckProgress& on_done = {});

}  // namespace lsurg
