#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "lsurg/experiments.hpp"

using namespace lsurg;

TEST_CASE("wilson intervals bracket the point estimate") {
  CHECK(wilson_interval(0, 0).lo == 0.0);
  CHECK(wilson_interval(0, 0).hi == 1.0);
  Interval none = wilson_interval(0, 100);
  CHECK(none.lo == 0.0);
  CHECK(none.hi > 0.0);
  CHECK(none.hi < 0.05);
  Interval half = wilson_interval(50, 100);
  CHECK(half.lo < 0.5);
  CHECK(half.hi > 0.5);
  Interval all = wilson_interval(100, 100);
  CHECK(all.hi == 1.0);
  CHECK(all.lo > 0.95);
  // More data tightens the interval around the same rate.
  Interval wide = wilson_interval(5, 50);
  Interval tight = wilson_interval(100, 1000);
  CHECK(tight.hi - tight.lo < wide.hi - wide.lo);
}

TEST_CASE("noiseless memory never fails") {
  for (const Encoding enc : {Encoding::kStandard, Encoding::kRotated}) {
    MemoryParams prm;
    prm.encoding = enc;
    prm.d = enc == Encoding::kStandard ? 2 : 3;
    prm.trials = 40;
    prm.seed = 11;
    MemoryResult res = monte_carlo_memory(prm);
    CHECK(res.z.failures == 0);
    CHECK(res.x.failures == 0);
    CHECK(res.z.rate == 0.0);
    CHECK(res.z.detectors > 0);
    CHECK(res.x.detectors > 0);
  }
}

TEST_CASE("noisy memory is reproducible and job-split invariant") {
  MemoryParams prm;
  prm.d = 2;
  prm.noise = NoiseModel{0.03, 0.03, 0.0};
  prm.trials = 120;
  prm.seed = 77;
  prm.jobs = 1;
  MemoryResult a = monte_carlo_memory(prm);
  MemoryResult b = monte_carlo_memory(prm);
  CHECK(a.z.failures == b.z.failures);
  CHECK(a.x.failures == b.x.failures);
  prm.jobs = 3;
  MemoryResult c = monte_carlo_memory(prm);
  CHECK(a.z.failures == c.z.failures);
  CHECK(a.x.failures == c.x.failures);
  // At 3% depolarizing a distance-2 code does fail sometimes.
  CHECK(a.z.failures + a.x.failures > 0);
  CHECK(a.z.ci.hi <= 1.0);
  CHECK(a.z.ci.lo <= a.z.rate);
  CHECK(a.z.rate <= a.z.ci.hi);
}

TEST_CASE("resource table pins the published integer counts") {
  ResourceTable tab = resource_table(3);
  REQUIRE(tab.computed.size() == 4);
  for (const ResourceRow& row : tab.computed) {
    CHECK(row.total == row.data + row.syndrome);
  }
  CHECK(tab.computed[0].data == 13);
  CHECK(tab.computed[0].syndrome == 12);
  CHECK(tab.computed[0].total == 25);
  CHECK(tab.computed[1].data == 9);
  CHECK(tab.computed[1].syndrome == 4);
  CHECK(tab.computed[1].total == 13);
  CHECK(tab.computed[3].data == 33);
  CHECK(tab.computed[3].syndrome == 20);
  CHECK(tab.computed[3].total == 53);
  int published = 0;
  for (const BaselineRow& row : tab.baselines) {
    if (row.total == 143) ++published;
    if (row.total == 104) ++published;
  }
  CHECK(published == 3);
  // Formula rows evaluate at the requested distance.
  bool planar_area = false, cnot_area = false;
  for (const BaselineRow& row : tab.baselines) {
    if (row.formula == "~2d^2") planar_area = row.total == 18;
    if (row.formula == "2d(3d+2)") cnot_area = row.total == 66;
  }
  CHECK(planar_area);
  CHECK(cnot_area);
  CHECK(resource_table(2).baselines.size() == 4);
  CHECK_THROWS_AS(resource_table(1), std::invalid_argument);
}

TEST_CASE("decoded cnot truth table is exact without noise") {
  for (const Encoding enc : {Encoding::kStandard, Encoding::kRotated}) {
    CnotMcParams prm;
    prm.encoding = enc;
    prm.d = 2;
    prm.trials = 3;
    prm.seed = 5;
    CnotMcResult res = cnot_monte_carlo(prm);
    CHECK(res.cases == 12);
    CHECK(res.passed == 12);
    CHECK(res.pass_rate == 1.0);
    CHECK(res.rounds_used == 2);
  }
}

TEST_CASE("decoded cnot mostly survives weak noise") {
  CnotMcParams prm;
  prm.encoding = Encoding::kRotated;
  prm.d = 3;
  prm.noise = NoiseModel{0.004, 0.004, 0.0};
  prm.trials = 25;
  prm.seed = 9;
  prm.jobs = 2;
  CnotMcResult res = cnot_monte_carlo(prm);
  CHECK(res.cases == 100);
  CHECK(res.passed >= res.cases / 2);
  CHECK(res.rounds_used == 3);
}

TEST_CASE("smallest cnot reports the 53-qubit layout and passes its table") {
  SmallestCnotResult res = smallest_cnot_experiment(123, false);
  CHECK(res.data == 33);
  CHECK(res.syndrome == 20);
  CHECK(res.total == 53);
  CHECK(res.truth_cases == 4);
  CHECK(res.truth_passed == 4);
  CHECK(res.rounds_used == 3);
  CHECK(res.faults_tested == 0);
  CHECK(res.report.protocol == "smallest_cnot");
  CHECK(res.report.total_qubits == 53);
}

TEST_CASE("smallest cnot decodes every single data fault") {
  SmallestCnotResult res = smallest_cnot_experiment(321, true);
  // 33 sites x 7 injection slots (before each of 6 rounds, plus just before
  // readout) x 3 Pauli letters x 4 truth-table inputs.
  CHECK(res.faults_tested == 33 * 7 * 3 * 4);
  CHECK(res.faults_failed == 0);
  CHECK(res.truth_passed == 4);
}
