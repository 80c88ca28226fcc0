#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lsurg/decoder.hpp"
#include "lsurg/protocols.hpp"

namespace lsurg {

// Wilson score interval for k hits out of n Bernoulli trials; z defaults to
// the two-sided 95% normal quantile.  Degenerate n = 0 gives [0, 1].
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};
Interval wilson_interval(int64_t k, int64_t n, double z = 1.959963984540054);

// ---------------------------------------------------------------------------
// Decoded-memory Monte Carlo: prepare a logical eigenstate, run noisy
// stabilization rounds, read the patch out transversally, decode, and count
// logical flips.  Both bases are run as independent arms.  Trial t draws its
// generator from (seed, arm, t) alone, so results are byte-stable under any
// `jobs` split.
// ---------------------------------------------------------------------------

struct MemoryParams {
  Encoding encoding = Encoding::kStandard;
  int d = 3;
  int rounds = 0;  // stabilization rounds; 0 means d
  NoiseModel noise;
  MeasureMode mode = MeasureMode::kDirect;
  int64_t trials = 1000;
  uint64_t seed = 1;
  int jobs = 1;
};

struct MemoryArm {
  char basis = 'Z';
  int64_t trials = 0;
  int64_t failures = 0;
  double rate = 0.0;
  Interval ci;
  int detectors = 0;  // size of the detector model backing the arm
};

struct MemoryResult {
  MemoryParams params;
  MemoryArm z;
  MemoryArm x;
};

MemoryResult monte_carlo_memory(const MemoryParams& prm);

// One basis only (the big scaling sweeps need just one arm).
MemoryArm monte_carlo_memory_arm(const MemoryParams& prm, char basis);

// The detector model that decodes one arm of monte_carlo_memory, rebuilt
// from the same fault-free reference schedule (for graph dumps).
DetectorModel memory_detector_model(const MemoryParams& prm, char basis);

// ---------------------------------------------------------------------------
// Resource accounting.  Computed rows count qubits off the layouts actually
// built by the simulator; baseline rows quote published defect-lattice
// totals and closed-form area estimates for comparison.
// ---------------------------------------------------------------------------

struct ResourceRow {
  std::string configuration;
  int d = 0;
  int64_t data = 0;
  int64_t syndrome = 0;
  int64_t total = 0;
  std::string formula;  // closed-form note, empty if none applies
};

struct BaselineRow {
  std::string configuration;
  std::string formula;
  int64_t total = 0;
};

struct ResourceTable {
  int d = 0;
  std::vector<ResourceRow> computed;
  std::vector<BaselineRow> baselines;
};

ResourceTable resource_table(int d);

// ---------------------------------------------------------------------------
// Decoded truth-table runs of the fused surgery CNOT with transversal
// readout of both logical Z values.
// ---------------------------------------------------------------------------

struct CnotMcParams {
  Encoding encoding = Encoding::kStandard;
  int d = 3;
  NoiseModel noise;
  MeasureMode mode = MeasureMode::kDirect;
  int64_t trials = 100;
  uint64_t seed = 1;
  int jobs = 1;
};

struct CnotMcResult {
  CnotMcParams params;
  int64_t cases = 0;   // 4 inputs per trial
  int64_t passed = 0;  // decoded outputs equal to (c, c xor t)
  double pass_rate = 0.0;
  Interval ci;
  int rounds_used = 0;
};

CnotMcResult cnot_monte_carlo(const CnotMcParams& prm);

// The 53-qubit CNOT: rotated d=3 layout, fused schedule.  Reports the layout
// counts, the decoded truth table, and optionally an exhaustive single-fault
// sweep: every data site x every round (plus just before readout) x every
// Pauli letter, over the whole truth table.  A distance-3 layout must decode
// every one of those faults, so faults_failed is expected to be zero.
struct SmallestCnotResult {
  int64_t data = 0;
  int64_t syndrome = 0;
  int64_t total = 0;
  int truth_cases = 0;
  int truth_passed = 0;
  int64_t faults_tested = 0;
  int64_t faults_failed = 0;
  int rounds_used = 0;
  ProtocolReport report;
};

SmallestCnotResult smallest_cnot_experiment(uint64_t seed, bool sweep_faults);

// The detector model that decodes the fused-CNOT truth-table runs, rebuilt
// from the same fault-free reference schedule (for graph dumps).
DetectorModel cnot_detector_model(Encoding encoding, int d);

}  // namespace lsurg
