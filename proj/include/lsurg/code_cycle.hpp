#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lsurg/lattice.hpp"
#include "lsurg/layout.hpp"
#include "lsurg/pauli.hpp"
#include "lsurg/rng.hpp"
#include "lsurg/symplectic.hpp"
#include "lsurg/tableau.hpp"

namespace lsurg {

// Phenomenological noise knobs.  p_data: per data qubit per round, a uniform
// X/Y/Z before the round's measurements.  p_meas: per check per round, a
// classical flip of the recorded outcome.  p_gate: per two-qubit gate in
// circuit extraction, a uniform nontrivial two-qubit Pauli afterwards.
struct NoiseModel {
  double p_data = 0.0;
  double p_meas = 0.0;
  double p_gate = 0.0;
  bool enabled() const { return p_data > 0 || p_meas > 0 || p_gate > 0; }
};

// kDirect measures each check operator on the data qubits in one shot.
// kCircuit runs the standard ancilla circuit (reset, CNOT fan, measure),
// which is where p_gate applies.  The two agree exactly when p_gate == 0.
enum class MeasureMode { kDirect, kCircuit };

// ---------------------------------------------------------------------------
// Classical records and dependency tracking.
//
// Every classical bit a run produces -- each check outcome, each mid-run
// single-qubit measurement, each final transversal readout bit -- gets a
// record id.  Detectors are XOR sets over record ids; decoder corrections
// are record-flip sets.  Fresh checks (those whose first outcome defines
// their reference) get a pseudo-record: flipping it means reinterpreting
// the reference, which is how the decoder repairs joint-measurement signs.
// ---------------------------------------------------------------------------

enum class RecordKind { kSlotOutcome, kMeasureOut, kFinalQubit, kReference };

struct Record {
  RecordKind kind;
  int value = 0;
};

using DepSet = std::set<int>;

void dep_xor(DepSet& a, const DepSet& b);

// A classical bit with the set of records whose reinterpretation flips it.
struct SignedValue {
  int value = 0;
  DepSet deps;

  SignedValue& operator^=(const SignedValue& o) {
    value ^= o.value;
    dep_xor(deps, o.deps);
    return *this;
  }
  friend SignedValue operator^(SignedValue a, const SignedValue& b) {
    a ^= b;
    return a;
  }
};

// A generator for sign resolution: a Pauli operator together with the
// tracked classical bit giving its sign ((-1)^value.value).
struct SignedOp {
  PauliString op;
  SignedValue value;
  // Record id backing this generator in birth relations: the last outcome
  // record of a check, or a measure-out record.  -1 for constants (inits).
  int relation_record = -1;
};

// Resolve the expected-frame sign of `target`'s letters over a pool of
// signed generators.  Returns the sign bit with merged dependency sets, or
// nullopt when the letters are not in the pool's span.  When `used_indices`
// is given it receives the pool indices of the generators in the product.
std::optional<SignedValue> resolve_pool(const PauliString& target,
                                        const std::vector<SignedOp>& pool,
                                        std::vector<int>* used_indices = nullptr);

// ---------------------------------------------------------------------------
// Slot instances: one live check over a fixed support.  When surgery changes
// the check set, continuing checks become new instances linked to their
// predecessors through a birth relation (used by the decoder as a detector).
// ---------------------------------------------------------------------------

struct SlotInstance {
  int id = -1;
  CheckType type = CheckType::kX;
  Coord key{0, 0};
  std::vector<Coord> data;        // fixed support, sorted
  std::vector<int> data_qubits;   // layout qubit ids, same order
  PauliString op;                 // the measured operator
  int ancilla = -1;               // circuit-mode ancilla qubit
  int born = -1;                  // round of first measurement
  int died = -1;                  // round at which it was retired, -1 if live
  bool fresh = false;             // first outcome defines the reference
  int reference_record = -1;      // kReference pseudo-record when fresh
  SignedValue expected;           // reference outcome in the expected frame
  // Birth relation: first outcome should XOR to relation_constant with
  // these records (predecessor last outcomes and measure-out records).
  std::vector<int> relation_records;
  int relation_constant = 0;
  std::vector<int> outcome_records;  // one kSlotOutcome record per round
  int first_round() const { return born; }
  int last_record() const { return outcome_records.back(); }
};

struct MeasureOutEvent {
  Coord site{0, 0};
  int qubit = -1;
  char basis = 'Z';
  int record = -1;
  int round_after = 0;  // index of the next round at the time of the event
};

struct InitEvent {
  Coord site{0, 0};
  int qubit = -1;
  char basis = 'Z';
  int round_after = 0;
};

struct FinalQubitReadout {
  Coord site{0, 0};
  int qubit = -1;
  char basis = 'Z';
  int record = -1;
};

// One contiguous stretch of rounds sharing a fixed set of active patches.
struct ActivationSegment {
  int first_round = 0;
  std::vector<LatticeSpec> specs;
  std::vector<Coord> data_coords;  // union of active data, sorted
  std::vector<int> data_qubits;
  std::vector<int> slot_ids;       // instances measured during this segment
};

// ---------------------------------------------------------------------------
// SurgeryContext: the physical register (tableau over a fixed layout hull)
// plus the full classical history of a run.
// ---------------------------------------------------------------------------

class SurgeryContext {
 public:
  SurgeryContext(Encoding encoding, std::vector<Coord> hull);

  const Layout& layout() const { return layout_; }
  Tableau& tableau() { return tableau_; }
  const Tableau& tableau() const { return tableau_; }

  // --- transition operations (noiseless, between rounds) -------------------
  // Reset a data qubit to |0> (basis 'Z') or |+> ('X').
  void init_data(Coord site, char basis, Rng& rng);
  // Measure a data qubit out in the given basis; allocates a record.
  SignedValue measure_out(Coord site, char basis, Rng& rng);
  // Register an extra generator for the next activation's birth relations
  // (e.g. entangled-prep constraints that are not single-qubit inits).
  void add_activation_generator(const PauliString& op, SignedValue value);

  // Replace the active patch set.  Computes each new check's birth relation
  // from the previous checks and the transition events since the last
  // activation; unresolvable checks become fresh references.
  void activate(std::vector<LatticeSpec> specs);

  // --- error-correction rounds --------------------------------------------
  // Runs one round over all active checks; returns the round index.
  int run_round(const NoiseModel& noise, MeasureMode mode, Rng& rng);
  void run_rounds(int k, const NoiseModel& noise, MeasureMode mode, Rng& rng);
  int rounds_run() const { return rounds_; }

  // Sign resolution over the currently active checks' expected values.
  std::vector<SignedOp> expected_pool() const;
  std::optional<SignedValue> resolve_chain(const PauliString& target) const;

  // Apply a Pauli fault directly to the register (fault-injection hooks).
  void apply_pauli(const PauliString& p);

  // Apply a physical Hadamard to each listed data qubit and conjugate every
  // stored operator (live and retired check instances, pending transition
  // generators) to match, so later activations and resolutions stay
  // consistent.  Stored X/Z-only operators keep their recorded values; a Y
  // letter on a conjugated site inside a check instance is rejected.  The
  // init/measure-out event logs keep their original basis letters.
  void apply_transversal_h(const std::vector<Coord>& sites);

  // Apply physical SWAPs between site pairs (data or ancilla positions) and
  // rewrite every stored operator through the permutation.  Noiseless; a
  // caller modelling gate noise applies its own faults afterwards.
  void apply_swap_layer(const std::vector<std::pair<Coord, Coord>>& pairs);

  // --- final transversal readout (noiseless) -------------------------------
  void final_readout(const std::vector<Coord>& sites, char basis, Rng& rng);
  bool has_readout(Coord site) const;
  SignedValue readout_bit(Coord site) const;
  // XOR of readout bits along a chain, deps carrying the record ids.
  SignedValue chain_parity(const std::vector<Coord>& chain) const;

  // --- history access (decoder, tests) -------------------------------------
  const std::vector<Record>& records() const { return records_; }
  const std::vector<SlotInstance>& slots() const { return slots_; }
  const std::vector<ActivationSegment>& segments() const { return segments_; }
  const std::vector<MeasureOutEvent>& measure_outs() const { return measure_outs_; }
  const std::vector<InitEvent>& inits() const { return inits_; }
  const std::vector<FinalQubitReadout>& final_qubits() const { return finals_; }
  const SlotInstance& slot(int id) const { return slots_[id]; }
  const std::vector<int>& active_slot_ids() const { return active_slots_; }
  int record_value(int id) const { return records_[id].value; }

  // Flip a recorded outcome (classical-error injection in tests; the
  // physical state is untouched).  Must be called before any later
  // activation or interpretation consumes the record, i.e. right after the
  // round that produced it.
  void flip_record(int id);

 private:
  int new_record(RecordKind kind, int value);
  void measure_slot_direct(SlotInstance& slot, const NoiseModel& noise, Rng& rng);
  void measure_slot_circuit(SlotInstance& slot, const NoiseModel& noise, Rng& rng);
  void record_outcome(SlotInstance& slot, int m);

  Layout layout_;
  Tableau tableau_;
  int rounds_ = 0;
  std::vector<Record> records_;
  std::vector<SlotInstance> slots_;
  std::vector<int> active_slots_;
  std::vector<ActivationSegment> segments_;
  std::vector<MeasureOutEvent> measure_outs_;
  std::vector<InitEvent> inits_;
  std::vector<FinalQubitReadout> finals_;
  std::map<Coord, int> readout_index_;  // site -> index into finals_
  // Transition generators accumulated since the last activation.
  std::vector<SignedOp> transition_pool_;
};

}  // namespace lsurg
