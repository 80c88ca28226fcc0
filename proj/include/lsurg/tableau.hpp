#pragma once

#include <optional>
#include <vector>

#include "lsurg/pauli.hpp"
#include "lsurg/rng.hpp"

namespace lsurg {

// Stabilizer-state simulator in the destabilizer/stabilizer tableau form.
// The state is tracked as n stabilizer generators plus n destabilizer rows
// chosen so that destabilizer i anticommutes with stabilizer i and commutes
// with every other row.  All updates are O(n^2 / 64) or better, so lattice
// instances with a few hundred qubits are cheap.
class Tableau {
public:
  // Initialises |0...0>: stabilizers Z_i, destabilizers X_i.
  explicit Tableau(int n);

  int n() const { return n_; }

  void apply_h(int q);
  void apply_s(int q);
  void apply_cnot(int control, int target);
  void apply_cz(int a, int b);
  void apply_swap(int a, int b);
  void apply_x(int q);
  void apply_y(int q);
  void apply_z(int q);

  // Measures the Hermitian operator p.  Returns m in {0,1}; the observed
  // eigenvalue is (-1)^m and the state is collapsed accordingly.  Consumes
  // exactly one uniform variate when the outcome is random and none when it
  // is determined.
  int measure(const PauliString& p, Rng& rng);

  // Convenience single-qubit measurements.
  int measure_z(int q, Rng& rng);
  int measure_x(int q, Rng& rng);

  // Collapses onto the (-1)^outcome eigenspace of p without consuming
  // randomness.  Throws std::logic_error if the opposite outcome was already
  // determined (zero-probability branch).
  void project_onto(const PauliString& p, int outcome);

  // If (-1)^m p is in the stabilizer group, returns m; otherwise nullopt.
  // Does not modify the state.
  std::optional<int> group_sign(const PauliString& p) const;

  // True when measuring p would give a fixed outcome.
  bool is_deterministic(const PauliString& p) const;

  // Row accessors (copies), mainly for inspection and tests.
  PauliString stabilizer(int i) const { return stab_[i]; }
  PauliString destabilizer(int i) const { return destab_[i]; }

private:
  int deterministic_outcome(const PauliString& p) const;

  int n_;
  std::vector<PauliString> destab_, stab_;
};

}  // namespace lsurg
