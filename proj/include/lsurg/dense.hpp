#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "lsurg/pauli.hpp"
#include "lsurg/rng.hpp"

namespace lsurg {

// Exact state-vector simulator used as an independent oracle for the
// stabilizer engine and for non-stabilizer inputs.  Capped at 20 qubits.
//
// Measurement mirrors the Tableau contract: exactly one uniform variate is
// consumed when the outcome probability is strictly between 0 and 1, and
// none when it is (numerically) deterministic.  For stabilizer states the
// random branch always has probability exactly 1/2, so a Tableau and a
// DenseState driven by the same seed produce identical outcome sequences.
class DenseState {
public:
  static constexpr int kMaxQubits = 20;

  // Initialises |0...0>.
  explicit DenseState(int n);

  int n() const { return n_; }

  void apply_h(int q);
  void apply_s(int q);
  void apply_cnot(int control, int target);
  void apply_cz(int a, int b);
  void apply_swap(int a, int b);
  void apply_x(int q);
  void apply_y(int q);
  void apply_z(int q);
  // Arbitrary single-qubit unitary, row-major {u00, u01, u10, u11}.
  void apply_unitary1(int q, const std::array<std::complex<double>, 4>& u);

  // Measures Hermitian p; returns m in {0,1} with observed eigenvalue
  // (-1)^m, collapsing and renormalising the state.
  int measure(const PauliString& p, Rng& rng);

  // Collapses onto the (-1)^outcome eigenspace without consuming
  // randomness; throws std::logic_error if that branch has ~zero weight.
  void project(const PauliString& p, int outcome);

  // <psi| p |psi>; asserts the imaginary part is negligible.
  double expectation(const PauliString& p) const;

  std::complex<double> amplitude(uint64_t basis) const { return amp_[basis]; }
  void set_amplitude(uint64_t basis, std::complex<double> v) {
    amp_[basis] = v;
  }
  std::complex<double> inner(const DenseState& other) const;
  double norm() const;
  void normalize();

  // Applies p (including its phase) to the state.
  void apply_pauli(const PauliString& p);

private:
  // Coefficient and target index of p acting on basis state b.
  std::complex<double> pauli_coeff(const PauliString& p, uint64_t b,
                                   uint64_t xmask, uint64_t zmask) const;
  static uint64_t mask_of(const PauliString& p, bool x_part);

  int n_;
  std::vector<std::complex<double>> amp_;
};

}  // namespace lsurg
