#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lsurg {

// A Pauli operator on n qubits: i^phase * (tensor product of I/X/Y/Z).
// Per-qubit letters are stored as bit pairs (x, z) with 00=I, 10=X, 11=Y,
// 01=Z, packed 64 qubits per word.  The phase exponent is tracked mod 4 so
// arbitrary products stay exact; operators that are actually Hermitian have
// phase 0 (+) or 2 (-), and sign() asserts that.
class PauliString {
public:
  PauliString() = default;
  explicit PauliString(int n);

  // Parse "+XIZY", "-ZZ", "XX" (implicit +), "iY", "-iX".
  static PauliString parse(const std::string& text);
  // Identity with a single letter placed at qubit q.  letter is 'X','Y','Z'.
  static PauliString single(int n, int q, char letter);
  // Same letter on every listed qubit.
  static PauliString from_support(int n, const std::vector<int>& qubits,
                                  char letter);

  int n() const { return n_; }
  bool x_bit(int q) const;
  bool z_bit(int q) const;
  // 'I', 'X', 'Y' or 'Z'.
  char letter(int q) const;
  void set_letter(int q, char letter);

  // Phase exponent of i, mod 4.
  int phase() const { return phase_; }
  void set_phase(int p) { phase_ = static_cast<uint8_t>(((p % 4) + 4) % 4); }
  // +1 or -1; asserts the operator is Hermitian (phase 0 or 2).
  int sign() const;
  void set_sign(int s);
  void flip_sign() { phase_ = static_cast<uint8_t>((phase_ + 2) & 3); }

  bool is_identity() const;      // ignores phase
  bool is_hermitian() const { return (phase_ & 1) == 0; }
  int weight() const;
  std::vector<int> support() const;
  bool commutes(const PauliString& other) const;

  // Full operator product including phase; sizes must match.
  PauliString& operator*=(const PauliString& rhs);
  friend PauliString operator*(PauliString a, const PauliString& b) {
    a *= b;
    return a;
  }
  // Equality of letters and phase.
  bool operator==(const PauliString& other) const;
  bool operator!=(const PauliString& other) const { return !(*this == other); }
  // Letters only, phase ignored.
  bool same_letters(const PauliString& other) const;

  // In-place conjugation P -> U P U^dagger for Clifford generators.
  void conj_h(int q);
  void conj_s(int q);
  void conj_cnot(int control, int target);
  void conj_cz(int a, int b);
  void conj_swap(int a, int b);
  void conj_x(int q);  // flips sign iff letter at q anticommutes with X
  void conj_z(int q);

  std::string str() const;

  // Symplectic view used by linear-algebra helpers: the x words followed by
  // the z words (phase not included).
  std::vector<uint64_t> symplectic_bits() const;

private:
  friend class Tableau;
  friend class DenseState;

  int n_ = 0;
  uint8_t phase_ = 0;
  std::vector<uint64_t> x_, z_;

  static int word_count(int n) { return (n + 63) / 64; }
};

}  // namespace lsurg
