#include "lsurg/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace lsurg {

namespace {

int popcount(uint64_t w) { return std::popcount(w); }

}  // namespace

PauliString::PauliString(int n)
    : n_(n), x_(word_count(n), 0), z_(word_count(n), 0) {
  if (n < 0) throw std::invalid_argument("PauliString: negative size");
}

PauliString PauliString::parse(const std::string& text) {
  size_t i = 0;
  int phase = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    if (text[i] == '-') phase = 2;
    ++i;
  }
  if (i < text.size() && text[i] == 'i') {
    phase = (phase + 1) & 3;
    ++i;
  }
  PauliString p(static_cast<int>(text.size() - i));
  for (int q = 0; i < text.size(); ++i, ++q) p.set_letter(q, text[i]);
  p.set_phase(phase);
  return p;
}

PauliString PauliString::single(int n, int q, char letter) {
  PauliString p(n);
  p.set_letter(q, letter);
  return p;
}

PauliString PauliString::from_support(int n, const std::vector<int>& qubits,
                                      char letter) {
  PauliString p(n);
  for (int q : qubits) p.set_letter(q, letter);
  return p;
}

bool PauliString::x_bit(int q) const { return (x_[q / 64] >> (q % 64)) & 1; }
bool PauliString::z_bit(int q) const { return (z_[q / 64] >> (q % 64)) & 1; }

char PauliString::letter(int q) const {
  const int code = (x_bit(q) ? 1 : 0) | (z_bit(q) ? 2 : 0);
  return "IXZY"[code];
}

void PauliString::set_letter(int q, char letter) {
  if (q < 0 || q >= n_) throw std::out_of_range("PauliString::set_letter");
  uint64_t xb, zb;
  switch (letter) {
    case 'I': xb = 0; zb = 0; break;
    case 'X': xb = 1; zb = 0; break;
    case 'Y': xb = 1; zb = 1; break;
    case 'Z': xb = 0; zb = 1; break;
    default: throw std::invalid_argument("PauliString: bad letter");
  }
  const int w = q / 64, b = q % 64;
  x_[w] = (x_[w] & ~(1ULL << b)) | (xb << b);
  z_[w] = (z_[w] & ~(1ULL << b)) | (zb << b);
}

int PauliString::sign() const {
  if (phase_ == 0) return 1;
  if (phase_ == 2) return -1;
  throw std::logic_error("PauliString::sign on non-Hermitian operator");
}

void PauliString::set_sign(int s) {
  if (s == 1) phase_ = 0;
  else if (s == -1) phase_ = 2;
  else throw std::invalid_argument("PauliString::set_sign");
}

bool PauliString::is_identity() const {
  for (size_t w = 0; w < x_.size(); ++w)
    if (x_[w] | z_[w]) return false;
  return true;
}

int PauliString::weight() const {
  int total = 0;
  for (size_t w = 0; w < x_.size(); ++w) total += popcount(x_[w] | z_[w]);
  return total;
}

std::vector<int> PauliString::support() const {
  std::vector<int> out;
  for (int q = 0; q < n_; ++q)
    if (x_bit(q) || z_bit(q)) out.push_back(q);
  return out;
}

bool PauliString::commutes(const PauliString& other) const {
  if (n_ != other.n_) throw std::invalid_argument("PauliString size mismatch");
  int parity = 0;
  for (size_t w = 0; w < x_.size(); ++w)
    parity ^= popcount((x_[w] & other.z_[w]) ^ (z_[w] & other.x_[w])) & 1;
  return parity == 0;
}

PauliString& PauliString::operator*=(const PauliString& rhs) {
  if (n_ != rhs.n_) throw std::invalid_argument("PauliString size mismatch");
  // Per-qubit letter product W1*W2 = i^t * W3 with t in {0,1,3}; t=1 for the
  // cyclic pairs XY, YZ, ZX and t=3 for the anticyclic ones.
  int acc = phase_ + rhs.phase_;
  for (size_t w = 0; w < x_.size(); ++w) {
    const uint64_t a = x_[w], b = z_[w], c = rhs.x_[w], d = rhs.z_[w];
    const uint64_t plus_i = (a & ~b & c & d) | (a & b & ~c & d) |
                            (~a & b & c & ~d);
    const uint64_t minus_i = (a & ~b & ~c & d) | (a & b & c & ~d) |
                             (~a & b & c & d);
    acc += popcount(plus_i) + 3 * popcount(minus_i);
    x_[w] ^= c;
    z_[w] ^= d;
  }
  phase_ = static_cast<uint8_t>(acc & 3);
  return *this;
}

bool PauliString::operator==(const PauliString& other) const {
  return n_ == other.n_ && phase_ == other.phase_ && x_ == other.x_ &&
         z_ == other.z_;
}

bool PauliString::same_letters(const PauliString& other) const {
  return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
}

void PauliString::conj_h(int q) {
  const int w = q / 64, b = q % 64;
  const uint64_t xb = (x_[w] >> b) & 1, zb = (z_[w] >> b) & 1;
  if (xb & zb) flip_sign();  // H Y H = -Y
  x_[w] ^= (xb ^ zb) << b;
  z_[w] ^= (xb ^ zb) << b;
}

void PauliString::conj_s(int q) {
  const int w = q / 64, b = q % 64;
  const uint64_t xb = (x_[w] >> b) & 1, zb = (z_[w] >> b) & 1;
  if (xb & zb) flip_sign();  // S Y Sdg = -X
  z_[w] ^= xb << b;
}

void PauliString::conj_cnot(int control, int target) {
  const int wc = control / 64, bc = control % 64;
  const int wt = target / 64, bt = target % 64;
  const uint64_t xc = (x_[wc] >> bc) & 1, zc = (z_[wc] >> bc) & 1;
  const uint64_t xt = (x_[wt] >> bt) & 1, zt = (z_[wt] >> bt) & 1;
  if (xc & zt & !(xt ^ zc)) flip_sign();  // e.g. CNOT XZ CNOT = -YY
  x_[wt] ^= xc << bt;
  z_[wc] ^= zt << bc;
}

void PauliString::conj_cz(int a, int b) {
  const int wa = a / 64, ba = a % 64;
  const int wb = b / 64, bb = b % 64;
  const uint64_t xa = (x_[wa] >> ba) & 1, za = (z_[wa] >> ba) & 1;
  const uint64_t xb = (x_[wb] >> bb) & 1, zb = (z_[wb] >> bb) & 1;
  if (xa & xb & (za ^ zb)) flip_sign();
  z_[wa] ^= xb << ba;
  z_[wb] ^= xa << bb;
}

void PauliString::conj_swap(int a, int b) {
  const int wa = a / 64, ba = a % 64;
  const int wb = b / 64, bb = b % 64;
  const uint64_t xa = (x_[wa] >> ba) & 1, za = (z_[wa] >> ba) & 1;
  const uint64_t xb = (x_[wb] >> bb) & 1, zb = (z_[wb] >> bb) & 1;
  x_[wa] ^= (xa ^ xb) << ba;
  x_[wb] ^= (xa ^ xb) << bb;
  z_[wa] ^= (za ^ zb) << ba;
  z_[wb] ^= (za ^ zb) << bb;
}

void PauliString::conj_x(int q) {
  if (z_bit(q)) flip_sign();
}

void PauliString::conj_z(int q) {
  if (x_bit(q)) flip_sign();
}

std::string PauliString::str() const {
  static const char* prefix[4] = {"+", "i", "-", "-i"};
  std::string out = prefix[phase_];
  for (int q = 0; q < n_; ++q) out += letter(q);
  return out;
}

std::vector<uint64_t> PauliString::symplectic_bits() const {
  std::vector<uint64_t> out = x_;
  out.insert(out.end(), z_.begin(), z_.end());
  return out;
}

}  // namespace lsurg
