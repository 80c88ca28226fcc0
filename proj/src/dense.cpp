#include "lsurg/dense.hpp"

#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace lsurg {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kDetTol = 1e-9;

int parity(uint64_t w) { return std::popcount(w) & 1; }

}  // namespace

DenseState::DenseState(int n) : n_(n), amp_(uint64_t{1} << n) {
  if (n <= 0 || n > kMaxQubits)
    throw std::invalid_argument("DenseState: size out of range");
  amp_[0] = 1.0;
}

void DenseState::apply_h(int q) {
  const uint64_t mask = uint64_t{1} << q;
  for (uint64_t b = 0; b < amp_.size(); ++b) {
    if (b & mask) continue;
    const auto a0 = amp_[b], a1 = amp_[b | mask];
    amp_[b] = (a0 + a1) * kInvSqrt2;
    amp_[b | mask] = (a0 - a1) * kInvSqrt2;
  }
}

void DenseState::apply_s(int q) {
  const uint64_t mask = uint64_t{1} << q;
  const std::complex<double> i(0.0, 1.0);
  for (uint64_t b = 0; b < amp_.size(); ++b)
    if (b & mask) amp_[b] *= i;
}

void DenseState::apply_cnot(int control, int target) {
  const uint64_t cm = uint64_t{1} << control, tm = uint64_t{1} << target;
  for (uint64_t b = 0; b < amp_.size(); ++b)
    if ((b & cm) && !(b & tm)) std::swap(amp_[b], amp_[b | tm]);
}

void DenseState::apply_cz(int a, int b) {
  const uint64_t am = uint64_t{1} << a, bm = uint64_t{1} << b;
  for (uint64_t i = 0; i < amp_.size(); ++i)
    if ((i & am) && (i & bm)) amp_[i] = -amp_[i];
}

void DenseState::apply_swap(int a, int b) {
  const uint64_t am = uint64_t{1} << a, bm = uint64_t{1} << b;
  for (uint64_t i = 0; i < amp_.size(); ++i)
    if ((i & am) && !(i & bm)) std::swap(amp_[i], amp_[(i ^ am) | bm]);
}

void DenseState::apply_x(int q) {
  const uint64_t mask = uint64_t{1} << q;
  for (uint64_t b = 0; b < amp_.size(); ++b)
    if (!(b & mask)) std::swap(amp_[b], amp_[b | mask]);
}

void DenseState::apply_y(int q) {
  const uint64_t mask = uint64_t{1} << q;
  const std::complex<double> i(0.0, 1.0);
  for (uint64_t b = 0; b < amp_.size(); ++b) {
    if (b & mask) continue;
    const auto a0 = amp_[b], a1 = amp_[b | mask];
    amp_[b] = -i * a1;
    amp_[b | mask] = i * a0;
  }
}

void DenseState::apply_z(int q) {
  const uint64_t mask = uint64_t{1} << q;
  for (uint64_t b = 0; b < amp_.size(); ++b)
    if (b & mask) amp_[b] = -amp_[b];
}

void DenseState::apply_unitary1(int q,
                                const std::array<std::complex<double>, 4>& u) {
  const uint64_t mask = uint64_t{1} << q;
  for (uint64_t b = 0; b < amp_.size(); ++b) {
    if (b & mask) continue;
    const auto a0 = amp_[b], a1 = amp_[b | mask];
    amp_[b] = u[0] * a0 + u[1] * a1;
    amp_[b | mask] = u[2] * a0 + u[3] * a1;
  }
}

uint64_t DenseState::mask_of(const PauliString& p, bool x_part) {
  const auto& words = x_part ? p.x_ : p.z_;
  return words.empty() ? 0 : words[0];
}

std::complex<double> DenseState::pauli_coeff(const PauliString& p, uint64_t b,
                                             uint64_t xmask,
                                             uint64_t zmask) const {
  static const std::complex<double> ipow[4] = {
      {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int y_count = std::popcount(xmask & zmask);
  std::complex<double> c = ipow[(p.phase() + y_count) & 3];
  if (parity(b & zmask)) c = -c;
  return c;
}

void DenseState::apply_pauli(const PauliString& p) {
  if (p.n() != n_) throw std::invalid_argument("DenseState: size mismatch");
  const uint64_t xm = mask_of(p, true), zm = mask_of(p, false);
  std::vector<std::complex<double>> out(amp_.size());
  for (uint64_t b = 0; b < amp_.size(); ++b)
    out[b ^ xm] = pauli_coeff(p, b, xm, zm) * amp_[b];
  amp_ = std::move(out);
}

double DenseState::expectation(const PauliString& p) const {
  if (p.n() != n_) throw std::invalid_argument("DenseState: size mismatch");
  if (!p.is_hermitian())
    throw std::invalid_argument("DenseState: non-Hermitian observable");
  const uint64_t xm = mask_of(p, true), zm = mask_of(p, false);
  std::complex<double> e = 0.0;
  for (uint64_t b = 0; b < amp_.size(); ++b)
    e += std::conj(amp_[b ^ xm]) * pauli_coeff(p, b, xm, zm) * amp_[b];
  assert(std::abs(e.imag()) < 1e-8);
  return e.real();
}

int DenseState::measure(const PauliString& p, Rng& rng) {
  const double e = expectation(p);
  const double p1 = std::min(1.0, std::max(0.0, (1.0 - e) / 2.0));
  int m;
  if (p1 <= kDetTol) {
    m = 0;
  } else if (p1 >= 1.0 - kDetTol) {
    m = 1;
  } else {
    m = rng.uniform() < p1 ? 1 : 0;
  }
  project(p, m);
  return m;
}

void DenseState::project(const PauliString& p, int outcome) {
  if (p.n() != n_) throw std::invalid_argument("DenseState: size mismatch");
  const uint64_t xm = mask_of(p, true), zm = mask_of(p, false);
  const double s = outcome ? -1.0 : 1.0;
  std::vector<std::complex<double>> out(amp_.size());
  for (uint64_t b = 0; b < amp_.size(); ++b)
    out[b ^ xm] += 0.5 * s * pauli_coeff(p, b, xm, zm) * amp_[b];
  for (uint64_t b = 0; b < amp_.size(); ++b) out[b] += 0.5 * amp_[b];
  amp_ = std::move(out);
  const double nrm = norm();
  if (nrm < 1e-6)
    throw std::logic_error("DenseState::project: zero-probability branch");
  for (auto& a : amp_) a /= nrm;
}

std::complex<double> DenseState::inner(const DenseState& other) const {
  if (other.n_ != n_) throw std::invalid_argument("DenseState: size mismatch");
  std::complex<double> s = 0.0;
  for (uint64_t b = 0; b < amp_.size(); ++b)
    s += std::conj(amp_[b]) * other.amp_[b];
  return s;
}

double DenseState::norm() const {
  double s = 0.0;
  for (const auto& a : amp_) s += std::norm(a);
  return std::sqrt(s);
}

void DenseState::normalize() {
  const double nrm = norm();
  if (nrm == 0.0) throw std::logic_error("DenseState::normalize: zero vector");
  for (auto& a : amp_) a /= nrm;
}

}  // namespace lsurg
