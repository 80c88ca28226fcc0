#include "lsurg/tableau.hpp"

#include <cassert>
#include <stdexcept>

namespace lsurg {

Tableau::Tableau(int n) : n_(n) {
  if (n <= 0) throw std::invalid_argument("Tableau: size must be positive");
  destab_.reserve(n);
  stab_.reserve(n);
  for (int i = 0; i < n; ++i) {
    destab_.push_back(PauliString::single(n, i, 'X'));
    stab_.push_back(PauliString::single(n, i, 'Z'));
  }
}

void Tableau::apply_h(int q) {
  for (auto& r : destab_) r.conj_h(q);
  for (auto& r : stab_) r.conj_h(q);
}

void Tableau::apply_s(int q) {
  for (auto& r : destab_) r.conj_s(q);
  for (auto& r : stab_) r.conj_s(q);
}

void Tableau::apply_cnot(int control, int target) {
  for (auto& r : destab_) r.conj_cnot(control, target);
  for (auto& r : stab_) r.conj_cnot(control, target);
}

void Tableau::apply_cz(int a, int b) {
  for (auto& r : destab_) r.conj_cz(a, b);
  for (auto& r : stab_) r.conj_cz(a, b);
}

void Tableau::apply_swap(int a, int b) {
  for (auto& r : destab_) r.conj_swap(a, b);
  for (auto& r : stab_) r.conj_swap(a, b);
}

void Tableau::apply_x(int q) {
  for (auto& r : destab_) r.conj_x(q);
  for (auto& r : stab_) r.conj_x(q);
}

void Tableau::apply_y(int q) {
  // Conjugation ignores the conjugating operator's global phase, so Y acts
  // as X followed by Z.
  apply_x(q);
  apply_z(q);
}

void Tableau::apply_z(int q) {
  for (auto& r : destab_) r.conj_z(q);
  for (auto& r : stab_) r.conj_z(q);
}

int Tableau::measure(const PauliString& p, Rng& rng) {
  if (p.n() != n_) throw std::invalid_argument("Tableau::measure size");
  if (!p.is_hermitian()) throw std::invalid_argument("Tableau::measure phase");
  int k = -1;
  for (int i = 0; i < n_; ++i) {
    if (!stab_[i].commutes(p)) {
      k = i;
      break;
    }
  }
  if (k < 0) return deterministic_outcome(p);

  // Random outcome: repair every other anticommuting row with stabilizer k,
  // which then retires into the destabilizer slot while p takes its place.
  for (int i = 0; i < n_; ++i) {
    if (i != k && !destab_[i].commutes(p)) destab_[i] = stab_[k] * destab_[i];
    if (i != k && !stab_[i].commutes(p)) stab_[i] = stab_[k] * stab_[i];
  }
  destab_[k] = stab_[k];
  const int m = rng.bernoulli(0.5) ? 1 : 0;
  stab_[k] = p;
  if (m) stab_[k].flip_sign();
  return m;
}

int Tableau::measure_z(int q, Rng& rng) {
  return measure(PauliString::single(n_, q, 'Z'), rng);
}

int Tableau::measure_x(int q, Rng& rng) {
  return measure(PauliString::single(n_, q, 'X'), rng);
}

void Tableau::project_onto(const PauliString& p, int outcome) {
  if (p.n() != n_) throw std::invalid_argument("Tableau::project_onto size");
  if (!p.is_hermitian())
    throw std::invalid_argument("Tableau::project_onto phase");
  int k = -1;
  for (int i = 0; i < n_; ++i) {
    if (!stab_[i].commutes(p)) {
      k = i;
      break;
    }
  }
  if (k < 0) {
    if (deterministic_outcome(p) != outcome)
      throw std::logic_error(
          "Tableau::project_onto: zero-probability branch requested");
    return;
  }
  for (int i = 0; i < n_; ++i) {
    if (i != k && !destab_[i].commutes(p)) destab_[i] = stab_[k] * destab_[i];
    if (i != k && !stab_[i].commutes(p)) stab_[i] = stab_[k] * stab_[i];
  }
  destab_[k] = stab_[k];
  stab_[k] = p;
  if (outcome) stab_[k].flip_sign();
}

std::optional<int> Tableau::group_sign(const PauliString& p) const {
  if (p.n() != n_) throw std::invalid_argument("Tableau::group_sign size");
  if (!p.is_hermitian()) return std::nullopt;
  for (int i = 0; i < n_; ++i)
    if (!stab_[i].commutes(p)) return std::nullopt;
  PauliString acc(n_);
  for (int i = 0; i < n_; ++i)
    if (!destab_[i].commutes(p)) acc *= stab_[i];
  if (!acc.same_letters(p)) return std::nullopt;
  return (acc.sign() * p.sign() == 1) ? 0 : 1;
}

bool Tableau::is_deterministic(const PauliString& p) const {
  for (int i = 0; i < n_; ++i)
    if (!stab_[i].commutes(p)) return false;
  return true;
}

int Tableau::deterministic_outcome(const PauliString& p) const {
  PauliString acc(n_);
  for (int i = 0; i < n_; ++i)
    if (!destab_[i].commutes(p)) acc *= stab_[i];
  // With a full tableau the letters always match; the accumulated sign fixes
  // the outcome.
  assert(acc.same_letters(p));
  return (acc.sign() * p.sign() == 1) ? 0 : 1;
}

}  // namespace lsurg
