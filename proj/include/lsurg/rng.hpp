#pragma once

#include <cstdint>

namespace lsurg {

// Counter-style splittable PRNG built on the splitmix64 finalizer over an
// additive Weyl sequence.  Child streams are derived by hashing
// (state, stream-id) pairs, so per-trial generators are reproducible and
// independent of scheduling or of how much the parent stream was consumed
// before the split.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform double in [0, 1), 53 bits of precision.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, n).  Rejection-free modulo is fine here: n is
  // always tiny (< 2^32) relative to the 64-bit state, so bias is < 2^-32.
  uint64_t below(uint64_t n) { return next() % n; }

  // Deterministic child stream; does not advance this generator.
  Rng derive(uint64_t stream) const {
    return Rng(mix(state_ + kGamma * (2 * stream + 1)));
  }

  // Canonical per-trial stream for Monte Carlo loops: depends only on the
  // master seed and the trial index, never on execution order.
  static Rng for_trial(uint64_t master_seed, uint64_t trial) {
    return Rng(master_seed).derive(trial);
  }

private:
  static constexpr uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  uint64_t state_;
};

}  // namespace lsurg
