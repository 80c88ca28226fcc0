#include "lsurg/symplectic.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <stdexcept>

namespace lsurg {

namespace {

int lowest_set_bit(const std::vector<uint64_t>& words) {
  for (size_t w = 0; w < words.size(); ++w) {
    if (words[w] != 0) {
      return static_cast<int>(w) * 64 + __builtin_ctzll(words[w]);
    }
  }
  return -1;
}

struct Pivot {
  PauliString value;
  std::vector<uint64_t> bits;
  std::vector<int> members;  // original generator indices (XOR set, sorted)
};

std::vector<int> xor_sets(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return out;
}

}  // namespace

std::optional<Resolution> resolve_sign(const PauliString& target,
                                       const std::vector<PauliString>& gens) {
#ifndef NDEBUG
  for (size_t i = 0; i < gens.size(); ++i) {
    assert(gens[i].n() == target.n());
    for (size_t j = i + 1; j < gens.size(); ++j) {
      assert(gens[i].commutes(gens[j]) && "generator pool must commute");
    }
  }
#endif
  std::vector<Pivot> pivots;  // sorted by leading bit
  auto reduce = [&](PauliString value, std::vector<int> members)
      -> std::pair<PauliString, std::vector<int>> {
    auto bits = value.symplectic_bits();
    for (;;) {
      int lead = lowest_set_bit(bits);
      if (lead < 0) return {value, members};
      auto it = std::find_if(pivots.begin(), pivots.end(), [&](const Pivot& p) {
        return lowest_set_bit(p.bits) == lead;
      });
      if (it == pivots.end()) {
        pivots.push_back(Pivot{value, bits, members});
        return {PauliString(value.n()), {}};  // fully absorbed as new pivot
      }
      value = it->value * value;
      bits = value.symplectic_bits();
      members = xor_sets(it->members, members);
    }
  };

  for (size_t i = 0; i < gens.size(); ++i) {
    auto [rem, mem] = reduce(gens[i], {static_cast<int>(i)});
    if (rem.is_identity() && !mem.empty()) {
      // A nontrivial combination collapsed to the identity: fine if the sign
      // is +, contradictory otherwise.
      if (rem.sign() != 1) {
        throw std::logic_error("resolve_sign: inconsistent generator signs");
      }
    }
  }

  // Reduce the target's letters (phase stripped) against the pivots.
  PauliString cur = target;
  cur.set_phase(0);
  std::vector<int> used;
  auto bits = cur.symplectic_bits();
  for (;;) {
    int lead = lowest_set_bit(bits);
    if (lead < 0) break;
    auto it = std::find_if(pivots.begin(), pivots.end(), [&](const Pivot& p) {
      return lowest_set_bit(p.bits) == lead;
    });
    if (it == pivots.end()) return std::nullopt;
    cur = it->value * cur;
    bits = cur.symplectic_bits();
    used = xor_sets(it->members, used);
  }
  // cur == (product of used generators) * letters(target); the letters have
  // cancelled, so cur is (+/-) identity.
  if (!cur.is_hermitian()) {
    throw std::logic_error("resolve_sign: odd phase in resolved product");
  }
  Resolution res;
  res.sign = (cur.sign() == 1) ? 0 : 1;
  res.used = std::move(used);
  return res;
}

}  // namespace lsurg
