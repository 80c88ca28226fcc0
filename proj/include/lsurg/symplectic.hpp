#pragma once

#include <optional>
#include <vector>

#include "lsurg/pauli.hpp"

namespace lsurg {

// Result of expressing a target Pauli as a product of generators: the
// subset of generator indices used and the sign m such that
//
//   (-1)^m * letters(target) == product of generators[used...]
//
// with phases tracked exactly.  The target's own phase is ignored.
struct Resolution {
  int sign = 0;  // 0 => +, 1 => -
  std::vector<int> used;
};

// Gaussian elimination over the symplectic (x|z) bit representation with
// sign-tracked row products.  Returns nullopt when the target's letters are
// not in the generators' span.  Generators must pairwise commute (all uses
// here pass same-letter CSS pools, which always do); this is asserted.
// Throws std::logic_error if generators are inconsistent (the pool spans
// both +P and -P for some P).
std::optional<Resolution> resolve_sign(const PauliString& target,
                                       const std::vector<PauliString>& gens);

}  // namespace lsurg
