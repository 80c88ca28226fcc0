#pragma once

#include <compare>
#include <vector>

#include "lsurg/pauli.hpp"

namespace lsurg {

// Two planar encodings are supported.
//
// kStandard places data qubits on the even-parity points (r+c even) of an
// integer grid rectangle and one check per odd-parity point; interior checks
// have weight 4, edge checks weight 3.  A distance-d patch spans
// 2(d-1)+1 grid rows and columns and uses d^2 + (d-1)^2 data qubits.
//
// kRotated places a data qubit on every integer point of a rectangle and
// one check per unit square (keyed by its lower-left corner), alternating
// X/Z in a global checkerboard; squares hanging off the left/right sides
// contribute weight-2 X checks and squares off the bottom/top contribute
// weight-2 Z checks.  A distance-d patch is a d x d block of data qubits.
enum class Encoding { kStandard, kRotated };

enum class CheckType { kX, kZ };

struct Coord {
  int r = 0;  // row (vertical position)
  int c = 0;  // column (horizontal position)
  auto operator<=>(const Coord&) const = default;
};

struct Plaquette {
  CheckType type;
  // kStandard: the grid point of the check; kRotated: square's lower-left
  // data corner (which may lie just outside the data rectangle).
  Coord key;
  std::vector<Coord> data;  // supported data sites, sorted
};

enum class BoundaryLabel {
  kSmooth,  // terminates X chains (X-boundary in the rotated encoding)
  kRough,   // terminates Z chains (Z-boundary in the rotated encoding)
};

struct BoundarySet {
  BoundaryLabel bottom;  // row lo.r
  BoundaryLabel top;     // row hi.r
  BoundaryLabel left;    // column lo.c
  BoundaryLabel right;   // column hi.c
  bool operator==(const BoundarySet&) const = default;
};

// Full static description of one rectangular patch.
struct LatticeSpec {
  Encoding encoding = Encoding::kStandard;
  Coord lo, hi;             // inclusive data-site bounding rectangle
  bool parity_flip = false; // kStandard only: X and Z check roles swapped
                            // (the frame left behind by a transversal H)
  std::vector<Coord> data_sites;    // sorted
  std::vector<Plaquette> plaquettes;
  std::vector<Coord> logical_x;     // canonical X-chain representative
  std::vector<Coord> logical_z;     // canonical Z-chain representative
  BoundarySet boundaries{};

  bool contains(Coord s) const {
    return s.r >= lo.r && s.r <= hi.r && s.c >= lo.c && s.c <= hi.c;
  }
};

// Builds the spec for the rectangle [lo, hi].  For kStandard the corners
// must be data sites (lo.r+lo.c even) and both spans must be even and >= 0
// (a zero span gives a single-line repetition strip, used when growing a
// patch); for kRotated both spans must be >= 1.  Throws std::invalid_argument
// on a malformed region.
LatticeSpec make_patch_spec(Encoding encoding, Coord lo, Coord hi,
                            bool parity_flip = false);

// Square distance-d patches with their lower-left data corner at lo.
LatticeSpec standard_patch(int d, Coord lo = {0, 0}, bool parity_flip = false);
LatticeSpec rotated_patch(int d, Coord lo = {0, 0});

// Minimum weight of a nontrivial logical operator using only the given
// letter, via shortest boundary-to-boundary path in the detecting-check
// adjacency graph.
int code_distance(const LatticeSpec& spec, CheckType logical_letter);
// min over both letters
int code_distance(const LatticeSpec& spec);

// Exhaustive search over supports up to max_weight; returns the minimum
// nontrivial logical weight for the letter, or 0 if none exists within the
// cap.  Exponential; intended for small cross-checks only.
int code_distance_exhaustive(const LatticeSpec& spec, CheckType logical_letter,
                             int max_weight);

}  // namespace lsurg
