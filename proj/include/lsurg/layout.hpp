#pragma once

#include <map>
#include <vector>

#include "lsurg/lattice.hpp"
#include "lsurg/pauli.hpp"

namespace lsurg {

// Maps the union of all data sites a protocol will ever touch (the hull)
// into one contiguous qubit register and places the physical measurement
// ancillas:
//
//  - kStandard: one ancilla per check point (odd-parity grid point with at
//    least two hull neighbours), so a lone distance-d patch occupies
//    (2d-1)^2 physical sites.
//  - kRotated: one ancilla per interior square (all four corners in the
//    hull); boundary checks borrow the lexicographically smallest adjacent
//    interior ancilla.  A lone distance-d patch needs d^2 + (d-1)^2
//    physical qubits.
//
// Data qubits occupy ids [0, n_data); ancillas follow.
class Layout {
 public:
  static Layout build(Encoding encoding, std::vector<Coord> hull);

  Encoding encoding() const { return encoding_; }
  int n_data() const { return static_cast<int>(data_coords_.size()); }
  int n_ancilla() const { return static_cast<int>(ancilla_coords_.size()); }
  int n_total() const { return n_data() + n_ancilla(); }

  bool has_data(Coord site) const { return data_index_.count(site) != 0; }
  int data_qubit(Coord site) const;
  // The qubit id of the ancilla that serves the check keyed at `key`.
  int ancilla_qubit(Coord key) const;

  const std::vector<Coord>& data_coords() const { return data_coords_; }
  const std::vector<Coord>& ancilla_coords() const { return ancilla_coords_; }

  // Pauli operator with `letter` on every data qubit of the plaquette.
  PauliString check_operator(const Plaquette& p) const;
  // Pauli operator with `letter` along a coordinate chain.
  PauliString chain_operator(const std::vector<Coord>& chain,
                             char letter) const;
  // Single-letter operator on one data site.
  PauliString site_operator(Coord site, char letter) const;

 private:
  Encoding encoding_ = Encoding::kStandard;
  std::vector<Coord> data_coords_, ancilla_coords_;
  std::map<Coord, int> data_index_, ancilla_index_;
};

// Data sites of a rectangle in the given encoding (even-parity points for
// kStandard, every point for kRotated).
std::vector<Coord> region_rect(Encoding encoding, Coord lo, Coord hi);
// Sorted union with duplicates removed.
std::vector<Coord> region_union(std::vector<std::vector<Coord>> parts);

}  // namespace lsurg
