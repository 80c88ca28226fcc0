#pragma once

#include <cstdint>
#include <vector>

#include "lsurg/code_cycle.hpp"

namespace lsurg {

// ---------------------------------------------------------------------------
// Detector model.
//
// A detector is a set of classical records whose XOR is deterministically
// `constant` in a fault-free run:
//   kBirth    first outcome of a continued check vs. the records its birth
//             relation was resolved from (predecessor last outcomes,
//             measure-outs, init constants);
//   kTimeDiff two consecutive outcomes of one check instance;
//   kReadout  last outcome of a surviving check vs. the final transversal
//             readout bits over its support (same basis only).
//
// Elementary fault mechanisms (single Pauli errors at each space-time
// location, single record flips) each fire at most two detectors; firing one
// detector makes a boundary edge.  Each edge carries a payload: the
// measure-out / final-readout / reference records the fault corrupts.  A
// minimum-weight matching over the fired detectors yields the set of payload
// records to reinterpret, which repairs both logical readout parities and
// joint-measurement signs.
// ---------------------------------------------------------------------------

enum class DetectorKind { kBirth, kTimeDiff, kReadout };

struct Detector {
  DetectorKind kind = DetectorKind::kTimeDiff;
  CheckType sector = CheckType::kX;  // type of the owning check
  int slot_id = -1;
  std::vector<int> records;  // sorted record ids
  int constant = 0;          // fault-free XOR of the records
};

struct DecoderEdge {
  int a = -1;  // detector index, -1 for the virtual boundary
  int b = -1;
  std::vector<int> payload;  // record ids to reinterpret when used
};

struct DetectorModel {
  std::vector<Detector> detectors;
  std::vector<DecoderEdge> edges;
  // Node adjacency (edge ids); node detectors.size() is the boundary.
  std::vector<std::vector<int>> adj;
  int boundary_node() const { return static_cast<int>(detectors.size()); }
};

// Builds the detector set and the edge graph for the run recorded in `ctx`.
// Throws if any elementary mechanism fires more than two detectors, or if a
// mechanism would corrupt interpretation records while firing none (a fault
// the decoder could never see).
DetectorModel build_detector_model(const SurgeryContext& ctx);

// Indices of detectors whose record XOR differs from the fault-free value.
std::vector<int> fired_detectors(const DetectorModel& model,
                                 const SurgeryContext& ctx);

struct DecodeResult {
  DepSet flipped;  // records whose interpretation the correction flips
  int n_events = 0;
  int64_t matching_cost = 0;
};

// Match the fired detectors (pairwise or to the boundary) along shortest
// paths in the edge graph and return the XOR of the payloads on the chosen
// paths.
DecodeResult decode(const DetectorModel& model, const SurgeryContext& ctx);

// Value of `v` after reinterpreting the records in `flipped`.
int corrected_bit(const SignedValue& v, const DepSet& flipped);

}  // namespace lsurg
