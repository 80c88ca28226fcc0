#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "lsurg/report.hpp"
#include "lsurg/surgery.hpp"

namespace lsurg {

// Per-round customization for protocol runs: noise settings plus optional
// hooks, used by fault-injection tests to strike at a chosen moment.
// before_round fires just before the round with the given index is measured,
// after_round just after.
struct ProtocolOptions {
  NoiseModel noise{};
  MeasureMode mode = MeasureMode::kDirect;
  std::function<void(SurgeryContext&, int)> before_round;
  std::function<void(SurgeryContext&, int)> after_round;
};

// Runs k rounds, firing the hooks around each.
void run_segment(SurgeryContext& ctx, int k, const ProtocolOptions& opt,
                 Rng& rng);

// ---------------------------------------------------------------------------
// Region plan for a surgery CNOT: the control patch, the ancilla strip that
// mediates the interaction, and the target patch.  The strip is joined to
// the control across a seam of smooth boundaries (a ZZ-type junction) and to
// the target across rough ones (XX), so the layout bends around a corner:
// with the standard encoding the strip sits below the control and the target
// sits beside the strip; with the rotated encoding the strip sits beside the
// control and the target below the strip.
// ---------------------------------------------------------------------------

struct CnotSpecs {
  int d = 0;
  LatticeSpec control;        // final control patch
  LatticeSpec intermediate;   // ancilla strip
  LatticeSpec control_wide;   // control + seam1 + strip as one patch
  LatticeSpec target;         // initial target patch
  LatticeSpec target_merged;  // strip + seam2 + target: the final target
  std::vector<Coord> seam1;   // control/strip junction (ZZ side)
  std::vector<Coord> seam2;   // strip/target junction (XX side)
  std::vector<Coord> hull;    // union of every data site ever used
};

CnotSpecs cnot_specs(Encoding encoding, int d);

struct CnotResult {
  Patch control;
  Patch target;         // lives on target_merged
  SignedValue m_zz;     // joint ZZ outcome (sequential variant only)
  SignedValue m_xx;     // joint XX outcome
  int rounds_used = 0;  // error-correction rounds consumed by the protocol
};

// Sequential variant: create the strip in |+>, merge it with the control
// (ZZ), split it back off, merge it into the target (XX).  Three junction
// steps, each followed by d rounds: 3d rounds total.  The XX outcome folds
// into the control's X frame; the ZZ outcome needs no correction because the
// split hands the pair back already ZZ-correlated.
CnotResult cnot_sequential(SurgeryContext& ctx, const Patch& control,
                           const Patch& target, const CnotSpecs& cs, Rng& rng,
                           const ProtocolOptions& opt = {});

// Fused variant: the control must already live on the wide strip-shaped
// patch (control_wide).  One transition both cuts the strip off the control
// and absorbs it into the target; d rounds total.
CnotResult cnot_fused(SurgeryContext& ctx, const Patch& wide_control,
                      const Patch& target, const CnotSpecs& cs, Rng& rng,
                      const ProtocolOptions& opt = {});

// Logical CNOT between two congruent patches by physical CNOTs on matching
// data sites (control site -> the target site at control + shift).  Exact
// and instantaneous; serves as the reference implementation the surgery
// variants are checked against.
void transversal_cnot(SurgeryContext& ctx, const LatticeSpec& control,
                      const LatticeSpec& target);

// ---------------------------------------------------------------------------
// Patch growth
// ---------------------------------------------------------------------------

// Data-site hull covering a patch anchored at spec.lo grown out to distance
// new_d (the grown square keeps spec.lo as its corner and extends towards
// +r/+c).
std::vector<Coord> grow_hull(const LatticeSpec& spec, int new_d);

// Enlarge a square patch to distance new_d, one unit of distance at a time.
// Each increment absorbs two freshly prepared strips of qubits, one across
// the rough boundary (strip prepared in |0..0>, so the one-site sliver it
// contributes to the extended Z chain reads +1) and one across the smooth
// boundary (strip in |+..+>, dual argument), each junction followed by a
// stabilization window of (current distance) rounds.  The logical state and
// its frame are untouched.  Standard encoding only; the patch must be the
// only active one.  Throws std::invalid_argument if new_d is not larger
// than the current distance.
Patch grow_patch(SurgeryContext& ctx, Patch p, int new_d, Rng& rng,
                 const ProtocolOptions& opt = {});

// ---------------------------------------------------------------------------
// State injection
// ---------------------------------------------------------------------------

struct InjectResult {
  Patch patch;       // the encoded logical qubit (tableau path only)
  bool used_tableau = true;
  double fidelity = 1.0;  // dense-oracle overlap with the ideal encoding
  ProtocolReport report;
};

// Hull for inject_state: the distance-3 seed footprint grown to target_d.
std::vector<Coord> inject_hull(int target_d);

// Encode amp0|0> + amp1|1> into a logical qubit: write the raw state on the
// centre data qubit of a distance-3 footprint, fan it out along the centre
// column (CNOTs to the vertical neighbours, SWAPs outward), bring up the
// distance-3 checks, stabilize, then grow the patch to target_d.  Inputs
// that are single-qubit stabilizer states run on the context's tableau and
// are exact; any other input is prepared on a standalone dense simulation
// of the 13 data qubits (target_d must then be 3) and the returned fidelity
// is the overlap with the ideal encoded state.  The first window is not
// fault tolerant -- a single fault on the seed column before the checks
// come up reaches the logical qubit -- and the report notes this.
// Preconditions: |amp0|^2 + |amp1|^2 == 1 (else std::invalid_argument),
// target_d >= 3.
InjectResult inject_state(SurgeryContext& ctx, std::complex<double> amp0,
                          std::complex<double> amp1, int target_d, Rng& rng,
                          const ProtocolOptions& opt = {});

// ---------------------------------------------------------------------------
// Bell / GHZ preparation by repeated splitting
// ---------------------------------------------------------------------------

// Geometry for an n-party GHZ run: the long initial patch, the n square
// pieces it ends up cut into, and for each cut the seam and the remainder
// ("tail") patch that carries on to the next cut.
struct GhzSpecs {
  int d = 0;
  int parties = 0;
  char basis = 'Z';  // correlation basis of the product state, see make_ghz
  LatticeSpec whole;
  std::vector<LatticeSpec> pieces;
  std::vector<LatticeSpec> tails;  // tails[i]: pieces i+1..n-1, one patch
  std::vector<std::vector<Coord>> seams;  // seams[i]: piece i | tail i
  std::vector<Coord> hull;
};

GhzSpecs ghz_specs(Encoding encoding, int d, int parties, char basis);

struct GhzResult {
  std::vector<Patch> parties;
  ProtocolReport report;
};

// Prepare an n-party GHZ state by n-1 successive splits of one long patch.
// basis 'Z' starts from |+>_L and smooth-splits, giving the state
// stabilized by {X..X, Z_i Z_{i+1}} (the computational-basis GHZ); basis
// 'X' starts from |0>_L and rough-splits, giving the Hadamard-rotated GHZ
// {Z..Z, X_i X_{i+1}}.  Each split leaves the two halves' frames already
// accounting for the seam byproduct, so the stabilizers above interpret to
// +1 exactly.  n = 2 gives the Bell pair.
GhzResult make_ghz(SurgeryContext& ctx, const GhzSpecs& gs, Rng& rng,
                   const ProtocolOptions& opt = {});

// ---------------------------------------------------------------------------
// Hadamard by patch rotation
// ---------------------------------------------------------------------------

// Hull for hadamard_rotate on a patch: its footprint plus the one-unit
// growth collar.
std::vector<Coord> hadamard_hull(const LatticeSpec& spec);

struct HadamardResult {
  Patch patch;
  ProtocolReport report;
};

// Apply a logical Hadamard to a square standard-encoding patch in place.
// Transversal H exchanges the roles of the two check types, which leaves
// the patch with its boundary types rotated a quarter turn from where the
// surrounding hardware expects them; the rest of the protocol rotates the
// fabric back.  The patch grows one unit in each direction, the four
// corner qubits are measured off so that each boundary's type change-point
// moves onto the patch diagonals, the outer ring is measured off around
// the re-anchored diagonal logicals, and two parallel layers of
// nearest-neighbour swaps shift the rotated patch back onto the original
// footprint.  Every carving/contraction measurement is a single-qubit Z
// measurement.  The patch returns on its original sites with its original
// boundary labels and the logical state Hadamard-transformed.
// Standard encoding, square patches only; the patch must be the only
// active one.
HadamardResult hadamard_rotate(SurgeryContext& ctx, const Patch& p, Rng& rng,
                               const ProtocolOptions& opt = {});

}  // namespace lsurg
