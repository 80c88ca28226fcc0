#pragma once

#include <vector>

#include "lsurg/code_cycle.hpp"

namespace lsurg {

// ---------------------------------------------------------------------------
// A logical patch: its lattice spec plus a classical frame fixing the sign
// convention of its logical operators.  `ref_z`/`ref_x` are the chains
// currently anchoring logical Z and X; the interpreted logical value of a
// chain measurement is its physical parity XOR the matching frame bit.
// Frame bits carry dependency sets (fresh-check references, measure-out and
// readout records) so the decoder's reinterpretations apply to them.
// ---------------------------------------------------------------------------

struct Patch {
  LatticeSpec spec;
  std::vector<Coord> ref_z, ref_x;
  SignedValue fz, fx;
};

// Fresh patch with canonical chains and zero frames: correct for a patch
// whose data was just initialized transversally (|0..0> or |+..+>).
Patch make_patch(const LatticeSpec& spec);

// Interpreted logical value from the final transversal readout (the readout
// must cover the reference chain in the same basis).
SignedValue logical_readout(const SurgeryContext& ctx, const Patch& p,
                            char basis);

// Re-anchor a logical operator to a homologous chain, folding the sign of
// the connecting stabilizer product into the frame.  Throws if the chains
// are not related by the active checks.
void reanchor(const SurgeryContext& ctx, Patch& p, char basis,
              std::vector<Coord> chain);

// ---------------------------------------------------------------------------
// Merges.  A rough merge joins two patches across their rough boundaries
// and measures the joint XX logical (seam data starts in |0>; the new
// cross-seam X checks come up fresh).  A smooth merge joins across smooth
// boundaries and measures ZZ (seam in |+>, fresh Z checks).
//
// `begin_*` initializes the seam and activates the merged patch (plus any
// spectator patches that stay active); the caller runs stabilizer rounds;
// `finish_merge` then extracts the joint outcome and the merged frame.
// The joint outcome convention: the merged patch continues the first
// argument's undetermined logical, so re-reading the joint through the
// second patch differs by the reported outcome.
// ---------------------------------------------------------------------------

struct PendingMerge {
  char kind = 'R';  // 'R' rough (measures XX), 'S' smooth (measures ZZ)
  Patch a, b;       // re-anchored to their canonical chains
  LatticeSpec merged_spec;
  std::vector<Coord> seam;
};

PendingMerge begin_rough_merge(SurgeryContext& ctx, Patch a, Patch b,
                               LatticeSpec merged_spec,
                               std::vector<Coord> seam, Rng& rng,
                               std::vector<LatticeSpec> spectators = {});
PendingMerge begin_smooth_merge(SurgeryContext& ctx, Patch a, Patch b,
                                LatticeSpec merged_spec,
                                std::vector<Coord> seam, Rng& rng,
                                std::vector<LatticeSpec> spectators = {});

// Staging variants: perform the frame resolutions and seam operations but
// leave activation to the caller, so several boundary operations can share
// one transition (the caller must activate the union of the staged specs
// before running further rounds).
PendingMerge stage_rough_merge(SurgeryContext& ctx, Patch a, Patch b,
                               LatticeSpec merged_spec,
                               std::vector<Coord> seam, Rng& rng);
PendingMerge stage_smooth_merge(SurgeryContext& ctx, Patch a, Patch b,
                                LatticeSpec merged_spec,
                                std::vector<Coord> seam, Rng& rng);

struct MergeResult {
  Patch patch;
  SignedValue outcome;  // the joint logical measurement
};

MergeResult finish_merge(const SurgeryContext& ctx, const PendingMerge& m);

// ---------------------------------------------------------------------------
// Splits.  A smooth split measures the seam data in X, cutting the patch
// into two along the X-chain direction: Z logicals continue into both
// halves, the X logical becomes the product of the halves' X logicals.
// A rough split is the dual (seam measured in Z).
//
// `begin_*` resolves the continuation frames over the still-active joint
// checks, measures the seam out and activates the halves; after at least
// one round `finish_split` resolves the product-logical frame (which may
// consume the seam measure-outs) and returns both patches.  The product
// frame lands on the first half; the second half's is zero.
// ---------------------------------------------------------------------------

struct PendingSplit {
  char kind = 'S';  // 'S' smooth (seam measured in X), 'R' rough (in Z)
  LatticeSpec spec1, spec2;
  Patch whole;
  SignedValue f1, f2;  // continuation frames for the kept logical
  std::vector<SignedOp> seam_mo;
};

PendingSplit begin_smooth_split(SurgeryContext& ctx, const Patch& whole,
                                LatticeSpec spec1, LatticeSpec spec2,
                                std::vector<Coord> seam, Rng& rng,
                                std::vector<LatticeSpec> spectators = {});
PendingSplit begin_rough_split(SurgeryContext& ctx, const Patch& whole,
                               LatticeSpec spec1, LatticeSpec spec2,
                               std::vector<Coord> seam, Rng& rng,
                               std::vector<LatticeSpec> spectators = {});

// Staging variants (no activation), as for merges.
PendingSplit stage_smooth_split(SurgeryContext& ctx, const Patch& whole,
                                LatticeSpec spec1, LatticeSpec spec2,
                                std::vector<Coord> seam, Rng& rng);
PendingSplit stage_rough_split(SurgeryContext& ctx, const Patch& whole,
                               LatticeSpec spec1, LatticeSpec spec2,
                               std::vector<Coord> seam, Rng& rng);

struct SplitResult {
  Patch p1, p2;
};

SplitResult finish_split(const SurgeryContext& ctx, const PendingSplit& s);

}  // namespace lsurg
