#include "lsurg/surgery.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace lsurg {

namespace {

std::vector<Coord>& ref_chain(Patch& p, char basis) {
  return basis == 'Z' ? p.ref_z : p.ref_x;
}

const std::vector<Coord>& ref_chain(const Patch& p, char basis) {
  return basis == 'Z' ? p.ref_z : p.ref_x;
}

SignedValue& frame_bit(Patch& p, char basis) {
  return basis == 'Z' ? p.fz : p.fx;
}

const SignedValue& frame_bit(const Patch& p, char basis) {
  return basis == 'Z' ? p.fz : p.fx;
}

const std::vector<Coord>& canonical_chain(const LatticeSpec& spec, char basis) {
  return basis == 'Z' ? spec.logical_z : spec.logical_x;
}

PauliString chain_op(const SurgeryContext& ctx, const std::vector<Coord>& sites,
                     char letter) {
  return ctx.layout().chain_operator(sites, letter);
}

SignedValue resolve_or_throw(const SurgeryContext& ctx,
                             const PauliString& target, const char* what) {
  std::optional<SignedValue> r = ctx.resolve_chain(target);
  if (!r) {
    throw std::logic_error(std::string("surgery: cannot resolve ") + what +
                           " over the active checks");
  }
  return *r;
}

// The logical chains being joined must sit on one common grid line; the
// merged chain is their union plus the seam data sites on that line.
std::vector<Coord> joined_chain(const std::vector<Coord>& ca,
                                const std::vector<Coord>& cb,
                                const std::vector<Coord>& seam) {
  std::vector<Coord> out = ca;
  out.insert(out.end(), cb.begin(), cb.end());
  if (out.empty()) throw std::logic_error("surgery: empty logical chains");
  bool same_row = true, same_col = true;
  for (const Coord& s : out) {
    same_row = same_row && s.r == out.front().r;
    same_col = same_col && s.c == out.front().c;
  }
  if (same_row == same_col) {
    throw std::logic_error("surgery: joined logical chains are not collinear");
  }
  for (const Coord& s : seam) {
    if (same_row ? s.r == out.front().r : s.c == out.front().c) {
      out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void assert_logical(const SurgeryContext& ctx, const PauliString& op,
                    const char* what) {
  for (int sid : ctx.active_slot_ids()) {
    if (!op.commutes(ctx.slot(sid).op)) {
      throw std::logic_error(std::string("surgery: ") + what +
                             " anticommutes with an active check");
    }
  }
}

PendingMerge stage_merge(char kind, SurgeryContext& ctx, Patch a, Patch b,
                         LatticeSpec merged_spec, std::vector<Coord> seam,
                         Rng& rng) {
  // Anchor both halves on their canonical chains while their own checks are
  // still active; finish_merge can then reason over fixed representatives.
  reanchor(ctx, a, 'Z', a.spec.logical_z);
  reanchor(ctx, a, 'X', a.spec.logical_x);
  reanchor(ctx, b, 'Z', b.spec.logical_z);
  reanchor(ctx, b, 'X', b.spec.logical_x);
  const char seam_basis = kind == 'R' ? 'Z' : 'X';
  for (const Coord& s : seam) ctx.init_data(s, seam_basis, rng);
  PendingMerge pm;
  pm.kind = kind;
  pm.a = std::move(a);
  pm.b = std::move(b);
  pm.merged_spec = std::move(merged_spec);
  pm.seam = std::move(seam);
  return pm;
}

PendingMerge begin_merge(char kind, SurgeryContext& ctx, Patch a, Patch b,
                         LatticeSpec merged_spec, std::vector<Coord> seam,
                         Rng& rng, std::vector<LatticeSpec> spectators) {
  PendingMerge pm = stage_merge(kind, ctx, std::move(a), std::move(b),
                                std::move(merged_spec), std::move(seam), rng);
  std::vector<LatticeSpec> specs;
  specs.reserve(1 + spectators.size());
  specs.push_back(pm.merged_spec);
  for (LatticeSpec& sp : spectators) specs.push_back(std::move(sp));
  ctx.activate(std::move(specs));
  return pm;
}

PendingSplit stage_split(char kind, SurgeryContext& ctx, const Patch& whole,
                         LatticeSpec spec1, LatticeSpec spec2,
                         std::vector<Coord> seam, Rng& rng) {
  const char cut = kind == 'S' ? 'X' : 'Z';   // seam measurement basis
  const char kept = kind == 'S' ? 'Z' : 'X';  // logical continuing into halves
  PendingSplit ps;
  ps.kind = kind;
  ps.spec1 = std::move(spec1);
  ps.spec2 = std::move(spec2);
  ps.whole = whole;
  // The kept logical continues into each half; the chain moves resolve
  // against the joint patch's checks, which die at the next activation, so
  // fix the continuation frames now.
  const PauliString whole_kept = chain_op(ctx, ref_chain(whole, kept), kept);
  auto continuation = [&](const LatticeSpec& half) {
    PauliString diff =
        whole_kept * chain_op(ctx, canonical_chain(half, kept), kept);
    return frame_bit(whole, kept) ^
           resolve_or_throw(ctx, diff, "split continuation");
  };
  ps.f1 = continuation(ps.spec1);
  ps.f2 = continuation(ps.spec2);
  for (const Coord& s : seam) {
    SignedOp mo;
    mo.op = ctx.layout().site_operator(s, cut);
    mo.value = ctx.measure_out(s, cut, rng);
    ps.seam_mo.push_back(std::move(mo));
  }
  return ps;
}

PendingSplit begin_split(char kind, SurgeryContext& ctx, const Patch& whole,
                         LatticeSpec spec1, LatticeSpec spec2,
                         std::vector<Coord> seam, Rng& rng,
                         std::vector<LatticeSpec> spectators) {
  PendingSplit ps = stage_split(kind, ctx, whole, std::move(spec1),
                                std::move(spec2), std::move(seam), rng);
  std::vector<LatticeSpec> specs;
  specs.reserve(2 + spectators.size());
  specs.push_back(ps.spec1);
  specs.push_back(ps.spec2);
  for (LatticeSpec& sp : spectators) specs.push_back(std::move(sp));
  ctx.activate(std::move(specs));
  return ps;
}

}  // namespace

Patch make_patch(const LatticeSpec& spec) {
  Patch p;
  p.spec = spec;
  p.ref_z = spec.logical_z;
  p.ref_x = spec.logical_x;
  return p;
}

SignedValue logical_readout(const SurgeryContext& ctx, const Patch& p,
                            char basis) {
  return ctx.chain_parity(ref_chain(p, basis)) ^ frame_bit(p, basis);
}

void reanchor(const SurgeryContext& ctx, Patch& p, char basis,
              std::vector<Coord> chain) {
  if (chain == ref_chain(p, basis)) return;
  PauliString diff = chain_op(ctx, ref_chain(p, basis), basis) *
                     chain_op(ctx, chain, basis);
  frame_bit(p, basis) ^= resolve_or_throw(ctx, diff, "re-anchoring move");
  ref_chain(p, basis) = std::move(chain);
}

PendingMerge begin_rough_merge(SurgeryContext& ctx, Patch a, Patch b,
                               LatticeSpec merged_spec,
                               std::vector<Coord> seam, Rng& rng,
                               std::vector<LatticeSpec> spectators) {
  return begin_merge('R', ctx, std::move(a), std::move(b),
                     std::move(merged_spec), std::move(seam), rng,
                     std::move(spectators));
}

PendingMerge begin_smooth_merge(SurgeryContext& ctx, Patch a, Patch b,
                                LatticeSpec merged_spec,
                                std::vector<Coord> seam, Rng& rng,
                                std::vector<LatticeSpec> spectators) {
  return begin_merge('S', ctx, std::move(a), std::move(b),
                     std::move(merged_spec), std::move(seam), rng,
                     std::move(spectators));
}

PendingMerge stage_rough_merge(SurgeryContext& ctx, Patch a, Patch b,
                               LatticeSpec merged_spec,
                               std::vector<Coord> seam, Rng& rng) {
  return stage_merge('R', ctx, std::move(a), std::move(b),
                     std::move(merged_spec), std::move(seam), rng);
}

PendingMerge stage_smooth_merge(SurgeryContext& ctx, Patch a, Patch b,
                                LatticeSpec merged_spec,
                                std::vector<Coord> seam, Rng& rng) {
  return stage_merge('S', ctx, std::move(a), std::move(b),
                     std::move(merged_spec), std::move(seam), rng);
}

MergeResult finish_merge(const SurgeryContext& ctx, const PendingMerge& m) {
  const char cut = m.kind == 'R' ? 'X' : 'Z';   // the measured joint letter
  const char kept = m.kind == 'R' ? 'Z' : 'X';  // the surviving product
  // Joint outcome: after the merge both halves' cut logicals represent the
  // same merged logical, so their product lies in the new check span and its
  // resolved sign, frame-corrected, is the joint measurement result.
  PauliString joint = chain_op(ctx, ref_chain(m.a, cut), cut) *
                      chain_op(ctx, ref_chain(m.b, cut), cut);
  SignedValue outcome = resolve_or_throw(ctx, joint, "joint merge outcome");
  outcome ^= frame_bit(m.a, cut);
  outcome ^= frame_bit(m.b, cut);

  Patch merged;
  merged.spec = m.merged_spec;
  // Product logical: the halves' chains joined across the seam; its frame is
  // the XOR of the halves' frames.
  ref_chain(merged, kept) =
      joined_chain(ref_chain(m.a, kept), ref_chain(m.b, kept), m.seam);
  frame_bit(merged, kept) = frame_bit(m.a, kept) ^ frame_bit(m.b, kept);
  // Continued logical: the merged patch carries on the first half's cut
  // logical; move its anchor to the merged canonical chain.
  ref_chain(merged, cut) = canonical_chain(merged.spec, cut);
  PauliString step = chain_op(ctx, ref_chain(m.a, cut), cut) *
                     chain_op(ctx, ref_chain(merged, cut), cut);
  frame_bit(merged, cut) =
      frame_bit(m.a, cut) ^ resolve_or_throw(ctx, step, "continued logical");
  assert_logical(ctx, chain_op(ctx, merged.ref_z, 'Z'), "merged Z logical");
  assert_logical(ctx, chain_op(ctx, merged.ref_x, 'X'), "merged X logical");
  return {std::move(merged), std::move(outcome)};
}

PendingSplit begin_smooth_split(SurgeryContext& ctx, const Patch& whole,
                                LatticeSpec spec1, LatticeSpec spec2,
                                std::vector<Coord> seam, Rng& rng,
                                std::vector<LatticeSpec> spectators) {
  return begin_split('S', ctx, whole, std::move(spec1), std::move(spec2),
                     std::move(seam), rng, std::move(spectators));
}

PendingSplit begin_rough_split(SurgeryContext& ctx, const Patch& whole,
                               LatticeSpec spec1, LatticeSpec spec2,
                               std::vector<Coord> seam, Rng& rng,
                               std::vector<LatticeSpec> spectators) {
  return begin_split('R', ctx, whole, std::move(spec1), std::move(spec2),
                     std::move(seam), rng, std::move(spectators));
}

PendingSplit stage_smooth_split(SurgeryContext& ctx, const Patch& whole,
                                LatticeSpec spec1, LatticeSpec spec2,
                                std::vector<Coord> seam, Rng& rng) {
  return stage_split('S', ctx, whole, std::move(spec1), std::move(spec2),
                     std::move(seam), rng);
}

PendingSplit stage_rough_split(SurgeryContext& ctx, const Patch& whole,
                               LatticeSpec spec1, LatticeSpec spec2,
                               std::vector<Coord> seam, Rng& rng) {
  return stage_split('R', ctx, whole, std::move(spec1), std::move(spec2),
                     std::move(seam), rng);
}

SplitResult finish_split(const SurgeryContext& ctx, const PendingSplit& s) {
  const char cut = s.kind == 'S' ? 'X' : 'Z';
  const char kept = s.kind == 'S' ? 'Z' : 'X';
  Patch p1 = make_patch(s.spec1);
  Patch p2 = make_patch(s.spec2);
  frame_bit(p1, kept) = s.f1;
  frame_bit(p2, kept) = s.f2;
  // The whole patch's cut logical survives as the product of the halves';
  // the chain difference resolves over the live checks plus the seam
  // measure-outs.  By convention the product sign lands on the first half.
  const Patch& cp1 = p1;
  const Patch& cp2 = p2;
  PauliString target = chain_op(ctx, ref_chain(s.whole, cut), cut) *
                       chain_op(ctx, ref_chain(cp1, cut), cut) *
                       chain_op(ctx, ref_chain(cp2, cut), cut);
  std::vector<SignedOp> pool = ctx.expected_pool();
  pool.insert(pool.end(), s.seam_mo.begin(), s.seam_mo.end());
  std::optional<SignedValue> r = resolve_pool(target, pool);
  if (!r) {
    throw std::logic_error(
        "surgery: cannot resolve the split pair logical over the active "
        "checks and seam measurements");
  }
  frame_bit(p1, cut) = frame_bit(s.whole, cut) ^ *r;
  // No commutation check on the halves here: in a composite transition one
  // half may have been staged straight into a further merge, in which case
  // its lone logicals are deliberately not logicals of the active set.
  return {std::move(p1), std::move(p2)};
}

}  // namespace lsurg
