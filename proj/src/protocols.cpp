#include "lsurg/protocols.hpp"

#include <stdexcept>

#include "lsurg/layout.hpp"

namespace lsurg {

void run_segment(SurgeryContext& ctx, int k, const ProtocolOptions& opt,
                 Rng& rng) {
  for (int i = 0; i < k; ++i) {
    if (opt.before_round) opt.before_round(ctx, ctx.rounds_run());
    int r = ctx.run_round(opt.noise, opt.mode, rng);
    if (opt.after_round) opt.after_round(ctx, r);
  }
}

CnotSpecs cnot_specs(Encoding encoding, int d) {
  if (d < 2) throw std::invalid_argument("cnot_specs: need d >= 2");
  CnotSpecs cs;
  cs.d = d;
  if (encoding == Encoding::kStandard) {
    const int s = 2 * (d - 1);
    // Control on top, strip below it (smooth junction), target beside the
    // strip (rough junction).
    cs.control = make_patch_spec(encoding, {0, 0}, {s, s});
    cs.intermediate = make_patch_spec(encoding, {s + 2, 0}, {2 * s + 2, s});
    cs.control_wide = make_patch_spec(encoding, {0, 0}, {2 * s + 2, s});
    cs.target =
        make_patch_spec(encoding, {s + 2, s + 2}, {2 * s + 2, 2 * s + 2});
    cs.target_merged =
        make_patch_spec(encoding, {s + 2, 0}, {2 * s + 2, 2 * s + 2});
    for (int c = 0; c <= s; ++c) {
      if ((s + 1 + c) % 2 == 0) cs.seam1.push_back({s + 1, c});
    }
    for (int r = s + 2; r <= 2 * s + 2; ++r) {
      if ((r + s + 1) % 2 == 0) cs.seam2.push_back({r, s + 1});
    }
  } else {
    const int s = d - 1;
    // Control on the left, strip beside it, target below the strip.
    cs.control = make_patch_spec(encoding, {0, 0}, {s, s});
    cs.intermediate = make_patch_spec(encoding, {0, s + 2}, {s, 2 * s + 2});
    cs.control_wide = make_patch_spec(encoding, {0, 0}, {s, 2 * s + 2});
    cs.target =
        make_patch_spec(encoding, {s + 2, s + 2}, {2 * s + 2, 2 * s + 2});
    cs.target_merged =
        make_patch_spec(encoding, {0, s + 2}, {2 * s + 2, 2 * s + 2});
    for (int r = 0; r <= s; ++r) cs.seam1.push_back({r, s + 1});
    for (int c = s + 2; c <= 2 * s + 2; ++c) cs.seam2.push_back({s + 1, c});
  }
  cs.hull = region_union({cs.control_wide.data_sites, cs.target.data_sites,
                          cs.seam2});
  return cs;
}

CnotResult cnot_sequential(SurgeryContext& ctx, const Patch& control,
                           const Patch& target, const CnotSpecs& cs, Rng& rng,
                           const ProtocolOptions& opt) {
  const int r0 = ctx.rounds_run();
  // Step 1: bring up the ancilla strip in |+> and measure its ZZ with the
  // control by joining across the smooth seam.
  for (const Coord& c : cs.intermediate.data_sites) ctx.init_data(c, 'X', rng);
  Patch strip = make_patch(cs.intermediate);
  PendingMerge m1 = begin_smooth_merge(ctx, control, strip, cs.control_wide,
                                       cs.seam1, rng, {cs.target});
  run_segment(ctx, cs.d, opt, rng);
  MergeResult zz = finish_merge(ctx, m1);

  // Step 2: cut the strip back off; its Z logical keeps the control's value.
  PendingSplit sp = begin_smooth_split(ctx, zz.patch, cs.control,
                                       cs.intermediate, cs.seam1, rng,
                                       {cs.target});
  run_segment(ctx, cs.d, opt, rng);
  SplitResult halves = finish_split(ctx, sp);

  // Step 3: absorb the strip into the target across the rough seam; the
  // joint patch carries on as the target.
  PendingMerge m2 = begin_rough_merge(ctx, target, halves.p2,
                                      cs.target_merged, cs.seam2, rng,
                                      {cs.control});
  run_segment(ctx, cs.d, opt, rng);
  MergeResult xx = finish_merge(ctx, m2);

  CnotResult res;
  res.control = halves.p1;
  res.target = xx.patch;
  res.m_zz = zz.outcome;
  res.m_xx = xx.outcome;
  // Only the XX outcome needs a byproduct correction (on the control's X
  // frame).  The ZZ outcome is information-free here: the split re-creates
  // the control/strip pair with their Z logicals copied from the joint
  // patch, so the pair always leaves the junction ZZ-correlated.
  res.control.fx ^= res.m_xx;
  res.rounds_used = ctx.rounds_run() - r0;
  return res;
}

CnotResult cnot_fused(SurgeryContext& ctx, const Patch& wide_control,
                      const Patch& target, const CnotSpecs& cs, Rng& rng,
                      const ProtocolOptions& opt) {
  const int r0 = ctx.rounds_run();
  // One transition: the strip is cut off the wide control (seam1 measured
  // out) and joined to the target (seam2 initialized) in the same step, so
  // only one d-round stabilization window is paid for.
  PendingSplit sp = stage_smooth_split(ctx, wide_control, cs.control,
                                       cs.intermediate, cs.seam1, rng);
  PendingMerge m2 = stage_rough_merge(ctx, target, make_patch(cs.intermediate),
                                      cs.target_merged, cs.seam2, rng);
  ctx.activate({cs.control, cs.target_merged});
  run_segment(ctx, cs.d, opt, rng);

  SplitResult halves = finish_split(ctx, sp);
  m2.b = halves.p2;  // the strip's frames only exist once the split resolves
  MergeResult xx = finish_merge(ctx, m2);

  CnotResult res;
  res.control = halves.p1;
  res.target = xx.patch;
  // No ZZ byproduct: the wide control's Z value is copied, not XOR-shifted,
  // into the strip by the split.
  res.m_xx = xx.outcome;
  res.control.fx ^= res.m_xx;
  res.rounds_used = ctx.rounds_run() - r0;
  return res;
}

void transversal_cnot(SurgeryContext& ctx, const LatticeSpec& control,
                      const LatticeSpec& target) {
  const int dr = target.lo.r - control.lo.r;
  const int dc = target.lo.c - control.lo.c;
  if (target.hi.r - dr != control.hi.r || target.hi.c - dc != control.hi.c ||
      target.encoding != control.encoding) {
    throw std::invalid_argument("transversal_cnot: patches not congruent");
  }
  for (const Coord& site : control.data_sites) {
    Coord partner{site.r + dr, site.c + dc};
    ctx.tableau().apply_cnot(ctx.layout().data_qubit(site),
                             ctx.layout().data_qubit(partner));
  }
}

}  // namespace lsurg
