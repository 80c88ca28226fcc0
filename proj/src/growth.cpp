#include <algorithm>
#include <stdexcept>

#include "lsurg/layout.hpp"
#include "lsurg/protocols.hpp"

namespace lsurg {

namespace {

int mod2(int x) { return ((x % 2) + 2) % 2; }

int square_distance(const LatticeSpec& spec) {
  return (spec.hi.r - spec.lo.r) / 2 + 1;
}

}  // namespace

std::vector<Coord> grow_hull(const LatticeSpec& spec, int new_d) {
  const int span = 2 * (new_d - 1);
  Coord hi{spec.lo.r + std::max(spec.hi.r - spec.lo.r, span),
           spec.lo.c + std::max(spec.hi.c - spec.lo.c, span)};
  return region_rect(spec.encoding, spec.lo, hi);
}

Patch grow_patch(SurgeryContext& ctx, Patch p, int new_d, Rng& rng,
                 const ProtocolOptions& opt) {
  if (p.spec.encoding != Encoding::kStandard)
    throw std::invalid_argument("grow_patch: standard encoding only");
  if (p.spec.hi.r - p.spec.lo.r != p.spec.hi.c - p.spec.lo.c)
    throw std::invalid_argument("grow_patch: patch must be square");
  const int d0 = square_distance(p.spec);
  if (new_d <= d0)
    throw std::invalid_argument(
        "grow_patch: new_d must exceed the current distance");

  for (int d = d0; d < new_d; ++d) {
    // One increment: absorb a strip across the rough boundary, then one
    // across the smooth boundary, extending towards +r/+c so lo stays put.
    const bool rough_lr = p.spec.boundaries.right == BoundaryLabel::kRough;
    for (const bool rough : {true, false}) {
      const Coord lo = p.spec.lo, hi = p.spec.hi;
      // The strip sits two grid lines past the boundary it joins across.
      const bool col_strip = rough ? rough_lr : !rough_lr;
      const Coord slo = col_strip ? Coord{lo.r, hi.c + 2} : Coord{hi.r + 2, lo.c};
      const Coord shi = col_strip ? Coord{hi.r, hi.c + 2} : Coord{hi.r + 2, hi.c};
      LatticeSpec strip =
          make_patch_spec(p.spec.encoding, slo, shi, p.spec.parity_flip);
      LatticeSpec merged = make_patch_spec(
          p.spec.encoding, lo,
          col_strip ? Coord{hi.r, hi.c + 2} : Coord{hi.r + 2, hi.c},
          p.spec.parity_flip);
      std::vector<Coord> seam;
      if (col_strip) {
        for (int r = lo.r; r <= hi.r; ++r)
          if (mod2(r + hi.c + 1) == 0) seam.push_back({r, hi.c + 1});
      } else {
        for (int c = lo.c; c <= hi.c; ++c)
          if (mod2(hi.r + 1 + c) == 0) seam.push_back({hi.r + 1, c});
      }
      // Product prep makes the strip's sliver of the extended chain read a
      // deterministic +1, so the junction outcome is information-free and
      // the patch logicals keep their values and frames.
      const char prep = rough ? 'Z' : 'X';
      for (const Coord& s : strip.data_sites) ctx.init_data(s, prep, rng);
      PendingMerge m =
          rough ? begin_rough_merge(ctx, p, make_patch(strip), merged, seam, rng)
                : begin_smooth_merge(ctx, p, make_patch(strip), merged, seam,
                                     rng);
      run_segment(ctx, rough ? d : d + 1, opt, rng);
      p = finish_merge(ctx, m).patch;
    }
  }
  return p;
}

}  // namespace lsurg
