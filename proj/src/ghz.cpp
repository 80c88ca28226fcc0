#include <stdexcept>
#include <string>

#include "lsurg/layout.hpp"
#include "lsurg/protocols.hpp"

namespace lsurg {

namespace {

int mod2(int x) { return ((x % 2) + 2) % 2; }

}  // namespace

GhzSpecs ghz_specs(Encoding encoding, int d, int parties, char basis) {
  if (d < 2) throw std::invalid_argument("ghz_specs: need d >= 2");
  if (parties < 2) throw std::invalid_argument("ghz_specs: need >= 2 parties");
  if (basis != 'Z' && basis != 'X')
    throw std::invalid_argument("ghz_specs: basis must be 'Z' or 'X'");
  GhzSpecs gs;
  gs.d = d;
  gs.parties = parties;
  gs.basis = basis;
  const int s = encoding == Encoding::kStandard ? 2 * (d - 1) : d - 1;
  const int step = s + 2;
  // The pieces stack along the axis whose boundaries the splits cut across:
  // smooth seams (basis 'Z') are rows in the standard encoding and columns
  // in the rotated one; rough seams the other way around.
  const bool stack_rows = (basis == 'Z') == (encoding == Encoding::kStandard);
  auto block = [&](int off, int len) {
    const Coord lo = stack_rows ? Coord{off, 0} : Coord{0, off};
    const Coord hi = stack_rows ? Coord{off + len, s} : Coord{s, off + len};
    return make_patch_spec(encoding, lo, hi);
  };
  gs.whole = block(0, (parties - 1) * step + s);
  for (int i = 0; i < parties; ++i) gs.pieces.push_back(block(i * step, s));
  for (int i = 0; i + 1 < parties; ++i) {
    const int start = (i + 1) * step;
    gs.tails.push_back(block(start, (parties - 2 - i) * step + s));
    const int line = start - 1;
    std::vector<Coord> seam;
    for (int t = 0; t <= s; ++t) {
      const Coord site = stack_rows ? Coord{line, t} : Coord{t, line};
      if (encoding == Encoding::kRotated || mod2(site.r + site.c) == 0)
        seam.push_back(site);
    }
    gs.seams.push_back(std::move(seam));
  }
  gs.hull = gs.whole.data_sites;
  return gs;
}

GhzResult make_ghz(SurgeryContext& ctx, const GhzSpecs& gs, Rng& rng,
                   const ProtocolOptions& opt) {
  GhzResult out;
  out.report.protocol = "make_ghz";
  out.report.distance = gs.d;
  out.report.layout =
      std::to_string(gs.parties) + " d=" + std::to_string(gs.d) +
      " squares in a row, basis " + std::string(1, gs.basis);
  out.report.data_qubits = (int)gs.hull.size();
  out.report.syndrome_qubits = (int)gs.whole.plaquettes.size();
  out.report.total_qubits =
      out.report.data_qubits + out.report.syndrome_qubits;

  // One long patch in the +1 eigenstate of the product operator: |+>_L for
  // the Z-correlated state, |0>_L for the X-correlated one.
  const char prep = gs.basis == 'Z' ? 'X' : 'Z';
  for (const Coord& s : gs.whole.data_sites) ctx.init_data(s, prep, rng);
  ctx.activate({gs.whole});
  run_segment(ctx, gs.d, opt, rng);

  Patch cur = make_patch(gs.whole);
  const char cut = gs.basis == 'Z' ? 'X' : 'Z';
  std::vector<LatticeSpec> spectators;
  for (int i = 0; i + 1 < gs.parties; ++i) {
    const LatticeSpec& keep = gs.pieces[i];
    const LatticeSpec& rest =
        (i + 2 == gs.parties) ? gs.pieces[i + 1] : gs.tails[i];
    const int frame_before = (cut == 'Z' ? cur.fz : cur.fx).value;
    PendingSplit sp = gs.basis == 'Z'
                          ? begin_smooth_split(ctx, cur, keep, rest,
                                               gs.seams[i], rng, spectators)
                          : begin_rough_split(ctx, cur, keep, rest,
                                              gs.seams[i], rng, spectators);
    run_segment(ctx, gs.d, opt, rng);
    SplitResult halves = finish_split(ctx, sp);

    SplitRecord rec;
    rec.kind = gs.basis == 'Z' ? 'S' : 'R';
    rec.whole = "pieces[" + std::to_string(i) + ".." +
                std::to_string(gs.parties - 1) + "]";
    rec.outcome =
        ((cut == 'Z' ? halves.p1.fz : halves.p1.fx).value) ^ frame_before;
    rec.round = ctx.rounds_run();
    out.report.splits.push_back(rec);

    out.parties.push_back(halves.p1);
    spectators.push_back(keep);
    cur = halves.p2;
  }
  out.parties.push_back(cur);
  out.report.rounds = ctx.rounds_run();
  return out;
}

}  // namespace lsurg
