#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lsurg/layout.hpp"
#include "lsurg/protocols.hpp"

namespace lsurg {

namespace {

// Mirror the per-gate depolarizing convention used by the circuit-level
// rounds: with probability p_gate, one of the 15 nontrivial two-qubit Pauli
// faults lands on the swapped pair.
void swap_layer_noise(SurgeryContext& ctx,
                      const std::vector<std::pair<Coord, Coord>>& pairs,
                      const NoiseModel& noise, Rng& rng) {
  if (noise.p_gate <= 0) return;
  const Layout& lay = ctx.layout();
  const auto qubit = [&](Coord s) {
    return lay.has_data(s) ? lay.data_qubit(s) : lay.ancilla_qubit(s);
  };
  static const char kLetters[] = {'I', 'X', 'Y', 'Z'};
  for (const auto& [a, b] : pairs) {
    if (!rng.bernoulli(noise.p_gate)) continue;
    const int k = 1 + static_cast<int>(rng.below(15));
    PauliString fault(ctx.tableau().n());
    if (k & 3) fault.set_letter(qubit(a), kLetters[k & 3]);
    if ((k >> 2) & 3) fault.set_letter(qubit(b), kLetters[(k >> 2) & 3]);
    ctx.apply_pauli(fault);
  }
}

}  // namespace

std::vector<Coord> hadamard_hull(const LatticeSpec& spec) {
  // Room for the one-unit enlargement used mid-protocol.
  return region_rect(spec.encoding, spec.lo,
                     {spec.hi.r + 2, spec.hi.c + 2});
}

HadamardResult hadamard_rotate(SurgeryContext& ctx, const Patch& start,
                               Rng& rng, const ProtocolOptions& opt) {
  if (start.spec.encoding != Encoding::kStandard)
    throw std::invalid_argument("hadamard_rotate: standard encoding only");
  if (start.spec.hi.r - start.spec.lo.r != start.spec.hi.c - start.spec.lo.c)
    throw std::invalid_argument("hadamard_rotate: patch must be square");
  if (ctx.segments().empty() || ctx.segments().back().specs.size() != 1)
    throw std::logic_error(
        "hadamard_rotate: patch must be the only active one");
  const Coord lo = start.spec.lo;
  const Coord hi = start.spec.hi;
  const int d = (hi.r - lo.r) / 2 + 1;
  const int round0 = ctx.rounds_run();

  // Stage 1: transversal Hadamard.  Every check conjugates to the opposite
  // type in place, so the fabric is now the parity-flipped layout on the
  // same footprint, with the two logical chains exchanged.
  ctx.apply_transversal_h(start.spec.data_sites);
  Patch p = start;
  p.spec = make_patch_spec(Encoding::kStandard, lo, hi,
                           !start.spec.parity_flip);
  std::swap(p.ref_z, p.ref_x);
  std::swap(p.fz, p.fx);

  // Stage 2: expand by one unit so the later corner carving cannot bite
  // into the logical minimum-weight chains.
  p = grow_patch(ctx, p, d + 1, rng, opt);
  const LatticeSpec big = p.spec;

  // Work in (u, v) axes with the u axis crossing the rough boundary lines;
  // this folds the two possible orientations into one construction.
  const bool u_is_row = big.boundaries.top == BoundaryLabel::kRough;
  const auto site = [&](int u, int v) {
    return u_is_row ? Coord{u, v} : Coord{v, u};
  };
  const int lu = u_is_row ? big.lo.r : big.lo.c;
  const int lv = u_is_row ? big.lo.c : big.lo.r;
  const int hu = u_is_row ? big.hi.r : big.hi.c;
  const int hv = u_is_row ? big.hi.c : big.hi.r;
  const int len = hu - lu;

  // Move both anchors onto straight interior lines, two steps in from the
  // boundary, so the carving below never touches a representative.
  {
    std::vector<Coord> z_line, x_line;
    for (int u = lu; u <= hu; u += 2) z_line.push_back(site(u, lv + 2));
    for (int v = lv; v <= hv; v += 2) x_line.push_back(site(lu + 2, v));
    std::sort(z_line.begin(), z_line.end());
    std::sort(x_line.begin(), x_line.end());
    reanchor(ctx, p, 'Z', z_line);
    reanchor(ctx, p, 'X', x_line);
  }

  // Diagonal logical representatives for the carved fabric.
  std::vector<Coord> z_diag, x_diag;
  for (int t = 1; t < len; ++t) {
    z_diag.push_back(site(lu + t, hv - t));
    x_diag.push_back(site(lu + t, lv + t));
  }
  std::sort(z_diag.begin(), z_diag.end());
  std::sort(x_diag.begin(), x_diag.end());

  // Stage 3: carve the four corners.  Each carve truncates the two checks
  // next to the corner; keeping exactly one remnant per corner, alternating
  // in type around the patch, slides the point where the boundary changes
  // character half a step around the perimeter.  The result is a pinwheel
  // whose four boundary segments each end on a diagonal, with the logical
  // chains running corner to corner along the two diagonals.
  const Coord corners[4] = {site(lu, lv), site(lu, hv), site(hu, hv),
                            site(hu, lv)};
  const Coord kept_keys[4] = {site(lu + 1, lv), site(lu, hv - 1),
                              site(hu - 1, hv), site(hu, lv + 1)};
  const Coord drop_keys[4] = {site(lu, lv + 1), site(lu + 1, hv),
                              site(hu, hv - 1), site(hu - 1, lv)};
  for (const Coord& c : corners) ctx.measure_out(c, 'Z', rng);

  LatticeSpec mid = big;
  {
    const std::set<Coord> cut(corners, corners + 4);
    const std::set<Coord> keep(kept_keys, kept_keys + 4);
    const std::set<Coord> drop(drop_keys, drop_keys + 4);
    std::vector<Coord> data;
    for (const Coord& s : mid.data_sites)
      if (!cut.count(s)) data.push_back(s);
    mid.data_sites = std::move(data);
    std::vector<Plaquette> checks;
    for (const Plaquette& pl : mid.plaquettes) {
      std::vector<Coord> support;
      for (const Coord& s : pl.data)
        if (!cut.count(s)) support.push_back(s);
      if (support.size() == pl.data.size()) {
        checks.push_back(pl);
        continue;
      }
      if (drop.count(pl.key)) continue;
      if (!keep.count(pl.key))
        throw std::logic_error("hadamard_rotate: unexpected truncated check");
      Plaquette trimmed = pl;
      trimmed.data = std::move(support);
      checks.push_back(trimmed);
    }
    mid.plaquettes = std::move(checks);
    mid.logical_z = z_diag;
    mid.logical_x = x_diag;
    if (static_cast<int>(mid.data_sites.size()) -
            static_cast<int>(mid.plaquettes.size()) !=
        1)
      throw std::logic_error("hadamard_rotate: pinwheel bookkeeping is off");
  }
  ctx.activate({mid});
  run_segment(ctx, d, opt, rng);
  reanchor(ctx, p, 'Z', z_diag);
  reanchor(ctx, p, 'X', x_diag);
  p.spec = mid;

  // Stage 4: contract.  Measuring the outer ring out in Z leaves the
  // interior square, which sits rotated 45 degrees inside the pinwheel and
  // carries the original boundary orientation.
  const LatticeSpec inner =
      make_patch_spec(Encoding::kStandard, {lo.r + 1, lo.c + 1},
                      {hi.r + 1, hi.c + 1}, big.parity_flip);
  {
    const std::set<Coord> keep(inner.data_sites.begin(),
                               inner.data_sites.end());
    for (const Coord& s : mid.data_sites)
      if (!keep.count(s)) ctx.measure_out(s, 'Z', rng);
  }
  ctx.activate({inner});
  run_segment(ctx, d, opt, rng);
  p.spec = inner;

  // Stage 5: two parallel layers of nearest-neighbour swaps translate the
  // square one half-spacing up and one left, back onto the original
  // footprint.  The diagonal hop must route through the ancilla sites in
  // between, hence two layers; each is a disjoint set of swaps.
  std::vector<std::pair<Coord, Coord>> hop_up, hop_left;
  for (const Coord& s : inner.data_sites) {
    hop_up.push_back({s, {s.r - 1, s.c}});
    hop_left.push_back({Coord{s.r - 1, s.c}, Coord{s.r - 1, s.c - 1}});
  }
  ctx.apply_swap_layer(hop_up);
  swap_layer_noise(ctx, hop_up, opt.noise, rng);
  ctx.apply_swap_layer(hop_left);
  swap_layer_noise(ctx, hop_left, opt.noise, rng);

  // Stage 6: the translated checks coincide with the original layout, so
  // reactivating it inherits every stabilizer value; the logicals ride
  // along and re-anchor onto the canonical chains.
  ctx.activate({start.spec});
  run_segment(ctx, d, opt, rng);
  p.spec = start.spec;
  for (Coord& s : p.ref_z) {
    s.r -= 1;
    s.c -= 1;
  }
  for (Coord& s : p.ref_x) {
    s.r -= 1;
    s.c -= 1;
  }
  reanchor(ctx, p, 'Z', start.spec.logical_z);
  reanchor(ctx, p, 'X', start.spec.logical_x);

  HadamardResult out;
  out.patch = p;
  out.report.protocol = "hadamard_rotate";
  out.report.layout = "standard";
  out.report.distance = d;
  out.report.rounds = ctx.rounds_run() - round0;
  out.report.data_qubits = static_cast<int>(big.data_sites.size());
  out.report.syndrome_qubits = static_cast<int>(big.plaquettes.size());
  out.report.total_qubits = out.report.data_qubits + out.report.syndrome_qubits;
  out.report.notes.push_back("stages: transversal H, grow, carve corners, "
                             "contract, swap back");
  return out;
}

}  // namespace lsurg
