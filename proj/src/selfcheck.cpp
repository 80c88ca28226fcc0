#include "lsurg/selfcheck.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <optional>
#include <sstream>

#include "lsurg/decoder.hpp"
#include "lsurg/experiments.hpp"
#include "lsurg/matching.hpp"
#include "lsurg/protocols.hpp"

namespace lsurg {
namespace {

const NoiseModel kQuiet{};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

// Accumulates comparisons; remembers the first mismatch.
struct Verdict {
  bool ok = true;
  int checked = 0;
  std::string why;

  void expect(bool cond, const std::string& msg) {
    ++checked;
    if (ok && !cond) {
      ok = false;
      why = msg;
    }
  }
  void eq(int64_t got, int64_t want, const std::string& what) {
    expect(got == want, what + ": got " + std::to_string(got) + ", want " +
                            std::to_string(want));
  }
  void opt_eq(const std::optional<int>& got, const std::optional<int>& want,
              const std::string& what) {
    auto show = [](const std::optional<int>& v) {
      return v.has_value() ? std::to_string(*v) : std::string("undefined");
    };
    expect(got == want, what + ": got " + show(got) + ", want " + show(want));
  }
  CheckResult wrap(const std::string& pass_detail) const {
    CheckResult r;
    r.pass = ok;
    r.detail = ok ? pass_detail : why;
    return r;
  }
};

// ---------------------------------------------------------------------------
// State preparation and logical-value probes shared by the checks.
// ---------------------------------------------------------------------------

void prep_all(SurgeryContext& ctx, const LatticeSpec& spec, char basis,
              Rng& rng) {
  for (const Coord& c : spec.data_sites) ctx.init_data(c, basis, rng);
}

void prep_logical(SurgeryContext& ctx, const LatticeSpec& spec, char basis,
                  int value, Rng& rng) {
  prep_all(ctx, spec, basis, rng);
  if (value) {
    const auto& chain = basis == 'Z' ? spec.logical_x : spec.logical_z;
    ctx.apply_pauli(
        ctx.layout().chain_operator(chain, basis == 'Z' ? 'X' : 'Z'));
  }
}

// Frame-corrected tableau sign of a patch logical, or nullopt when the state
// is not an eigenstate of it.
std::optional<int> interp_sign(const SurgeryContext& ctx, const Patch& p,
                               char basis) {
  const auto& chain = basis == 'Z' ? p.ref_z : p.ref_x;
  auto gs = ctx.tableau().group_sign(ctx.layout().chain_operator(chain, basis));
  if (!gs.has_value()) return std::nullopt;
  return *gs ^ (basis == 'Z' ? p.fz : p.fx).value;
}

// Frame-corrected eigenvalue of the logical Y = i * X-chain * Z-chain.
std::optional<int> interp_y(const SurgeryContext& ctx, const Patch& p) {
  PauliString op = ctx.layout().chain_operator(p.ref_x, 'X') *
                   ctx.layout().chain_operator(p.ref_z, 'Z');
  op.set_phase((op.phase() + 1) & 3);
  auto gs = ctx.tableau().group_sign(op);
  if (!gs.has_value()) return std::nullopt;
  return *gs ^ p.fz.value ^ p.fx.value;
}

// Frame-corrected sign of the product of two patches' logicals.
std::optional<int> pair_sign(const SurgeryContext& ctx, const Patch& p1,
                             const Patch& p2, char basis) {
  const auto& c1 = basis == 'Z' ? p1.ref_z : p1.ref_x;
  const auto& c2 = basis == 'Z' ? p2.ref_z : p2.ref_x;
  PauliString op = ctx.layout().chain_operator(c1, basis) *
                   ctx.layout().chain_operator(c2, basis);
  auto gs = ctx.tableau().group_sign(op);
  if (!gs.has_value()) return std::nullopt;
  return *gs ^ (basis == 'Z' ? p1.fz : p1.fx).value ^
         (basis == 'Z' ? p2.fz : p2.fx).value;
}

std::optional<int> chain_sign(const SurgeryContext& ctx,
                              const std::vector<Coord>& chain, char letter) {
  return ctx.tableau().group_sign(ctx.layout().chain_operator(chain, letter));
}

const Plaquette* find_plaquette(const LatticeSpec& spec, Coord key) {
  for (const Plaquette& p : spec.plaquettes) {
    if (p.key == key) return &p;
  }
  return nullptr;
}

// Sign bit of a check operator in the current tableau.
std::optional<int> check_sign(const SurgeryContext& ctx,
                              const LatticeSpec& spec, Coord key) {
  const Plaquette* plq = find_plaquette(spec, key);
  if (plq == nullptr) return std::nullopt;
  return ctx.tableau().group_sign(ctx.layout().check_operator(*plq));
}

bool fresh_refs_all_zero(const SurgeryContext& ctx) {
  for (int id : ctx.active_slot_ids()) {
    const SlotInstance& s = ctx.slot(id);
    if (s.fresh && s.expected.value != 0) return false;
  }
  return true;
}

// First-outcome reference of the active check keyed at `key`.
std::optional<int> fresh_ref_value(const SurgeryContext& ctx, Coord key) {
  for (int id : ctx.active_slot_ids()) {
    const SlotInstance& s = ctx.slot(id);
    if (s.key == key && s.fresh) return s.expected.value;
  }
  return std::nullopt;
}

// Two-qubit logical probe: letters ('I','X','Z') per patch, frame-corrected.
std::optional<int> probe_sign(const SurgeryContext& ctx, const Patch& p1,
                              const Patch& p2, char l1, char l2) {
  PauliString op(ctx.layout().n_total());
  int frame = 0;
  auto fold = [&](const Patch& p, char l) {
    if (l == 'I') return;
    const auto& chain = l == 'Z' ? p.ref_z : p.ref_x;
    op = op * ctx.layout().chain_operator(chain, l);
    frame ^= (l == 'Z' ? p.fz : p.fx).value;
  };
  fold(p1, l1);
  fold(p2, l2);
  auto gs = ctx.tableau().group_sign(op);
  if (!gs.has_value()) return std::nullopt;
  return *gs ^ frame;
}

// What an ideal CNOT does to an eigenstate input (basis/value per qubit):
// the input stabilizer generators map through X1->X1X2, Z1->Z1, X2->X2,
// Z2->Z1Z2; a probe is defined iff it lies in the image group.
constexpr unsigned kX1 = 1, kZ1 = 2, kX2 = 4, kZ2 = 8;

unsigned probe_mask(char l1, char l2) {
  unsigned m = 0;
  if (l1 == 'X') m |= kX1;
  if (l1 == 'Z') m |= kZ1;
  if (l2 == 'X') m |= kX2;
  if (l2 == 'Z') m |= kZ2;
  return m;
}

std::optional<int> ideal_sign(char b1, int v1, char b2, int v2, char l1,
                              char l2) {
  const unsigned g1 = b1 == 'X' ? (kX1 | kX2) : kZ1;
  const unsigned g2 = b2 == 'X' ? kX2 : (kZ1 | kZ2);
  const unsigned want = probe_mask(l1, l2);
  for (int e1 = 0; e1 <= 1; ++e1) {
    for (int e2 = 0; e2 <= 1; ++e2) {
      if (((e1 ? g1 : 0u) ^ (e2 ? g2 : 0u)) == want) {
        return (e1 & v1) ^ (e2 & v2);
      }
    }
  }
  return std::nullopt;
}

const char* kProbes[] = {"XI", "ZI", "IX", "IZ", "XX", "ZZ", "XZ", "ZX"};

// Joining geometry: two distance-d patches and the joint patch covering both
// plus the seam between them.  'R' joins across the rough boundaries (the
// junction measures XX), 'S' across the smooth ones (ZZ).
struct JoinGeometry {
  LatticeSpec a, b, merged;
  std::vector<Coord> seam;
};

JoinGeometry join_geometry(Encoding enc, int d, char kind) {
  JoinGeometry g;
  if (enc == Encoding::kStandard) {
    const int s = 2 * (d - 1);
    if (kind == 'R') {  // rough boundaries face sideways
      g.a = make_patch_spec(enc, {0, 0}, {s, s});
      g.b = make_patch_spec(enc, {0, s + 2}, {s, 2 * s + 2});
      g.merged = make_patch_spec(enc, {0, 0}, {s, 2 * s + 2});
      for (int r = 0; r <= s; ++r) {
        if ((r + s + 1) % 2 == 0) g.seam.push_back({r, s + 1});
      }
    } else {
      g.a = make_patch_spec(enc, {0, 0}, {s, s});
      g.b = make_patch_spec(enc, {s + 2, 0}, {2 * s + 2, s});
      g.merged = make_patch_spec(enc, {0, 0}, {2 * s + 2, s});
      for (int c = 0; c <= s; ++c) {
        if ((s + 1 + c) % 2 == 0) g.seam.push_back({s + 1, c});
      }
    }
  } else {
    const int s = d - 1;
    if (kind == 'R') {  // rotated rough boundaries: top/bottom
      g.a = make_patch_spec(enc, {0, 0}, {s, s});
      g.b = make_patch_spec(enc, {s + 2, 0}, {2 * s + 2, s});
      g.merged = make_patch_spec(enc, {0, 0}, {2 * s + 2, s});
      for (int c = 0; c <= s; ++c) g.seam.push_back({s + 1, c});
    } else {
      g.a = make_patch_spec(enc, {0, 0}, {s, s});
      g.b = make_patch_spec(enc, {0, s + 2}, {s, 2 * s + 2});
      g.merged = make_patch_spec(enc, {0, 0}, {s, 2 * s + 2});
      for (int r = 0; r <= s; ++r) g.seam.push_back({r, s + 1});
    }
  }
  return g;
}

std::string enc_name(Encoding enc) {
  return enc == Encoding::kStandard ? "standard" : "rotated";
}

// ---------------------------------------------------------------------------
// Check 1: destructive truth tables of the surgery CNOT, computational and
// conjugate basis, both encodings, d in {2, 3}, fused and sequential.
// ---------------------------------------------------------------------------

CheckResult check_truth_tables(const CheckSettings&) {
  Verdict v;
  int runs = 0;
  int seed = 41000;
  for (Encoding enc : {Encoding::kStandard, Encoding::kRotated}) {
    for (int d : {2, 3}) {
      for (bool fused : {true, false}) {
        for (char basis : {'Z', 'X'}) {
          for (int v1 = 0; v1 <= 1; ++v1) {
            for (int v2 = 0; v2 <= 1; ++v2) {
              CnotSpecs cs = cnot_specs(enc, d);
              SurgeryContext ctx(enc, cs.hull);
              Rng rng(++seed);
              const LatticeSpec& ctrl = fused ? cs.control_wide : cs.control;
              prep_logical(ctx, ctrl, basis, v1, rng);
              prep_logical(ctx, cs.target, basis, v2, rng);
              Patch pc = make_patch(ctrl);
              Patch pt = make_patch(cs.target);
              ctx.activate({ctrl, cs.target});
              ctx.run_rounds(d, kQuiet, MeasureMode::kDirect, rng);
              CnotResult res = fused ? cnot_fused(ctx, pc, pt, cs, rng)
                                     : cnot_sequential(ctx, pc, pt, cs, rng);
              ctx.final_readout(cs.control.data_sites, basis, rng);
              ctx.final_readout(cs.target_merged.data_sites, basis, rng);
              int out1 = logical_readout(ctx, res.control, basis).value;
              int out2 = logical_readout(ctx, res.target, basis).value;
              const std::string tag = enc_name(enc) + " d=" +
                                      std::to_string(d) +
                                      (fused ? " fused " : " sequential ") +
                                      basis + std::to_string(v1) +
                                      std::to_string(v2);
              v.eq(out1, basis == 'Z' ? v1 : v1 ^ v2, tag + " first output");
              v.eq(out2, basis == 'Z' ? v1 ^ v2 : v2, tag + " second output");
              ++runs;
            }
          }
        }
      }
    }
  }
  return v.wrap(std::to_string(runs) + " runs, " + std::to_string(v.checked) +
                " readout values exact");
}

// ---------------------------------------------------------------------------
// Check 2: the fused surgery CNOT and the matched-site reference CNOT induce
// the same logical channel on all 16 two-qubit Pauli eigenstate inputs
// (d = 3, standard encoding), probe by probe, and both match the ideal map.
// ---------------------------------------------------------------------------

CheckResult check_channel_vs_reference(const CheckSettings&) {
  Verdict v;
  const int d = 3;
  int seed = 42000;
  int probes = 0;
  for (char b1 : {'Z', 'X'}) {
    for (int v1 = 0; v1 <= 1; ++v1) {
      for (char b2 : {'Z', 'X'}) {
        for (int v2 = 0; v2 <= 1; ++v2) {
          const std::string tag = std::string() + b1 + std::to_string(v1) +
                                  b2 + std::to_string(v2);
          // Surgery run.
          CnotSpecs cs = cnot_specs(Encoding::kStandard, d);
          SurgeryContext sctx(Encoding::kStandard, cs.hull);
          Rng srng(++seed);
          prep_logical(sctx, cs.control_wide, b1, v1, srng);
          prep_logical(sctx, cs.target, b2, v2, srng);
          Patch pc = make_patch(cs.control_wide);
          Patch pt = make_patch(cs.target);
          sctx.activate({cs.control_wide, cs.target});
          sctx.run_rounds(d, kQuiet, MeasureMode::kDirect, srng);
          CnotResult res = cnot_fused(sctx, pc, pt, cs, srng);

          // Matched-site reference run on two side-by-side patches.
          const int s = 2 * (d - 1);
          LatticeSpec a = make_patch_spec(Encoding::kStandard, {0, 0}, {s, s});
          LatticeSpec b =
              make_patch_spec(Encoding::kStandard, {0, s + 2}, {s, 2 * s + 2});
          SurgeryContext octx(Encoding::kStandard,
                              region_union({a.data_sites, b.data_sites}));
          Rng orng(++seed);
          prep_logical(octx, a, b1, v1, orng);
          prep_logical(octx, b, b2, v2, orng);
          octx.activate({a, b});
          octx.run_rounds(d, kQuiet, MeasureMode::kDirect, orng);
          transversal_cnot(octx, a, b);
          octx.run_rounds(1, kQuiet, MeasureMode::kDirect, orng);
          Patch pa = make_patch(a);
          Patch pb = make_patch(b);

          for (const char* pr : kProbes) {
            auto surgery = probe_sign(sctx, res.control, res.target,
                                      pr[0], pr[1]);
            auto reference = probe_sign(octx, pa, pb, pr[0], pr[1]);
            auto ideal = ideal_sign(b1, v1, b2, v2, pr[0], pr[1]);
            v.opt_eq(surgery, reference,
                     tag + " probe " + pr + " surgery vs reference");
            v.opt_eq(surgery, ideal, tag + " probe " + pr + " vs ideal");
            probes += 2;
          }
        }
      }
    }
  }
  return v.wrap("16 inputs x 8 probes, " + std::to_string(probes) +
                " comparisons identical");
}

// ---------------------------------------------------------------------------
// Check 3: the distance-2 join across rough boundaries reproduces the full
// post-join stabilizer table, including the joint Z row, in every one of the
// four fresh-seam outcome branches, with the joint outcome equal to the XOR
// of the two seam checks.
// ---------------------------------------------------------------------------

CheckResult check_join_tables(const CheckSettings&) {
  Verdict v;
  JoinGeometry g = join_geometry(Encoding::kStandard, 2, 'R');
  v.expect(g.seam == std::vector<Coord>{{1, 3}}, "unexpected seam for d=2");
  // Pin the supports of the extended and seam checks on the merged spec.
  {
    const Plaquette* ext_a = find_plaquette(g.merged, {1, 2});
    const Plaquette* ext_b = find_plaquette(g.merged, {1, 4});
    const Plaquette* seam_top = find_plaquette(g.merged, {0, 3});
    const Plaquette* seam_bot = find_plaquette(g.merged, {2, 3});
    v.expect(ext_a != nullptr && ext_a->type == CheckType::kZ &&
                 ext_a->data ==
                     std::vector<Coord>{{0, 2}, {1, 1}, {1, 3}, {2, 2}},
             "left extended check support");
    v.expect(ext_b != nullptr &&
                 ext_b->data ==
                     std::vector<Coord>{{0, 4}, {1, 3}, {1, 5}, {2, 4}},
             "right extended check support");
    v.expect(seam_top != nullptr && seam_top->type == CheckType::kX &&
                 seam_top->data == std::vector<Coord>{{0, 2}, {0, 4}, {1, 3}},
             "upper seam check support");
    v.expect(seam_bot != nullptr &&
                 seam_bot->data == std::vector<Coord>{{1, 3}, {2, 2}, {2, 4}},
             "lower seam check support");
  }

  bool seen[2][2] = {{false, false}, {false, false}};
  int found = 0;
  for (int seed = 0; seed < 4000 && found < 4; ++seed) {
    SurgeryContext ctx(Encoding::kStandard, g.merged.data_sites);
    Rng rng(seed);
    prep_all(ctx, g.a, 'Z', rng);
    prep_all(ctx, g.b, 'Z', rng);
    Patch pa = make_patch(g.a);
    Patch pb = make_patch(g.b);
    ctx.activate({g.a, g.b});
    ctx.run_rounds(2, kQuiet, MeasureMode::kDirect, rng);
    // The reference table assumes both patches start with all +1 checks.
    if (!fresh_refs_all_zero(ctx)) continue;

    PendingMerge pend = begin_rough_merge(ctx, pa, pb, g.merged, g.seam, rng);
    ctx.run_rounds(2, kQuiet, MeasureMode::kDirect, rng);
    auto om = fresh_ref_value(ctx, {0, 3});
    auto omp = fresh_ref_value(ctx, {2, 3});
    v.expect(om.has_value() && omp.has_value(), "seam checks not fresh");
    if (!om.has_value() || !omp.has_value()) break;
    const int m = *om, mp = *omp;
    if (seen[m][mp]) continue;
    seen[m][mp] = true;
    ++found;
    const std::string tag =
        "branch m=" + std::to_string(m) + " m'=" + std::to_string(mp) + ": ";

    v.opt_eq(check_sign(ctx, g.merged, {0, 1}), 0, tag + "check (0,1)");
    v.opt_eq(check_sign(ctx, g.merged, {2, 1}), 0, tag + "check (2,1)");
    v.opt_eq(check_sign(ctx, g.merged, {1, 0}), 0, tag + "check (1,0)");
    v.opt_eq(check_sign(ctx, g.merged, {1, 2}), 0, tag + "check (1,2)");
    v.opt_eq(check_sign(ctx, g.merged, {0, 3}), m, tag + "upper seam check");
    v.opt_eq(check_sign(ctx, g.merged, {2, 3}), mp, tag + "lower seam check");
    v.opt_eq(check_sign(ctx, g.merged, {1, 4}), 0, tag + "check (1,4)");
    v.opt_eq(check_sign(ctx, g.merged, {1, 6}), 0, tag + "check (1,6)");
    v.opt_eq(check_sign(ctx, g.merged, {0, 5}), 0, tag + "check (0,5)");
    v.opt_eq(check_sign(ctx, g.merged, {2, 5}), 0, tag + "check (2,5)");
    // Joint Z row across both former patches, +1 for |0>|0> inputs.
    v.opt_eq(chain_sign(ctx, {{0, 0}, {0, 2}, {0, 4}, {0, 6}}, 'Z'), 0,
             tag + "joint Z row");

    MergeResult mr = finish_merge(ctx, pend);
    v.eq(mr.outcome.value, m ^ mp, tag + "joint outcome");
    v.opt_eq(interp_sign(ctx, mr.patch, 'Z'), 0, tag + "merged Z value");
    ctx.final_readout(g.merged.data_sites, 'Z', rng);
    v.eq(logical_readout(ctx, mr.patch, 'Z').value, 0, tag + "readout");
  }
  v.eq(found, 4, "outcome branches observed");
  return v.wrap("4/4 outcome branches, full 10-check table + joint row each");
}

// ---------------------------------------------------------------------------
// Check 4: the distance-2 separation across smooth boundaries reproduces the
// post-split stabilizer tables in both outcome branches: the straddling
// checks inherit (-1)^m, the cross Z row survives, and a computational input
// is copied into both halves.
// ---------------------------------------------------------------------------

CheckResult check_split_tables(const CheckSettings&) {
  Verdict v;
  JoinGeometry g = join_geometry(Encoding::kStandard, 2, 'S');
  v.expect(g.seam == std::vector<Coord>{{3, 1}}, "unexpected seam for d=2");
  {
    const Plaquette* straddle_top = find_plaquette(g.merged, {2, 1});
    const Plaquette* after_top = find_plaquette(g.a, {2, 1});
    const Plaquette* straddle_bot = find_plaquette(g.merged, {4, 1});
    v.expect(straddle_top != nullptr &&
                 straddle_top->type == CheckType::kX &&
                 straddle_top->data ==
                     std::vector<Coord>{{1, 1}, {2, 0}, {2, 2}, {3, 1}},
             "upper straddling check support");
    v.expect(after_top != nullptr &&
                 after_top->data == std::vector<Coord>{{1, 1}, {2, 0}, {2, 2}},
             "upper truncated check support");
    v.expect(straddle_bot != nullptr &&
                 straddle_bot->data ==
                     std::vector<Coord>{{3, 1}, {4, 0}, {4, 2}, {5, 1}},
             "lower straddling check support");
  }

  // Conjugate-basis input: the halves stay a correlated pair; both branches.
  {
    bool seen[2] = {false, false};
    for (int seed = 0; seed < 20000 && !(seen[0] && seen[1]); ++seed) {
      SurgeryContext ctx(Encoding::kStandard, g.merged.data_sites);
      Rng rng(seed);
      prep_all(ctx, g.merged, 'X', rng);
      Patch whole = make_patch(g.merged);
      ctx.activate({g.merged});
      ctx.run_rounds(2, kQuiet, MeasureMode::kDirect, rng);
      if (!fresh_refs_all_zero(ctx)) continue;

      PendingSplit pend = begin_smooth_split(ctx, whole, g.a, g.b, g.seam, rng);
      ctx.run_rounds(2, kQuiet, MeasureMode::kDirect, rng);
      v.expect(pend.seam_mo.size() == 1, "one seam site expected");
      const int m = pend.seam_mo[0].value.value;
      if (seen[m]) continue;
      seen[m] = true;
      const std::string tag = "plus-state branch m=" + std::to_string(m) + ": ";

      v.opt_eq(chain_sign(ctx, {{3, 1}}, 'X'), m, tag + "seam remnant");
      v.opt_eq(check_sign(ctx, g.a, {0, 1}), 0, tag + "top check (0,1)");
      v.opt_eq(check_sign(ctx, g.a, {2, 1}), m, tag + "top check (2,1)");
      v.opt_eq(check_sign(ctx, g.a, {1, 0}), 0, tag + "top check (1,0)");
      v.opt_eq(check_sign(ctx, g.a, {1, 2}), 0, tag + "top check (1,2)");
      v.opt_eq(check_sign(ctx, g.b, {4, 1}), m, tag + "bottom check (4,1)");
      v.opt_eq(check_sign(ctx, g.b, {6, 1}), 0, tag + "bottom check (6,1)");
      v.opt_eq(check_sign(ctx, g.b, {5, 0}), 0, tag + "bottom check (5,0)");
      v.opt_eq(check_sign(ctx, g.b, {5, 2}), 0, tag + "bottom check (5,2)");
      // The cross Z row survives; a lone half's Z row is undefined.
      v.opt_eq(chain_sign(ctx, {{2, 0}, {2, 2}, {4, 0}, {4, 2}}, 'Z'), 0,
               tag + "cross Z row");
      v.expect(!chain_sign(ctx, {{2, 0}, {2, 2}}, 'Z').has_value(),
               tag + "lone half Z row should be undefined");

      SplitResult halves = finish_split(ctx, pend);
      v.opt_eq(pair_sign(ctx, halves.p1, halves.p2, 'Z'), 0, tag + "pair ZZ");
      v.opt_eq(pair_sign(ctx, halves.p1, halves.p2, 'X'), 0, tag + "pair XX");
      ctx.final_readout(g.a.data_sites, 'X', rng);
      ctx.final_readout(g.b.data_sites, 'X', rng);
      v.eq(logical_readout(ctx, halves.p1, 'X').value ^
               logical_readout(ctx, halves.p2, 'X').value,
           0, tag + "X readout parity");
    }
    v.expect(seen[0] && seen[1], "plus-state input: both branches observed");
  }

  // Computational input: the value is copied into twin halves; both signs of
  // the loaded value, both branches.
  for (int flip = 0; flip <= 1; ++flip) {
    bool seen[2] = {false, false};
    for (int seed = 0; seed < 20000 && !(seen[0] && seen[1]); ++seed) {
      SurgeryContext ctx(Encoding::kStandard, g.merged.data_sites);
      Rng rng(seed);
      prep_all(ctx, g.merged, 'Z', rng);
      if (flip) {
        ctx.apply_pauli(ctx.layout().chain_operator(g.merged.logical_x, 'X'));
      }
      Patch whole = make_patch(g.merged);
      ctx.activate({g.merged});
      ctx.run_rounds(2, kQuiet, MeasureMode::kDirect, rng);
      if (!fresh_refs_all_zero(ctx)) continue;

      PendingSplit pend = begin_smooth_split(ctx, whole, g.a, g.b, g.seam, rng);
      ctx.run_rounds(2, kQuiet, MeasureMode::kDirect, rng);
      const int m = pend.seam_mo[0].value.value;
      if (seen[m]) continue;
      seen[m] = true;
      const std::string tag = "value " + std::to_string(flip) + " branch m=" +
                              std::to_string(m) + ": ";

      v.opt_eq(check_sign(ctx, g.a, {2, 1}), m, tag + "top check (2,1)");
      v.opt_eq(check_sign(ctx, g.b, {4, 1}), m, tag + "bottom check (4,1)");
      v.opt_eq(check_sign(ctx, g.a, {0, 1}), 0, tag + "top check (0,1)");
      v.opt_eq(check_sign(ctx, g.b, {6, 1}), 0, tag + "bottom check (6,1)");
      // Twin copies: each half's Z row carries the input value; the cross
      // row is their product.
      v.opt_eq(chain_sign(ctx, {{2, 0}, {2, 2}}, 'Z'), flip,
               tag + "upper Z row");
      v.opt_eq(chain_sign(ctx, {{0, 0}, {0, 2}}, 'Z'), flip,
               tag + "upper edge Z row");
      v.opt_eq(chain_sign(ctx, {{4, 0}, {4, 2}}, 'Z'), flip,
               tag + "lower Z row");
      v.opt_eq(chain_sign(ctx, {{2, 0}, {2, 2}, {4, 0}, {4, 2}}, 'Z'), 0,
               tag + "cross Z row");

      SplitResult halves = finish_split(ctx, pend);
      v.opt_eq(interp_sign(ctx, halves.p1, 'Z'), flip, tag + "first half");
      v.opt_eq(interp_sign(ctx, halves.p2, 'Z'), flip, tag + "second half");
      ctx.final_readout(g.a.data_sites, 'Z', rng);
      ctx.final_readout(g.b.data_sites, 'Z', rng);
      v.eq(logical_readout(ctx, halves.p1, 'Z').value, flip,
           tag + "first readout");
      v.eq(logical_readout(ctx, halves.p2, 'Z').value, flip,
           tag + "second readout");
    }
    v.expect(seen[0] && seen[1], "value " + std::to_string(flip) +
                                     ": both branches observed");
  }
  return v.wrap("both branches x both input kinds, full tables");
}

// ---------------------------------------------------------------------------
// Check 5: merges combine eigenstate inputs by XOR.  All four computational
// inputs through the rough (XX) junction and all four conjugate inputs
// through the smooth (ZZ) junction, in both encodings, with the joint
// outcome cross-checked against the physical product of the halves'
// measured logicals.
// ---------------------------------------------------------------------------

CheckResult check_merge_parity(const CheckSettings&) {
  Verdict v;
  int seed = 43000;
  int cases = 0;
  for (Encoding enc : {Encoding::kStandard, Encoding::kRotated}) {
    for (char kind : {'R', 'S'}) {
      JoinGeometry g = join_geometry(enc, 2, kind);
      const char basis = kind == 'R' ? 'Z' : 'X';
      const char flip_letter = kind == 'R' ? 'X' : 'Z';
      for (int va = 0; va <= 1; ++va) {
        for (int vb = 0; vb <= 1; ++vb) {
          const std::string tag = enc_name(enc) + " " +
                                  (kind == 'R' ? "rough" : "smooth") + " " +
                                  std::to_string(va) + std::to_string(vb) +
                                  ": ";
          SurgeryContext ctx(enc, g.merged.data_sites);
          Rng rng(++seed);
          prep_all(ctx, g.a, basis, rng);
          prep_all(ctx, g.b, basis, rng);
          if (va) {
            ctx.apply_pauli(ctx.layout().chain_operator(
                kind == 'R' ? g.a.logical_x : g.a.logical_z, flip_letter));
          }
          if (vb) {
            ctx.apply_pauli(ctx.layout().chain_operator(
                kind == 'R' ? g.b.logical_x : g.b.logical_z, flip_letter));
          }
          Patch pa = make_patch(g.a);
          Patch pb = make_patch(g.b);
          ctx.activate({g.a, g.b});
          ctx.run_rounds(2, kQuiet, MeasureMode::kDirect, rng);
          v.opt_eq(interp_sign(ctx, pa, basis), va, tag + "input a");
          v.opt_eq(interp_sign(ctx, pb, basis), vb, tag + "input b");

          PendingMerge pend =
              kind == 'R'
                  ? begin_rough_merge(ctx, pa, pb, g.merged, g.seam, rng)
                  : begin_smooth_merge(ctx, pa, pb, g.merged, g.seam, rng);
          ctx.run_rounds(2, kQuiet, MeasureMode::kDirect, rng);
          MergeResult mr = finish_merge(ctx, pend);

          v.opt_eq(interp_sign(ctx, mr.patch, basis), va ^ vb,
                   tag + "merged value");
          // The joint outcome equals the physical sign of the product of
          // the two halves' measured logicals, frames folded in.
          const char cut = kind == 'R' ? 'X' : 'Z';
          const auto& ca = cut == 'Z' ? pend.a.ref_z : pend.a.ref_x;
          const auto& cb = cut == 'Z' ? pend.b.ref_z : pend.b.ref_x;
          auto gs = ctx.tableau().group_sign(
              ctx.layout().chain_operator(ca, cut) *
              ctx.layout().chain_operator(cb, cut));
          int fa = (cut == 'Z' ? pend.a.fz : pend.a.fx).value;
          int fb = (cut == 'Z' ? pend.b.fz : pend.b.fx).value;
          v.expect(gs.has_value() && mr.outcome.value == (*gs ^ fa ^ fb),
                   tag + "joint outcome identity");

          ctx.final_readout(g.merged.data_sites, basis, rng);
          v.eq(logical_readout(ctx, mr.patch, basis).value, va ^ vb,
               tag + "readout");
          ++cases;
        }
      }
    }
  }
  return v.wrap(std::to_string(cases) + " merge cases follow the XOR rule");
}

// ---------------------------------------------------------------------------
// Check 6: splitting |+> leaves a pair stabilized by +XX and +ZZ; a second
// split leaves the three-party chain (+XXX and every pairwise +ZZ); the
// conjugate-basis construction gives the Hadamard-rotated groups.  All signs
// interpret to +1 with the frames folded in.
// ---------------------------------------------------------------------------

CheckResult check_pair_and_chain(const CheckSettings&) {
  Verdict v;
  int seed = 44000;
  for (int parties : {2, 3}) {
    for (char basis : {'Z', 'X'}) {
      const std::string tag = std::to_string(parties) + "-party " + basis +
                              " construction: ";
      GhzSpecs gs = ghz_specs(Encoding::kStandard, 2, parties, basis);
      SurgeryContext ctx(Encoding::kStandard, gs.hull);
      Rng rng(++seed);
      GhzResult res = make_ghz(ctx, gs, rng);
      v.eq(static_cast<int>(res.parties.size()), parties, tag + "parties");

      // 'Z' construction: stabilized by X..X and pairwise ZZ;
      // 'X' construction: by Z..Z and pairwise XX.
      const char uni = basis == 'Z' ? 'X' : 'Z';
      const char pairwise = basis == 'Z' ? 'Z' : 'X';
      {
        PauliString op(ctx.layout().n_total());
        int frame = 0;
        for (const Patch& p : res.parties) {
          const auto& chain = uni == 'Z' ? p.ref_z : p.ref_x;
          op = op * ctx.layout().chain_operator(chain, uni);
          frame ^= (uni == 'Z' ? p.fz : p.fx).value;
        }
        auto sign = ctx.tableau().group_sign(op);
        v.expect(sign.has_value() && (*sign ^ frame) == 0,
                 tag + "all-party product");
      }
      for (int i = 0; i < parties; ++i) {
        for (int j = i + 1; j < parties; ++j) {
          v.opt_eq(pair_sign(ctx, res.parties[i], res.parties[j], pairwise), 0,
                   tag + "pair (" + std::to_string(i) + "," +
                       std::to_string(j) + ")");
        }
      }
      // Destructive cross-check: pairwise-correlated basis readouts agree.
      for (const LatticeSpec& piece : gs.pieces) {
        ctx.final_readout(piece.data_sites, pairwise, rng);
      }
      const int v0 = logical_readout(ctx, res.parties[0], pairwise).value;
      for (int i = 1; i < parties; ++i) {
        v.eq(logical_readout(ctx, res.parties[i], pairwise).value, v0,
             tag + "readout " + std::to_string(i));
      }
    }
  }
  return v.wrap("pair and 3-party groups exact in both constructions");
}

// ---------------------------------------------------------------------------
// Check 7: the reported distance equals d for d in 2..5 in both encodings
// (graph method), agrees with the exhaustive search for d <= 3, and the
// distance-3 rotated patch uses 9 data qubits, 8 checks, 13 qubits total.
// ---------------------------------------------------------------------------

CheckResult check_distances(const CheckSettings&) {
  Verdict v;
  for (Encoding enc : {Encoding::kStandard, Encoding::kRotated}) {
    for (int d = 2; d <= 5; ++d) {
      const std::string tag = enc_name(enc) + " d=" + std::to_string(d);
      LatticeSpec spec =
          enc == Encoding::kStandard ? standard_patch(d) : rotated_patch(d);
      v.eq(code_distance(spec, CheckType::kX), d, tag + " X distance");
      v.eq(code_distance(spec, CheckType::kZ), d, tag + " Z distance");
      v.eq(code_distance(spec), d, tag + " overall distance");
      if (d <= 3) {
        v.eq(code_distance_exhaustive(spec, CheckType::kX, d), d,
             tag + " exhaustive X distance");
        v.eq(code_distance_exhaustive(spec, CheckType::kZ, d), d,
             tag + " exhaustive Z distance");
      }
    }
  }
  LatticeSpec rot3 = rotated_patch(3);
  Layout lay = Layout::build(Encoding::kRotated, rot3.data_sites);
  v.eq(lay.n_data(), 9, "rotated d=3 data qubits");
  v.eq(static_cast<int>(rot3.plaquettes.size()), 8, "rotated d=3 checks");
  v.eq(lay.n_total(), 13, "rotated d=3 total qubits");
  return v.wrap("distances 2..5 exact both encodings; 9/8/13 at d=3");
}

// ---------------------------------------------------------------------------
// Check 8: the compact rotated CNOT layout reports exactly 33 data + 20
// syndrome = 53 qubits, its truth table passes, and (full settings) the
// exhaustive single-fault sweep decodes every fault.
// ---------------------------------------------------------------------------

CheckResult check_compact_cnot(const CheckSettings& s) {
  Verdict v;
  SmallestCnotResult r = smallest_cnot_experiment(s.seed, s.fault_sweep);
  v.eq(r.data, 33, "data qubits");
  v.eq(r.syndrome, 20, "syndrome qubits");
  v.eq(r.total, 53, "total qubits");
  v.eq(r.truth_cases, 4, "truth-table cases");
  v.eq(r.truth_passed, 4, "truth-table passes");
  v.eq(r.rounds_used, 3, "rounds used");
  std::string detail = "33+20=53 qubits, truth table 4/4";
  if (s.fault_sweep) {
    v.eq(r.faults_tested, 33 * 7 * 3 * 4, "faults tested");
    v.eq(r.faults_failed, 0, "fault sweep failures");
    detail += ", " + std::to_string(r.faults_tested) + " faults all decoded";
  } else {
    detail += ", fault sweep skipped";
  }
  return v.wrap(detail);
}

// ---------------------------------------------------------------------------
// Check 9: (a) every single space-time fault in a distance-3 memory -- any
// Pauli on any data qubit before any round or the readout, and any flipped
// check outcome -- decodes to the correct logical value, both encodings and
// bases; (b) the blossom matcher returns the same optimal cost as the
// exhaustive pairing search on random instances of up to 10 events.
// ---------------------------------------------------------------------------

struct MemoryHooks {
  std::function<void(SurgeryContext&, int)> before_round;
  std::function<void(SurgeryContext&, int)> after_round;
  std::function<void(SurgeryContext&)> before_readout;
};

SurgeryContext run_small_memory(Encoding enc, char basis, int rounds,
                                const MemoryHooks& hooks) {
  LatticeSpec spec =
      enc == Encoding::kStandard ? standard_patch(3) : rotated_patch(3);
  SurgeryContext ctx(enc, spec.data_sites);
  Rng rng(2024);
  prep_all(ctx, spec, basis, rng);
  ctx.activate({spec});
  for (int r = 0; r < rounds; ++r) {
    if (hooks.before_round) hooks.before_round(ctx, r);
    ctx.run_round(kQuiet, MeasureMode::kDirect, rng);
    if (hooks.after_round) hooks.after_round(ctx, r);
  }
  if (hooks.before_readout) hooks.before_readout(ctx);
  ctx.final_readout(spec.data_sites, basis, rng);
  return ctx;
}

CheckResult check_decoder(const CheckSettings& s) {
  Verdict v;
  const int kRounds = 4;
  int fault_runs = 0;
  for (Encoding enc : {Encoding::kStandard, Encoding::kRotated}) {
    for (char basis : {'Z', 'X'}) {
      LatticeSpec spec =
          enc == Encoding::kStandard ? standard_patch(3) : rotated_patch(3);
      SurgeryContext clean = run_small_memory(enc, basis, kRounds, {});
      DetectorModel model = build_detector_model(clean);
      const auto& chain = basis == 'Z' ? spec.logical_z : spec.logical_x;
      auto decoded = [&](const SurgeryContext& ctx) {
        DecodeResult res = decode(model, ctx);
        return corrected_bit(ctx.chain_parity(chain), res.flipped);
      };
      v.eq(decoded(clean), 0, enc_name(enc) + " clean run");

      for (const Coord& site : spec.data_sites) {
        for (char letter : {'X', 'Y', 'Z'}) {
          for (int t = 0; t <= kRounds; ++t) {
            MemoryHooks hooks;
            auto strike = [site, letter](SurgeryContext& c) {
              c.apply_pauli(PauliString::single(
                  c.tableau().n(), c.layout().data_qubit(site), letter));
            };
            if (t < kRounds) {
              hooks.before_round = [&, t](SurgeryContext& c, int r) {
                if (r == t) strike(c);
              };
            } else {
              hooks.before_readout = strike;
            }
            SurgeryContext ctx = run_small_memory(enc, basis, kRounds, hooks);
            ++fault_runs;
            if (decoded(ctx) != 0) {
              v.expect(false, enc_name(enc) + " " + basis + " fault " +
                                  letter + "@(" + std::to_string(site.r) +
                                  "," + std::to_string(site.c) + ") t=" +
                                  std::to_string(t) + " not corrected");
              break;
            }
          }
          if (!v.ok) break;
        }
        if (!v.ok) break;
      }

      const int n_checks = static_cast<int>(clean.active_slot_ids().size());
      for (int pos = 0; pos < n_checks && v.ok; ++pos) {
        for (int t = 0; t < kRounds; ++t) {
          MemoryHooks hooks;
          hooks.after_round = [&, pos, t](SurgeryContext& c, int r) {
            if (r == t) {
              int id = c.active_slot_ids()[pos];
              c.flip_record(c.slot(id).outcome_records.back());
            }
          };
          SurgeryContext ctx = run_small_memory(enc, basis, kRounds, hooks);
          ++fault_runs;
          if (decoded(ctx) != 0) {
            v.expect(false, enc_name(enc) + " " + basis + " record flip " +
                                std::to_string(pos) + " t=" +
                                std::to_string(t) + " not corrected");
            break;
          }
        }
      }
      if (!v.ok) break;
    }
    if (!v.ok) break;
  }
  if (v.ok) ++v.checked;  // the whole sweep counts as one passed property

  // Matcher cross-check on random instances.
  Rng rng(s.seed ^ 0x9e3779b97f4a7c15ULL);
  int matched = 0;
  for (int inst = 0; inst < s.matcher_instances && v.ok; ++inst) {
    const int k = 1 + static_cast<int>(rng.below(10));
    std::vector<std::vector<int64_t>> pc(k, std::vector<int64_t>(k, -1));
    std::vector<int64_t> bc(k);
    for (int i = 0; i < k; ++i) {
      bc[i] = 1 + static_cast<int64_t>(rng.below(6));
      for (int j = i + 1; j < k; ++j) {
        if (rng.bernoulli(0.85)) {
          pc[i][j] = pc[j][i] = 1 + static_cast<int64_t>(rng.below(6));
        }
      }
    }
    auto ex = match_events_exhaustive(pc, bc);
    auto bl = match_events_blossom(pc, bc);
    v.eq(bl.total_cost, ex.total_cost,
         "matcher instance " + std::to_string(inst) + " (k=" +
             std::to_string(k) + ")");
    ++matched;
  }
  return v.wrap(std::to_string(fault_runs) + " single-fault runs corrected; " +
                std::to_string(matched) + " matcher instances optimal");
}

// ---------------------------------------------------------------------------
// Check 10: decoded memory failure rates scale the right way.  At low
// circuit-level noise (p = 0.001) the d=5 rate sits strictly below d=3 with
// non-overlapping 95% intervals; at p = 0.2 data noise the ordering inverts.
// ---------------------------------------------------------------------------

CheckResult check_noise_scaling(const CheckSettings& s) {
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();

  MemoryParams low;
  low.encoding = Encoding::kStandard;
  low.noise = NoiseModel{0.001, 0.001, 0.001};
  low.mode = MeasureMode::kCircuit;
  low.trials = s.scaling_trials;
  low.seed = s.seed;
  low.jobs = 1;
  MemoryArm low3, low5;
  for (int d : {3, 5}) {
    low.d = d;
    low.rounds = d;
    (d == 3 ? low3 : low5) = monte_carlo_memory_arm(low, 'Z');
  }
  v.expect(low5.rate < low3.rate,
           "low-noise rates not decreasing: d3 " + num(low3.rate) + " d5 " +
               num(low5.rate));
  v.expect(low5.ci.hi < low3.ci.lo,
           "low-noise intervals overlap: d3 [" + num(low3.ci.lo) + "," +
               num(low3.ci.hi) + "] d5 [" + num(low5.ci.lo) + "," +
               num(low5.ci.hi) + "]");

  MemoryParams high;
  high.encoding = Encoding::kStandard;
  high.noise = NoiseModel{0.2, 0.0, 0.0};
  high.mode = MeasureMode::kDirect;
  high.trials = s.inversion_trials;
  high.seed = s.seed + 1;
  high.jobs = 1;
  MemoryArm high3, high5;
  for (int d : {3, 5}) {
    high.d = d;
    high.rounds = d;
    (d == 3 ? high3 : high5) = monte_carlo_memory_arm(high, 'Z');
  }
  v.expect(high5.rate > high3.rate,
           "high-noise ordering did not invert: d3 " + num(high3.rate) +
               " d5 " + num(high5.rate));

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  v.expect(elapsed < 600.0, "sweep exceeded 600 s: " + num(elapsed));
  return v.wrap("p=0.001: d3 " + num(low3.rate) + " [" + num(low3.ci.lo) +
                "," + num(low3.ci.hi) + "] > d5 " + num(low5.rate) + " [" +
                num(low5.ci.lo) + "," + num(low5.ci.hi) + "]; p=0.2: d3 " +
                num(high3.rate) + " < d5 " + num(high5.rate) + "; " +
                num(elapsed) + " s");
}

// ---------------------------------------------------------------------------
// Check 11: state injection is exact on the six Pauli eigenstates (live
// tableau path) and reaches fidelity >= 1 - 1e-9 for the non-stabilizer
// amplitude pair (cos pi/8, sin pi/8) on the dense path, distance 3, no
// noise.
// ---------------------------------------------------------------------------

CheckResult check_injection(const CheckSettings&) {
  Verdict v;
  using cd = std::complex<double>;
  const double inv2 = 1.0 / std::sqrt(2.0);
  struct Case {
    cd a0, a1;
    char letter;
    int sign_bit;
  };
  const Case cases[] = {
      {1, 0, 'Z', 0},
      {0, 1, 'Z', 1},
      {inv2, inv2, 'X', 0},
      {inv2, -inv2, 'X', 1},
      {inv2, cd(0, inv2), 'Y', 0},
      {inv2, cd(0, -inv2), 'Y', 1},
  };
  int seed = 45000;
  for (const Case& tc : cases) {
    const std::string tag = std::string("eigenstate ") + tc.letter +
                            (tc.sign_bit ? "-" : "+") + ": ";
    Rng rng(++seed);
    SurgeryContext ctx(Encoding::kStandard, inject_hull(3));
    InjectResult res = inject_state(ctx, tc.a0, tc.a1, 3, rng);
    v.expect(res.used_tableau, tag + "expected the live path");
    v.expect(res.fidelity == 1.0, tag + "fidelity " + num(res.fidelity));
    if (tc.letter == 'Z' || tc.letter == 'X') {
      const char other = tc.letter == 'Z' ? 'X' : 'Z';
      v.opt_eq(interp_sign(ctx, res.patch, tc.letter), tc.sign_bit,
               tag + "logical value");
      v.expect(!interp_sign(ctx, res.patch, other).has_value(),
               tag + "conjugate should be undefined");
    } else {
      v.opt_eq(interp_y(ctx, res.patch), tc.sign_bit, tag + "logical value");
      v.expect(!interp_sign(ctx, res.patch, 'Z').has_value() &&
                   !interp_sign(ctx, res.patch, 'X').has_value(),
               tag + "both axes should be undefined");
    }
  }

  const double c8 = std::cos(M_PI / 8), s8 = std::sin(M_PI / 8);
  Rng rng(++seed);
  SurgeryContext ctx(Encoding::kStandard, inject_hull(3));
  InjectResult res = inject_state(ctx, c8, s8, 3, rng);
  v.expect(!res.used_tableau, "magic amplitudes should take the dense path");
  v.expect(res.fidelity >= 1.0 - 1e-9,
           "dense fidelity " + num(res.fidelity) + " below 1 - 1e-9");
  return v.wrap("6 eigenstates exact; (cos pi/8, sin pi/8) fidelity " +
                num(res.fidelity));
}

// ---------------------------------------------------------------------------
// Check 12: the rotation-based Hadamard swaps |0> and |+> exactly, two
// applications are the identity on all six Pauli eigenstates, and the patch
// comes back on its original footprint with its original boundary labels.
// ---------------------------------------------------------------------------

Patch prep_eigenstate(SurgeryContext& ctx, const LatticeSpec& spec,
                      char letter, int sign_bit, Rng& rng) {
  const int d = code_distance(spec);
  for (const Coord& s : spec.data_sites) {
    ctx.init_data(s, letter == 'X' ? 'X' : 'Z', rng);
  }
  ctx.activate({spec});
  ctx.run_rounds(d, kQuiet, MeasureMode::kDirect, rng);
  Patch p = make_patch(spec);
  if (letter == 'Y') {
    PauliString y = ctx.layout().chain_operator(spec.logical_x, 'X') *
                    ctx.layout().chain_operator(spec.logical_z, 'Z');
    y.set_phase((y.phase() + 1) & 3);
    ctx.tableau().project_onto(y, sign_bit);
  } else if (sign_bit == 1) {
    const auto& conj = letter == 'Z' ? spec.logical_x : spec.logical_z;
    ctx.apply_pauli(
        ctx.layout().chain_operator(conj, letter == 'Z' ? 'X' : 'Z'));
  }
  return p;
}

bool same_footprint(const LatticeSpec& a, const LatticeSpec& b) {
  return a.lo.r == b.lo.r && a.lo.c == b.lo.c && a.hi.r == b.hi.r &&
         a.hi.c == b.hi.c && a.parity_flip == b.parity_flip &&
         a.boundaries.top == b.boundaries.top &&
         a.boundaries.bottom == b.boundaries.bottom &&
         a.boundaries.left == b.boundaries.left &&
         a.boundaries.right == b.boundaries.right;
}

CheckResult check_hadamard(const CheckSettings&) {
  Verdict v;
  // Single pass at d=3: |0> <-> |+>, footprint and boundary labels restored.
  {
    const LatticeSpec spec = standard_patch(3);
    struct Arm {
      char in, out;
    };
    for (const Arm arm : {Arm{'Z', 'X'}, Arm{'X', 'Z'}}) {
      const std::string tag = std::string("d=3 ") + arm.in + "+ input: ";
      Rng rng(46000 + arm.in);
      SurgeryContext ctx(Encoding::kStandard, hadamard_hull(spec));
      Patch p = prep_eigenstate(ctx, spec, arm.in, 0, rng);
      HadamardResult res = hadamard_rotate(ctx, p, rng);
      v.expect(same_footprint(res.patch.spec, spec),
               tag + "footprint or boundary labels changed");
      v.eq(res.report.rounds, 5 * 3 + 1, tag + "rounds");
      v.opt_eq(interp_sign(ctx, res.patch, arm.out), 0, tag + "output value");
      v.expect(!interp_sign(ctx, res.patch, arm.in).has_value(),
               tag + "input axis should be undefined after the swap");
    }
  }
  // Double application at d=2: identity on all six eigenstates.
  {
    const LatticeSpec spec = standard_patch(2);
    const struct {
      char letter;
      int bit;
    } states[] = {{'Z', 0}, {'Z', 1}, {'X', 0}, {'X', 1}, {'Y', 0}, {'Y', 1}};
    int seed = 47000;
    for (const auto& st : states) {
      const std::string tag = std::string("twice on ") + st.letter +
                              (st.bit ? "-" : "+") + ": ";
      Rng rng(++seed);
      SurgeryContext ctx(Encoding::kStandard, hadamard_hull(spec));
      Patch p = prep_eigenstate(ctx, spec, st.letter, st.bit, rng);
      HadamardResult once = hadamard_rotate(ctx, p, rng);
      // One pass: Z <-> X keeping the sign; Y flips sign.
      if (st.letter == 'Y') {
        v.opt_eq(interp_y(ctx, once.patch), 1 - st.bit, tag + "middle value");
      } else {
        v.opt_eq(interp_sign(ctx, once.patch, st.letter == 'Z' ? 'X' : 'Z'),
                 st.bit, tag + "middle value");
      }
      HadamardResult twice = hadamard_rotate(ctx, once.patch, rng);
      v.expect(same_footprint(twice.patch.spec, spec), tag + "footprint");
      if (st.letter == 'Y') {
        v.opt_eq(interp_y(ctx, twice.patch), st.bit, tag + "final value");
      } else {
        v.opt_eq(interp_sign(ctx, twice.patch, st.letter), st.bit,
                 tag + "final value");
        v.expect(!interp_sign(ctx, twice.patch,
                              st.letter == 'Z' ? 'X' : 'Z')
                      .has_value(),
                 tag + "conjugate should be undefined");
      }
    }
  }
  return v.wrap("basis swap exact at d=3; double pass is the identity on all "
                "six eigenstates");
}

// ---------------------------------------------------------------------------
// Check 13: round accounting.  The fused CNOT consumes exactly d correction
// rounds, the sequential variant exactly 3d, and both still produce the
// right outputs while instrumented.
// ---------------------------------------------------------------------------

CheckResult check_round_budgets(const CheckSettings&) {
  Verdict v;
  int seed = 48000;
  for (int d : {2, 3}) {
    for (bool fused : {true, false}) {
      const std::string tag = std::string(fused ? "fused" : "sequential") +
                              " d=" + std::to_string(d) + ": ";
      CnotSpecs cs = cnot_specs(Encoding::kStandard, d);
      SurgeryContext ctx(Encoding::kStandard, cs.hull);
      Rng rng(++seed);
      const LatticeSpec& ctrl = fused ? cs.control_wide : cs.control;
      prep_logical(ctx, ctrl, 'Z', 1, rng);
      prep_logical(ctx, cs.target, 'Z', 1, rng);
      Patch pc = make_patch(ctrl);
      Patch pt = make_patch(cs.target);
      ctx.activate({ctrl, cs.target});
      ctx.run_rounds(d, kQuiet, MeasureMode::kDirect, rng);
      const int before = ctx.rounds_run();
      CnotResult res = fused ? cnot_fused(ctx, pc, pt, cs, rng)
                             : cnot_sequential(ctx, pc, pt, cs, rng);
      v.eq(res.rounds_used, fused ? d : 3 * d, tag + "reported rounds");
      v.eq(ctx.rounds_run() - before, fused ? d : 3 * d,
           tag + "rounds actually run");
      ctx.final_readout(cs.control.data_sites, 'Z', rng);
      ctx.final_readout(cs.target_merged.data_sites, 'Z', rng);
      v.eq(logical_readout(ctx, res.control, 'Z').value, 1, tag + "control");
      v.eq(logical_readout(ctx, res.target, 'Z').value, 0, tag + "target");
    }
  }
  return v.wrap("fused: d rounds; sequential: 3d rounds; outputs correct");
}

}  // namespace

CheckSettings CheckSettings::reduced() {
  CheckSettings s;
  s.scaling_trials = 3000;
  s.inversion_trials = 1000;
  s.matcher_instances = 200;
  s.fault_sweep = false;
  return s;
}

std::vector<CheckResult> run_self_checks(const CheckSettings& settings,
                                         const CheckProgress& on_done) {
  struct Item {
    int id;
    const char* name;
    CheckResult (*fn)(const CheckSettings&);
  };
  const Item items[] = {
      {1, "cnot-truth-tables", check_truth_tables},
      {2, "cnot-matches-reference", check_channel_vs_reference},
      {3, "join-outcome-tables", check_join_tables},
      {4, "split-outcome-tables", check_split_tables},
      {5, "merge-parity-rule", check_merge_parity},
      {6, "entangled-pair-and-chain", check_pair_and_chain},
      {7, "distance-and-site-counts", check_distances},
      {8, "compact-cnot-fault-sweep", check_compact_cnot},
      {9, "decoder-exhaustive-and-matcher", check_decoder},
      {10, "noise-scaling-crossover", check_noise_scaling},
      {11, "state-injection", check_injection},
      {12, "hadamard-rotation", check_hadamard},
      {13, "round-budgets", check_round_budgets},
  };
  std::vector<CheckResult> out;
  out.reserve(std::size(items));
  for (const Item& item : items) {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult r = item.fn(settings);
    r.id = item.id;
    r.name = item.name;
    r.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (on_done) on_done(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace lsurg
