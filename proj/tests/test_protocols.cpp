#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>

#include "lsurg/decoder.hpp"
#include "lsurg/protocols.hpp"

using namespace lsurg;

namespace {

const NoiseModel kQuiet{};

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

// Two-qubit logical probe: letters ('I','X','Z') on each patch; the frame-
// corrected tableau sign, or nullopt when the state is not an eigenstate.
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

enum class Variant { kSequential, kFused, kOracle };

// Runs one CNOT on the given eigenstate input and checks the output state
// against the ideal channel, probe by probe; for same-basis inputs also
// checks the destructive readout truth table.
void check_one_input(Encoding enc, int d, Variant var, char b1, int v1,
                     char b2, int v2, int seed) {
  CAPTURE(b1);
  CAPTURE(v1);
  CAPTURE(b2);
  CAPTURE(v2);
  Rng rng(seed);
  if (var == Variant::kOracle) {
    const int s = enc == Encoding::kStandard ? 2 * (d - 1) : d - 1;
    LatticeSpec a = make_patch_spec(enc, {0, 0}, {s, s});
    LatticeSpec b = make_patch_spec(enc, {0, s + 2}, {s, 2 * s + 2});
    SurgeryContext ctx(enc, region_union({a.data_sites, b.data_sites}));
    prep_logical(ctx, a, b1, v1, rng);
    prep_logical(ctx, b, b2, v2, rng);
    ctx.activate({a, b});
    ctx.run_rounds(d, kQuiet, MeasureMode::kDirect, rng);
    transversal_cnot(ctx, a, b);
    ctx.run_rounds(1, kQuiet, MeasureMode::kDirect, rng);
    Patch pa = make_patch(a);
    Patch pb = make_patch(b);
    for (const char* pr : kProbes) {
      CAPTURE(pr);
      CHECK(probe_sign(ctx, pa, pb, pr[0], pr[1]) ==
            ideal_sign(b1, v1, b2, v2, pr[0], pr[1]));
    }
    if (b1 == b2) {
      ctx.final_readout(a.data_sites, b1, rng);
      ctx.final_readout(b.data_sites, b1, rng);
      int out1 = logical_readout(ctx, pa, b1).value;
      int out2 = logical_readout(ctx, pb, b1).value;
      CHECK(out1 == (b1 == 'Z' ? v1 : v1 ^ v2));
      CHECK(out2 == (b1 == 'Z' ? v1 ^ v2 : v2));
    }
    return;
  }

  CnotSpecs cs = cnot_specs(enc, d);
  SurgeryContext ctx(enc, cs.hull);
  const LatticeSpec& ctrl_spec =
      var == Variant::kFused ? cs.control_wide : cs.control;
  prep_logical(ctx, ctrl_spec, b1, v1, rng);
  prep_logical(ctx, cs.target, b2, v2, rng);
  Patch pc = make_patch(ctrl_spec);
  Patch pt = make_patch(cs.target);
  ctx.activate({ctrl_spec, cs.target});
  ctx.run_rounds(d, kQuiet, MeasureMode::kDirect, rng);

  CnotResult res = var == Variant::kFused
                       ? cnot_fused(ctx, pc, pt, cs, rng)
                       : cnot_sequential(ctx, pc, pt, cs, rng);
  CHECK(res.rounds_used == (var == Variant::kFused ? cs.d : 3 * cs.d));

  for (const char* pr : kProbes) {
    CAPTURE(pr);
    CHECK(probe_sign(ctx, res.control, res.target, pr[0], pr[1]) ==
          ideal_sign(b1, v1, b2, v2, pr[0], pr[1]));
  }
  if (b1 == b2) {
    ctx.final_readout(cs.control.data_sites, b1, rng);
    ctx.final_readout(cs.target_merged.data_sites, b1, rng);
    int out1 = logical_readout(ctx, res.control, b1).value;
    int out2 = logical_readout(ctx, res.target, b1).value;
    CHECK(out1 == (b1 == 'Z' ? v1 : v1 ^ v2));
    CHECK(out2 == (b1 == 'Z' ? v1 ^ v2 : v2));
  }
}

void check_channel(Encoding enc, int d, Variant var) {
  CAPTURE(enc == Encoding::kStandard ? "standard" : "rotated");
  CAPTURE(d);
  int seed = 5000 + d * 100 + static_cast<int>(var) * 1000 +
             (enc == Encoding::kRotated ? 7 : 0);
  for (char b1 : {'Z', 'X'}) {
    for (int v1 = 0; v1 <= 1; ++v1) {
      for (char b2 : {'Z', 'X'}) {
        for (int v2 = 0; v2 <= 1; ++v2) {
          check_one_input(enc, d, var, b1, v1, b2, v2, ++seed);
        }
      }
    }
  }
}

}  // namespace

TEST_CASE("junction-based CNOT region plan: smallest instance site counts") {
  CnotSpecs cs = cnot_specs(Encoding::kRotated, 3);
  CHECK(cs.hull.size() == 33);
  Layout lay = Layout::build(Encoding::kRotated, cs.hull);
  CHECK(lay.n_data() == 33);
  CHECK(lay.n_ancilla() == 20);
  CHECK(lay.n_total() == 53);
  // The standard-encoding plan at the same distance is markedly larger.
  CnotSpecs std3 = cnot_specs(Encoding::kStandard, 3);
  CHECK(std3.hull.size() > cs.hull.size());
}

TEST_CASE("sequential CNOT implements the ideal channel (d=2)") {
  check_channel(Encoding::kStandard, 2, Variant::kSequential);
  check_channel(Encoding::kRotated, 2, Variant::kSequential);
}

TEST_CASE("fused CNOT implements the ideal channel (d=2)") {
  check_channel(Encoding::kStandard, 2, Variant::kFused);
  check_channel(Encoding::kRotated, 2, Variant::kFused);
}

TEST_CASE("matched-site CNOT oracle implements the ideal channel") {
  check_channel(Encoding::kStandard, 2, Variant::kOracle);
  check_channel(Encoding::kStandard, 3, Variant::kOracle);
  check_channel(Encoding::kRotated, 3, Variant::kOracle);
}

TEST_CASE("sequential CNOT implements the ideal channel (d=3)") {
  check_channel(Encoding::kStandard, 3, Variant::kSequential);
  check_channel(Encoding::kRotated, 3, Variant::kSequential);
}

TEST_CASE("fused CNOT implements the ideal channel (d=3)") {
  check_channel(Encoding::kStandard, 3, Variant::kFused);
  check_channel(Encoding::kRotated, 3, Variant::kFused);
}

TEST_CASE("fused CNOT survives injected faults after decoding") {
  // Clean reference run fixes the detector model and the truth values; each
  // faulty replay must decode back to the same outcomes.  A spread of
  // single faults; the exhaustive sweep lives with the release checks.
  const Encoding enc = Encoding::kRotated;
  CnotSpecs cs = cnot_specs(enc, 3);
  auto run = [&](char basis, int v1, int v2,
                 const std::function<void(SurgeryContext&, int)>& after,
                 DetectorModel* model_out, std::vector<int>* outs,
                 DecodeResult* dec_out) {
    Rng rng(777);
    SurgeryContext ctx(enc, cs.hull);
    prep_logical(ctx, cs.control_wide, basis, v1, rng);
    prep_logical(ctx, cs.target, basis, v2, rng);
    Patch pc = make_patch(cs.control_wide);
    Patch pt = make_patch(cs.target);
    ctx.activate({cs.control_wide, cs.target});
    ProtocolOptions opt;
    opt.after_round = after;
    run_segment(ctx, 3, opt, rng);
    CnotResult res = cnot_fused(ctx, pc, pt, cs, rng, opt);
    ctx.final_readout(cs.control.data_sites, basis, rng);
    ctx.final_readout(cs.target_merged.data_sites, basis, rng);
    SignedValue o1 = logical_readout(ctx, res.control, basis);
    SignedValue o2 = logical_readout(ctx, res.target, basis);
    DetectorModel model = build_detector_model(ctx);
    DecodeResult dec = decode(model, ctx);
    outs->clear();
    outs->push_back(corrected_bit(o1, dec.flipped));
    outs->push_back(corrected_bit(o2, dec.flipped));
    if (model_out) *model_out = model;
    if (dec_out) *dec_out = dec;
  };

  for (char basis : {'Z', 'X'}) {
    CAPTURE(basis);
    const int v1 = 1, v2 = 0;
    DetectorModel clean_model;
    std::vector<int> clean_out;
    DecodeResult clean_dec;
    run(basis, v1, v2, {}, &clean_model, &clean_out, &clean_dec);
    CHECK(clean_dec.n_events == 0);
    const int e1 = basis == 'Z' ? v1 : v1 ^ v2;
    const int e2 = basis == 'Z' ? v1 ^ v2 : v2;
    REQUIRE(clean_out == std::vector<int>{e1, e2});

    // Pauli faults on a sample of sites at every round boundary.
    const Coord sample_sites[] = {{0, 3}, {1, 1}, {3, 5}, {4, 4}, {2, 6},
                                  {6, 4}, {0, 0}, {2, 2}, {5, 5}};
    for (int round = 0; round < 6; ++round) {
      for (const Coord& site : sample_sites) {
        for (char letter : {'X', 'Z', 'Y'}) {
          CAPTURE(round);
          CAPTURE(site.r);
          CAPTURE(site.c);
          CAPTURE(letter);
          std::vector<int> out;
          run(basis, v1, v2,
              [&](SurgeryContext& c, int r) {
                if (r == round && c.layout().has_data(site)) {
                  c.apply_pauli(c.layout().site_operator(site, letter));
                }
              },
              nullptr, &out, nullptr);
          CHECK(out == clean_out);
        }
      }
    }
  }
}
