#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <string>

#include "lsurg/decoder.hpp"

using namespace lsurg;

namespace {

void prep_all(SurgeryContext& ctx, const LatticeSpec& spec, char basis,
              Rng& rng) {
  for (const Coord& c : spec.data_sites) ctx.init_data(c, basis, rng);
}

struct Hooks {
  std::function<void(SurgeryContext&, int)> before_round;
  std::function<void(SurgeryContext&, int)> after_round;
  std::function<void(SurgeryContext&)> before_readout;
};

// Distance-3 memory: prepare, run `n_segments` stretches of rounds (the
// same patch re-activated, exercising cross-activation birth relations),
// read out transversally.  Four rounds total either way.
SurgeryContext run_memory(Encoding enc, char basis, int n_segments,
                          const Hooks& hooks) {
  LatticeSpec spec =
      enc == Encoding::kStandard ? standard_patch(3) : rotated_patch(3);
  SurgeryContext ctx(enc, spec.data_sites);
  Rng rng(2024);
  prep_all(ctx, spec, basis, rng);
  NoiseModel quiet;
  int rounds_per_segment = 4 / n_segments;
  int r = 0;
  for (int g = 0; g < n_segments; ++g) {
    ctx.activate({spec});
    for (int i = 0; i < rounds_per_segment; ++i, ++r) {
      if (hooks.before_round) hooks.before_round(ctx, r);
      ctx.run_round(quiet, MeasureMode::kDirect, rng);
      if (hooks.after_round) hooks.after_round(ctx, r);
    }
  }
  if (hooks.before_readout) hooks.before_readout(ctx);
  ctx.final_readout(spec.data_sites, basis, rng);
  return ctx;
}

int decoded_logical(const SurgeryContext& ctx, const LatticeSpec& spec,
                    char basis, const DetectorModel& model) {
  DecodeResult res = decode(model, ctx);
  const auto& chain = basis == 'Z' ? spec.logical_z : spec.logical_x;
  return corrected_bit(ctx.chain_parity(chain), res.flipped);
}

PauliString site_pauli(const SurgeryContext& ctx, Coord site, char letter) {
  return PauliString::single(ctx.tableau().n(), ctx.layout().data_qubit(site),
                             letter);
}

}  // namespace

TEST_CASE("fault-free memory runs decode to nothing") {
  for (Encoding enc : {Encoding::kStandard, Encoding::kRotated}) {
    for (char basis : {'Z', 'X'}) {
      for (int segs : {1, 2}) {
        SurgeryContext ctx = run_memory(enc, basis, segs, {});
        DetectorModel model = build_detector_model(ctx);
        CHECK(fired_detectors(model, ctx).empty());
        DecodeResult res = decode(model, ctx);
        CHECK(res.flipped.empty());
        CHECK(res.n_events == 0);
      }
    }
  }
}

TEST_CASE("model construction is deterministic across identical runs") {
  SurgeryContext a = run_memory(Encoding::kStandard, 'Z', 2, {});
  SurgeryContext b = run_memory(Encoding::kStandard, 'Z', 2, {});
  DetectorModel ma = build_detector_model(a);
  DetectorModel mb = build_detector_model(b);
  REQUIRE(ma.detectors.size() == mb.detectors.size());
  REQUIRE(ma.edges.size() == mb.edges.size());
  for (size_t i = 0; i < ma.detectors.size(); ++i) {
    CHECK(ma.detectors[i].records == mb.detectors[i].records);
    CHECK(ma.detectors[i].constant == mb.detectors[i].constant);
  }
  for (size_t i = 0; i < ma.edges.size(); ++i) {
    CHECK(ma.edges[i].a == mb.edges[i].a);
    CHECK(ma.edges[i].b == mb.edges[i].b);
    CHECK(ma.edges[i].payload == mb.edges[i].payload);
  }
}

TEST_CASE("every single space-time fault in a d=3 memory is corrected") {
  const int kRounds = 4;
  for (Encoding enc : {Encoding::kStandard, Encoding::kRotated}) {
    for (char basis : {'Z', 'X'}) {
      for (int segs : {1, 2}) {
        CAPTURE(enc == Encoding::kStandard ? "standard" : "rotated");
        CAPTURE(basis);
        CAPTURE(segs);
        LatticeSpec spec =
            enc == Encoding::kStandard ? standard_patch(3) : rotated_patch(3);
        SurgeryContext clean = run_memory(enc, basis, segs, {});
        DetectorModel model = build_detector_model(clean);
        REQUIRE(decoded_logical(clean, spec, basis, model) == 0);

        // Pauli faults at every site, every letter, before every round and
        // before the readout.  The model built from the clean run applies
        // to every faulty run: the record layout is identical.
        for (const Coord& site : spec.data_sites) {
          for (char letter : {'X', 'Y', 'Z'}) {
            for (int t = 0; t <= kRounds; ++t) {
              CAPTURE(site.r); CAPTURE(site.c); CAPTURE(letter); CAPTURE(t);
              Hooks hooks;
              if (t < kRounds) {
                hooks.before_round = [&](SurgeryContext& c, int r) {
                  if (r == t) c.apply_pauli(site_pauli(c, site, letter));
                };
              } else {
                hooks.before_readout = [&](SurgeryContext& c) {
                  c.apply_pauli(site_pauli(c, site, letter));
                };
              }
              SurgeryContext ctx = run_memory(enc, basis, segs, hooks);
              REQUIRE(decoded_logical(ctx, spec, basis, model) == 0);
            }
          }
        }

        // Classical flips of every check outcome in every round.
        int n_checks = static_cast<int>(clean.active_slot_ids().size());
        for (int pos = 0; pos < n_checks; ++pos) {
          for (int t = 0; t < kRounds; ++t) {
            CAPTURE(pos); CAPTURE(t);
            Hooks hooks;
            hooks.after_round = [&](SurgeryContext& c, int r) {
              if (r == t) {
                int id = c.active_slot_ids()[pos];
                c.flip_record(c.slot(id).outcome_records.back());
              }
            };
            SurgeryContext ctx = run_memory(enc, basis, segs, hooks);
            REQUIRE(decoded_logical(ctx, spec, basis, model) == 0);
          }
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// White-box payload checks on joined and split patches: the decoder must
// report exactly the records whose reinterpretation repairs the run.
// ---------------------------------------------------------------------------

namespace {

// Two d=2 patches joined across a seam column into one wide patch.
struct JoinRun {
  LatticeSpec specA = make_patch_spec(Encoding::kStandard, {0, 0}, {2, 2});
  LatticeSpec specB = make_patch_spec(Encoding::kStandard, {0, 4}, {2, 6});
  LatticeSpec merged = make_patch_spec(Encoding::kStandard, {0, 0}, {2, 6});

  SurgeryContext run(const std::function<void(SurgeryContext&, int)>& at) {
    std::vector<Coord> hull = region_union(
        {region_rect(Encoding::kStandard, {0, 0}, {2, 2}),
         region_rect(Encoding::kStandard, {0, 4}, {2, 6}),
         {{1, 3}}});
    SurgeryContext ctx(Encoding::kStandard, hull);
    Rng rng(31);
    NoiseModel quiet;
    prep_all(ctx, specA, 'Z', rng);
    prep_all(ctx, specB, 'Z', rng);
    ctx.activate({specA, specB});
    if (at) at(ctx, 0);  // stage 0: before solo rounds
    ctx.run_rounds(2, quiet, MeasureMode::kDirect, rng);
    ctx.init_data({1, 3}, 'Z', rng);
    ctx.activate({merged});
    if (at) at(ctx, 1);  // stage 1: after the join, before merged rounds
    ctx.run_round(quiet, MeasureMode::kDirect, rng);
    if (at) at(ctx, 2);  // stage 2: after the first merged round
    ctx.run_round(quiet, MeasureMode::kDirect, rng);
    ctx.final_readout(merged.data_sites, 'Z', rng);
    return ctx;
  }
};

int find_slot(const SurgeryContext& ctx, Coord key, bool fresh_only) {
  int found = -1;
  for (int id : ctx.active_slot_ids()) {
    const SlotInstance& s = ctx.slot(id);
    if (s.key == key && (!fresh_only || s.fresh)) found = id;
  }
  REQUIRE(found >= 0);
  return found;
}

}  // namespace

TEST_CASE("seam bit-flip at the join pairs the extended checks and repairs the readout") {
  JoinRun j;
  SurgeryContext ctx = j.run([&](SurgeryContext& c, int stage) {
    if (stage == 1) c.apply_pauli(site_pauli(c, {1, 3}, 'X'));
  });
  DetectorModel model = build_detector_model(ctx);
  auto fired = fired_detectors(model, ctx);
  REQUIRE(fired.size() == 2);
  for (int f : fired) {
    CHECK(model.detectors[f].kind == DetectorKind::kBirth);
    CHECK(model.detectors[f].sector == CheckType::kZ);
  }
  DecodeResult res = decode(model, ctx);
  CHECK(res.matching_cost == 1);
  // The error rides into the transversal readout: the payload is exactly
  // the seam qubit's final bit.
  REQUIRE(ctx.has_readout({1, 3}));
  DepSet want = ctx.readout_bit({1, 3}).deps;
  CHECK(res.flipped == want);
  // The wide patch's logical Z parity stays correct after reinterpretation.
  CHECK(corrected_bit(ctx.chain_parity(j.merged.logical_z), res.flipped) == 0);
}

TEST_CASE("phase error on the seam mid-join is matched with an empty payload") {
  JoinRun j;
  SurgeryContext ctx = j.run([&](SurgeryContext& c, int stage) {
    if (stage == 2) c.apply_pauli(site_pauli(c, {1, 3}, 'Z'));
  });
  DetectorModel model = build_detector_model(ctx);
  auto fired = fired_detectors(model, ctx);
  REQUIRE(fired.size() == 2);
  for (int f : fired) {
    CHECK(model.detectors[f].kind == DetectorKind::kTimeDiff);
    CHECK(model.detectors[f].sector == CheckType::kX);
  }
  DecodeResult res = decode(model, ctx);
  CHECK(res.matching_cost == 1);
  CHECK(res.flipped.empty());
}

TEST_CASE("flipping a fresh seam check's first outcome reinterprets its reference") {
  JoinRun j;
  int ref = -1;
  SurgeryContext ctx = j.run([&](SurgeryContext& c, int stage) {
    if (stage == 2) {
      int id = find_slot(c, {0, 3}, true);
      c.flip_record(c.slot(id).outcome_records[0]);
      ref = c.slot(id).reference_record;
    }
  });
  REQUIRE(ref >= 0);
  DetectorModel model = build_detector_model(ctx);
  auto fired = fired_detectors(model, ctx);
  REQUIRE(fired.size() == 1);
  CHECK(model.detectors[fired[0]].kind == DetectorKind::kTimeDiff);
  DecodeResult res = decode(model, ctx);
  CHECK(res.flipped == DepSet{ref});
}

namespace {

// A tall patch split into two: the seam qubit is measured out in X.
struct SplitRun {
  LatticeSpec tall = make_patch_spec(Encoding::kStandard, {0, 0}, {6, 2});
  LatticeSpec top = make_patch_spec(Encoding::kStandard, {0, 0}, {2, 2});
  LatticeSpec bottom = make_patch_spec(Encoding::kStandard, {4, 0}, {6, 2});
  int mo_record = -1;

  SurgeryContext run(const std::function<void(SurgeryContext&, int)>& at) {
    SurgeryContext ctx(Encoding::kStandard, tall.data_sites);
    Rng rng(47);
    NoiseModel quiet;
    prep_all(ctx, tall, 'X', rng);
    ctx.activate({tall});
    ctx.run_round(quiet, MeasureMode::kDirect, rng);
    if (at) at(ctx, 0);  // stage 0: between the joint rounds
    ctx.run_round(quiet, MeasureMode::kDirect, rng);
    if (at) at(ctx, 1);  // stage 1: before the seam measurement
    SignedValue m = ctx.measure_out({3, 1}, 'X', rng);
    mo_record = *m.deps.begin();
    if (at) at(ctx, 2);  // stage 2: after it, before the split activation
    ctx.activate({top, bottom});
    ctx.run_rounds(2, quiet, MeasureMode::kDirect, rng);
    std::vector<Coord> remaining = top.data_sites;
    remaining.insert(remaining.end(), bottom.data_sites.begin(),
                     bottom.data_sites.end());
    ctx.final_readout(remaining, 'X', rng);
    return ctx;
  }
};

}  // namespace

TEST_CASE("phase error right before the seam measure-out flags its record") {
  SplitRun s;
  SurgeryContext ctx = s.run([&](SurgeryContext& c, int stage) {
    if (stage == 1) c.apply_pauli(site_pauli(c, {3, 1}, 'Z'));
  });
  DetectorModel model = build_detector_model(ctx);
  auto fired = fired_detectors(model, ctx);
  REQUIRE(fired.size() == 2);
  for (int f : fired) {
    CHECK(model.detectors[f].kind == DetectorKind::kBirth);
    CHECK(model.detectors[f].sector == CheckType::kX);
  }
  DecodeResult res = decode(model, ctx);
  CHECK(res.matching_cost == 1);
  CHECK(res.flipped == DepSet{s.mo_record});
}

TEST_CASE("classical flip of the measure-out record decodes identically") {
  SplitRun s;
  SurgeryContext ctx = s.run([&](SurgeryContext& c, int stage) {
    if (stage == 2) c.flip_record(s.mo_record);
  });
  DetectorModel model = build_detector_model(ctx);
  REQUIRE(fired_detectors(model, ctx).size() == 2);
  DecodeResult res = decode(model, ctx);
  CHECK(res.flipped == DepSet{s.mo_record});
}

TEST_CASE("phase error mid-join flips the later outcomes and the measure-out together") {
  SplitRun s;
  SurgeryContext ctx = s.run([&](SurgeryContext& c, int stage) {
    if (stage == 0) c.apply_pauli(site_pauli(c, {3, 1}, 'Z'));
  });
  DetectorModel model = build_detector_model(ctx);
  auto fired = fired_detectors(model, ctx);
  REQUIRE(fired.size() == 2);
  for (int f : fired) {
    CHECK(model.detectors[f].kind == DetectorKind::kTimeDiff);
  }
  // The birth relations across the split stay silent: the flipped last
  // outcomes are compared against the equally flipped measure-out.
  DecodeResult res = decode(model, ctx);
  CHECK(res.matching_cost == 1);
  CHECK(res.flipped == DepSet{s.mo_record});
}

TEST_CASE("bit-flip error just before an X measure-out is absorbed silently") {
  SplitRun s;
  SurgeryContext ctx = s.run([&](SurgeryContext& c, int stage) {
    if (stage == 1) c.apply_pauli(site_pauli(c, {3, 1}, 'X'));
  });
  DetectorModel model = build_detector_model(ctx);
  CHECK(fired_detectors(model, ctx).empty());
  CHECK(decode(model, ctx).flipped.empty());
}
