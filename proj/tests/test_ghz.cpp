#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>

#include "lsurg/protocols.hpp"

using namespace lsurg;

namespace {

// Interpreted sign bit of the product of several patches' logicals in one
// basis; nullopt when the product is not determined by the state.
std::optional<int> product_sign(const SurgeryContext& ctx,
                                const std::vector<const Patch*>& ps,
                                char basis) {
  PauliString op;
  int frame = 0;
  for (const Patch* p : ps) {
    const auto& chain = basis == 'Z' ? p->ref_z : p->ref_x;
    PauliString part = ctx.layout().chain_operator(chain, basis);
    op = op.n() == 0 ? part : op * part;
    frame ^= (basis == 'Z' ? p->fz : p->fx).value;
  }
  auto gs = ctx.tableau().group_sign(op);
  if (!gs) return std::nullopt;
  return *gs ^ frame;
}

}  // namespace

TEST_CASE("splitting |+> in half leaves a bell pair") {
  for (const Encoding enc : {Encoding::kStandard, Encoding::kRotated}) {
    for (const int d : {2, 3}) {
      CAPTURE(d);
      Rng rng(0xbe11 + d);
      GhzSpecs gs = ghz_specs(enc, d, 2, 'Z');
      SurgeryContext ctx(enc, gs.hull);
      GhzResult res = make_ghz(ctx, gs, rng);
      REQUIRE(res.parties.size() == 2);
      const Patch &q1 = res.parties[0], &q2 = res.parties[1];
      CHECK(product_sign(ctx, {&q1, &q2}, 'X') == 0);
      CHECK(product_sign(ctx, {&q1, &q2}, 'Z') == 0);
      // The pair is entangled: no single-patch logical is determined.
      CHECK_FALSE(product_sign(ctx, {&q1}, 'X').has_value());
      CHECK_FALSE(product_sign(ctx, {&q1}, 'Z').has_value());
      CHECK(code_distance(q1.spec) == d);
      CHECK(code_distance(q2.spec) == d);
      CHECK(res.report.splits.size() == 1);
    }
  }
}

TEST_CASE("double splitting makes the three-party chain state") {
  // Z-correlated triple on distance-4 squares.
  Rng rng(0x3347);
  GhzSpecs gs = ghz_specs(Encoding::kStandard, 4, 3, 'Z');
  SurgeryContext ctx(Encoding::kStandard, gs.hull);
  GhzResult res = make_ghz(ctx, gs, rng);
  REQUIRE(res.parties.size() == 3);
  const Patch &q1 = res.parties[0], &q2 = res.parties[1], &q3 = res.parties[2];
  CHECK(product_sign(ctx, {&q1, &q2, &q3}, 'X') == 0);
  CHECK(product_sign(ctx, {&q1, &q2}, 'Z') == 0);
  CHECK(product_sign(ctx, {&q2, &q3}, 'Z') == 0);
  CHECK(product_sign(ctx, {&q1, &q3}, 'Z') == 0);
  CHECK_FALSE(product_sign(ctx, {&q2}, 'Z').has_value());
  CHECK_FALSE(product_sign(ctx, {&q1, &q2}, 'X').has_value());
  for (const Patch* q : {&q1, &q2, &q3}) {
    CHECK(code_distance(q->spec, CheckType::kX) == 4);
    CHECK(code_distance(q->spec, CheckType::kZ) == 4);
  }

  // Same state in the rotated encoding.
  Rng rng2(0x3348);
  GhzSpecs gr = ghz_specs(Encoding::kRotated, 3, 3, 'Z');
  SurgeryContext ctx2(Encoding::kRotated, gr.hull);
  GhzResult res2 = make_ghz(ctx2, gr, rng2);
  const Patch &r1 = res2.parties[0], &r2 = res2.parties[1],
              &r3 = res2.parties[2];
  CHECK(product_sign(ctx2, {&r1, &r2, &r3}, 'X') == 0);
  CHECK(product_sign(ctx2, {&r1, &r2}, 'Z') == 0);
  CHECK(product_sign(ctx2, {&r2, &r3}, 'Z') == 0);
  for (const Patch* q : {&r1, &r2, &r3}) CHECK(code_distance(q->spec) == 3);
}

TEST_CASE("the x-basis chain state is the dual group") {
  for (const Encoding enc : {Encoding::kStandard, Encoding::kRotated}) {
    CAPTURE(enc == Encoding::kStandard);
    Rng rng(0x5ee);
    GhzSpecs gs = ghz_specs(enc, 2, 3, 'X');
    SurgeryContext ctx(enc, gs.hull);
    GhzResult res = make_ghz(ctx, gs, rng);
    REQUIRE(res.parties.size() == 3);
    const Patch &q1 = res.parties[0], &q2 = res.parties[1],
                &q3 = res.parties[2];
    CHECK(product_sign(ctx, {&q1, &q2, &q3}, 'Z') == 0);
    CHECK(product_sign(ctx, {&q1, &q2}, 'X') == 0);
    CHECK(product_sign(ctx, {&q2, &q3}, 'X') == 0);
    CHECK_FALSE(product_sign(ctx, {&q1}, 'X').has_value());
    CHECK_FALSE(product_sign(ctx, {&q1, &q2}, 'Z').has_value());
  }
}

TEST_CASE("chain-state correlations survive transversal readout") {
  for (const char arm : {'Z', 'X'}) {
    CAPTURE(arm);
    Rng rng(0x4ead + arm);
    GhzSpecs gs = ghz_specs(Encoding::kStandard, 2, 3, 'Z');
    SurgeryContext ctx(Encoding::kStandard, gs.hull);
    GhzResult res = make_ghz(ctx, gs, rng);
    std::vector<std::vector<Coord>> regions;
    for (const Patch& p : res.parties) regions.push_back(p.spec.data_sites);
    ctx.final_readout(region_union(regions), arm, rng);
    const int b1 = logical_readout(ctx, res.parties[0], arm).value;
    const int b2 = logical_readout(ctx, res.parties[1], arm).value;
    const int b3 = logical_readout(ctx, res.parties[2], arm).value;
    if (arm == 'Z') {
      CHECK(b1 == b2);
      CHECK(b2 == b3);
    } else {
      CHECK((b1 ^ b2 ^ b3) == 0);
    }
  }
}
