#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "lsurg/lattice.hpp"

using namespace lsurg;

namespace {

// Translates a plaquette into 1-based indices into data_sites, the layout
// numbering used throughout the hand-worked examples.
std::set<int> labels_of(const LatticeSpec& spec, const Plaquette& p) {
  std::set<int> out;
  for (Coord q : p.data) {
    const auto it =
        std::lower_bound(spec.data_sites.begin(), spec.data_sites.end(), q);
    REQUIRE(it != spec.data_sites.end());
    REQUIRE(*it == q);
    out.insert(static_cast<int>(it - spec.data_sites.begin()) + 1);
  }
  return out;
}

std::set<std::set<int>> check_sets(const LatticeSpec& spec, CheckType t) {
  std::set<std::set<int>> out;
  for (const auto& p : spec.plaquettes)
    if (p.type == t) out.insert(labels_of(spec, p));
  return out;
}

}  // namespace

TEST_CASE("distance-3 standard patch: full check table") {
  const LatticeSpec spec = standard_patch(3);
  REQUIRE(spec.data_sites.size() == 13);
  // Data numbering follows sorted grid order:
  //  1=(0,0) 2=(0,2) 3=(0,4) 4=(1,1) 5=(1,3) 6=(2,0) 7=(2,2) 8=(2,4)
  //  9=(3,1) 10=(3,3) 11=(4,0) 12=(4,2) 13=(4,4)
  CHECK(spec.data_sites[3] == Coord{1, 1});
  CHECK(spec.data_sites[7] == Coord{2, 4});

  const std::set<std::set<int>> want_x = {
      {1, 2, 4},    {2, 3, 5},    {4, 6, 7, 9},
      {5, 7, 8, 10}, {9, 11, 12}, {10, 12, 13}};
  const std::set<std::set<int>> want_z = {
      {1, 4, 6},    {2, 4, 5, 7}, {3, 5, 8},
      {6, 9, 11},   {7, 9, 10, 12}, {8, 10, 13}};
  CHECK(check_sets(spec, CheckType::kX) == want_x);
  CHECK(check_sets(spec, CheckType::kZ) == want_z);

  // Canonical chains: Z along the bottom data row, X along the left column.
  CHECK(spec.logical_z == std::vector<Coord>{{0, 0}, {0, 2}, {0, 4}});
  CHECK(spec.logical_x == std::vector<Coord>{{0, 0}, {2, 0}, {4, 0}});
  CHECK(spec.boundaries.top == BoundaryLabel::kSmooth);
  CHECK(spec.boundaries.bottom == BoundaryLabel::kSmooth);
  CHECK(spec.boundaries.left == BoundaryLabel::kRough);
  CHECK(spec.boundaries.right == BoundaryLabel::kRough);
}

TEST_CASE("distance-3 rotated patch: full check table") {
  const LatticeSpec spec = rotated_patch(3);
  REQUIRE(spec.data_sites.size() == 9);
  REQUIRE(spec.plaquettes.size() == 8);
  // Numbering: 1=(0,0) 2=(0,1) 3=(0,2) 4=(1,0) 5=(1,1) 6=(1,2)
  //            7=(2,0) 8=(2,1) 9=(2,2)
  const std::set<std::set<int>> want_x = {
      {4, 7}, {1, 2, 4, 5}, {5, 6, 8, 9}, {3, 6}};
  const std::set<std::set<int>> want_z = {
      {1, 2}, {2, 3, 5, 6}, {4, 5, 7, 8}, {8, 9}};
  CHECK(check_sets(spec, CheckType::kX) == want_x);
  CHECK(check_sets(spec, CheckType::kZ) == want_z);

  // Weight profile: two weight-2 checks per letter, two weight-4.
  int w2 = 0, w4 = 0;
  for (const auto& p : spec.plaquettes) {
    if (p.data.size() == 2) ++w2;
    if (p.data.size() == 4) ++w4;
  }
  CHECK(w2 == 4);
  CHECK(w4 == 4);

  CHECK(spec.logical_x == std::vector<Coord>{{0, 0}, {0, 1}, {0, 2}});
  CHECK(spec.logical_z == std::vector<Coord>{{0, 0}, {1, 0}, {2, 0}});
  CHECK(spec.boundaries.top == BoundaryLabel::kRough);
  CHECK(spec.boundaries.bottom == BoundaryLabel::kRough);
  CHECK(spec.boundaries.left == BoundaryLabel::kSmooth);
  CHECK(spec.boundaries.right == BoundaryLabel::kSmooth);
}

TEST_CASE("rotated distance-2 patch is the [[4,1,2]] code") {
  const LatticeSpec spec = rotated_patch(2);
  CHECK(spec.data_sites.size() == 4);
  REQUIRE(spec.plaquettes.size() == 3);
  const std::set<std::set<int>> want_x = {{1, 2, 3, 4}};
  const std::set<std::set<int>> want_z = {{1, 2}, {3, 4}};
  CHECK(check_sets(spec, CheckType::kX) == want_x);
  CHECK(check_sets(spec, CheckType::kZ) == want_z);
  CHECK(code_distance(spec) == 2);
}

TEST_CASE("qubit and check counts scale correctly") {
  for (int d = 2; d <= 5; ++d) {
    CAPTURE(d);
    const LatticeSpec s = standard_patch(d);
    CHECK((int)s.data_sites.size() == d * d + (d - 1) * (d - 1));
    CHECK((int)s.plaquettes.size() == 2 * d * (d - 1));
    const LatticeSpec r = rotated_patch(d);
    CHECK((int)r.data_sites.size() == d * d);
    CHECK((int)r.plaquettes.size() == d * d - 1);
  }
}

TEST_CASE("graph distance equals d for square patches") {
  for (int d = 2; d <= 5; ++d) {
    CAPTURE(d);
    for (Coord lo : {Coord{0, 0}, Coord{2, 4}, Coord{-2, 6}}) {
      CAPTURE(lo.r);
      CAPTURE(lo.c);
      const LatticeSpec s = standard_patch(d, lo);
      CHECK(code_distance(s, CheckType::kX) == d);
      CHECK(code_distance(s, CheckType::kZ) == d);
    }
    for (Coord lo : {Coord{0, 0}, Coord{3, 5}, Coord{3, 4}, Coord{-1, 0}}) {
      CAPTURE(lo.r);
      CAPTURE(lo.c);
      const LatticeSpec r = rotated_patch(d, lo);
      CHECK(code_distance(r, CheckType::kX) == d);
      CHECK(code_distance(r, CheckType::kZ) == d);
    }
  }
}

TEST_CASE("exhaustive distance agrees with the graph method for d <= 3") {
  for (int d = 2; d <= 3; ++d) {
    CAPTURE(d);
    const LatticeSpec s = standard_patch(d);
    CHECK(code_distance_exhaustive(s, CheckType::kX, d) == d);
    CHECK(code_distance_exhaustive(s, CheckType::kZ, d) == d);
    // Nothing lighter exists.
    CHECK(code_distance_exhaustive(s, CheckType::kX, d - 1) == 0);
    const LatticeSpec r = rotated_patch(d);
    CHECK(code_distance_exhaustive(r, CheckType::kX, d) == d);
    CHECK(code_distance_exhaustive(r, CheckType::kZ, d) == d);
    CHECK(code_distance_exhaustive(r, CheckType::kZ, d - 1) == 0);
  }
}

TEST_CASE("parity flip swaps check roles and labels") {
  const LatticeSpec spec = standard_patch(3, {0, 0}, true);
  const LatticeSpec plain = standard_patch(3);
  // Same geometry, letters exchanged.
  REQUIRE(spec.plaquettes.size() == plain.plaquettes.size());
  for (size_t i = 0; i < spec.plaquettes.size(); ++i) {
    CHECK(spec.plaquettes[i].key == plain.plaquettes[i].key);
    CHECK(spec.plaquettes[i].data == plain.plaquettes[i].data);
    CHECK(spec.plaquettes[i].type != plain.plaquettes[i].type);
  }
  CHECK(spec.boundaries.top == BoundaryLabel::kRough);
  CHECK(spec.boundaries.left == BoundaryLabel::kSmooth);
  CHECK(spec.logical_z == plain.logical_x);
  CHECK(spec.logical_x == plain.logical_z);
  CHECK(code_distance(spec, CheckType::kX) == 3);
  CHECK(code_distance(spec, CheckType::kZ) == 3);
}

TEST_CASE("odd-origin standard patch with flip restores plain orientation") {
  // A flipped patch whose corner sits at odd grid parity has the same
  // boundary labels as an unflipped even patch.
  const LatticeSpec spec =
      make_patch_spec(Encoding::kStandard, {1, 1}, {5, 5}, true);
  CHECK(spec.boundaries.top == BoundaryLabel::kSmooth);
  CHECK(spec.boundaries.left == BoundaryLabel::kRough);
  CHECK(code_distance(spec) == 3);
}

TEST_CASE("wide rectangle has asymmetric distances") {
  const LatticeSpec spec =
      make_patch_spec(Encoding::kStandard, {0, 0}, {4, 10});
  CHECK(code_distance(spec, CheckType::kX) == 3);  // top-bottom chain
  CHECK(code_distance(spec, CheckType::kZ) == 6);  // left-right chain
  const LatticeSpec rot = make_patch_spec(Encoding::kRotated, {0, 0}, {2, 6});
  CHECK(code_distance(rot, CheckType::kX) == 7);
  CHECK(code_distance(rot, CheckType::kZ) == 3);
}

TEST_CASE("malformed regions are rejected") {
  CHECK_THROWS_AS(make_patch_spec(Encoding::kStandard, {0, 1}, {4, 5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_patch_spec(Encoding::kStandard, {0, 0}, {3, 4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_patch_spec(Encoding::kStandard, {0, 0}, {4, -2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_patch_spec(Encoding::kRotated, {0, 0}, {0, 3}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_patch_spec(Encoding::kRotated, {0, 0}, {2, 2}, true),
                  std::invalid_argument);
}

TEST_CASE("single-line strips are repetition codes") {
  // A zero row span gives one grid row: alternating data sites and
  // two-body checks whose type follows the row-parity rule.
  const LatticeSpec row = make_patch_spec(Encoding::kStandard, {4, 0}, {4, 6});
  CHECK(row.data_sites.size() == 4);
  REQUIRE(row.plaquettes.size() == 3);
  for (const Plaquette& p : row.plaquettes) {
    CHECK(p.type == CheckType::kX);
    CHECK(p.data.size() == 2);
  }
  // The single-site chain lies on the quiet axis, the full line on the other.
  CHECK(row.logical_x.size() == 1);
  CHECK(row.logical_z.size() == 4);

  const LatticeSpec col =
      make_patch_spec(Encoding::kStandard, {0, 6}, {4, 6}, true);
  CHECK(col.data_sites.size() == 3);
  REQUIRE(col.plaquettes.size() == 2);
  for (const Plaquette& p : col.plaquettes) CHECK(p.type == CheckType::kX);
  CHECK(col.logical_x.size() == 1);
  CHECK(col.logical_z.size() == 3);
}
