#include "lsurg/lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <stdexcept>

namespace lsurg {

namespace {

int mod2(int x) { return ((x % 2) + 2) % 2; }

void sort_sites(std::vector<Coord>& v) { std::sort(v.begin(), v.end()); }

void build_standard(LatticeSpec& spec) {
  const Coord lo = spec.lo, hi = spec.hi;
  if (mod2(lo.r + lo.c) != 0)
    throw std::invalid_argument("standard patch: corner must be a data site");
  // Zero spans are allowed: a single-row or single-column rectangle is a
  // repetition-code strip, used as grafting material when growing a patch.
  if (hi.r - lo.r < 0 || hi.c - lo.c < 0 || mod2(hi.r - lo.r) != 0 ||
      mod2(hi.c - lo.c) != 0)
    throw std::invalid_argument("standard patch: spans must be even and >= 0");

  for (int r = lo.r; r <= hi.r; ++r) {
    for (int c = lo.c; c <= hi.c; ++c) {
      if (mod2(r + c) == 0) {
        spec.data_sites.push_back({r, c});
        continue;
      }
      Plaquette p;
      p.type = (mod2(r) == 0) != spec.parity_flip ? CheckType::kX
                                                  : CheckType::kZ;
      p.key = {r, c};
      for (Coord nb : {Coord{r - 1, c}, Coord{r + 1, c}, Coord{r, c - 1},
                       Coord{r, c + 1}})
        if (spec.contains(nb)) p.data.push_back(nb);
      sort_sites(p.data);
      spec.plaquettes.push_back(std::move(p));
    }
  }

  // Horizontal edges carry the checks whose row parity matches lo.r; with
  // no flip and even lo.r those are X checks, making top/bottom smooth.
  const bool horizontal_smooth = (mod2(lo.r) == 0) != spec.parity_flip;
  spec.boundaries.bottom = spec.boundaries.top =
      horizontal_smooth ? BoundaryLabel::kSmooth : BoundaryLabel::kRough;
  spec.boundaries.left = spec.boundaries.right =
      horizontal_smooth ? BoundaryLabel::kRough : BoundaryLabel::kSmooth;

  // Canonical chains run along the lo edges: the Z chain joins the rough
  // sides, the X chain the smooth sides, crossing at the lo corner.
  std::vector<Coord> row_chain, col_chain;
  for (int c = lo.c; c <= hi.c; c += 2) row_chain.push_back({lo.r, c});
  for (int r = lo.r; r <= hi.r; r += 2) col_chain.push_back({r, lo.c});
  if (horizontal_smooth) {
    spec.logical_z = row_chain;
    spec.logical_x = col_chain;
  } else {
    spec.logical_z = col_chain;
    spec.logical_x = row_chain;
  }
}

void build_rotated(LatticeSpec& spec) {
  const Coord lo = spec.lo, hi = spec.hi;
  if (hi.r - lo.r < 1 || hi.c - lo.c < 1)
    throw std::invalid_argument("rotated patch: spans must be >= 1");
  if (spec.parity_flip)
    throw std::invalid_argument("rotated patch: parity_flip unsupported");

  for (int r = lo.r; r <= hi.r; ++r)
    for (int c = lo.c; c <= hi.c; ++c) spec.data_sites.push_back({r, c});

  for (int r = lo.r - 1; r <= hi.r; ++r) {
    for (int c = lo.c - 1; c <= hi.c; ++c) {
      const bool row_edge = r < lo.r || r >= hi.r;
      const bool col_edge = c < lo.c || c >= hi.c;
      if (row_edge && col_edge) continue;
      const CheckType type =
          mod2(r + c) == 0 ? CheckType::kX : CheckType::kZ;
      if (row_edge && type != CheckType::kZ) continue;
      if (col_edge && type != CheckType::kX) continue;
      Plaquette p;
      p.type = type;
      p.key = {r, c};
      for (Coord corner : {Coord{r, c}, Coord{r, c + 1}, Coord{r + 1, c},
                           Coord{r + 1, c + 1}})
        if (spec.contains(corner)) p.data.push_back(corner);
      if (p.data.size() < 2) continue;
      sort_sites(p.data);
      spec.plaquettes.push_back(std::move(p));
    }
  }

  spec.boundaries.bottom = spec.boundaries.top = BoundaryLabel::kRough;
  spec.boundaries.left = spec.boundaries.right = BoundaryLabel::kSmooth;

  for (int c = lo.c; c <= hi.c; ++c) spec.logical_x.push_back({lo.r, c});
  for (int r = lo.r; r <= hi.r; ++r) spec.logical_z.push_back({r, lo.c});
}

}  // namespace

LatticeSpec make_patch_spec(Encoding encoding, Coord lo, Coord hi,
                            bool parity_flip) {
  LatticeSpec spec;
  spec.encoding = encoding;
  spec.lo = lo;
  spec.hi = hi;
  spec.parity_flip = parity_flip;
  if (encoding == Encoding::kStandard)
    build_standard(spec);
  else
    build_rotated(spec);
  return spec;
}

LatticeSpec standard_patch(int d, Coord lo, bool parity_flip) {
  if (d < 2) throw std::invalid_argument("standard_patch: d must be >= 2");
  return make_patch_spec(Encoding::kStandard, lo,
                         {lo.r + 2 * (d - 1), lo.c + 2 * (d - 1)},
                         parity_flip);
}

LatticeSpec rotated_patch(int d, Coord lo) {
  if (d < 2) throw std::invalid_argument("rotated_patch: d must be >= 2");
  return make_patch_spec(Encoding::kRotated, lo,
                         {lo.r + d - 1, lo.c + d - 1});
}

int code_distance(const LatticeSpec& spec, CheckType logical_letter) {
  const CheckType detector =
      logical_letter == CheckType::kZ ? CheckType::kX : CheckType::kZ;
  // Chains of the logical letter run horizontally (varying column) or
  // vertically depending on encoding and frame.
  bool along_columns;
  if (spec.encoding == Encoding::kStandard)
    along_columns = (logical_letter == CheckType::kZ) != spec.parity_flip;
  else
    along_columns = logical_letter == CheckType::kX;

  std::map<Coord, int> check_id;
  for (const auto& p : spec.plaquettes)
    if (p.type == detector) check_id.emplace(p.key, (int)check_id.size());
  const int side_a = static_cast<int>(check_id.size());
  const int side_b = side_a + 1;

  std::vector<std::vector<int>> adj(side_b + 1);
  auto add_edge = [&](int u, int v) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  };
  std::map<Coord, std::vector<int>> touching;
  for (const auto& p : spec.plaquettes) {
    if (p.type != detector) continue;
    for (Coord q : p.data) touching[q].push_back(check_id.at(p.key));
  }
  for (Coord q : spec.data_sites) {
    const auto it = touching.find(q);
    const int deg = it == touching.end() ? 0 : (int)it->second.size();
    if (deg == 2) {
      add_edge(it->second[0], it->second[1]);
    } else if (deg == 1) {
      const int coord = along_columns ? q.c : q.r;
      const int lo = along_columns ? spec.lo.c : spec.lo.r;
      const int hi = along_columns ? spec.hi.c : spec.hi.r;
      add_edge(it->second[0], 2 * coord <= lo + hi ? side_a : side_b);
    } else if (deg == 0) {
      throw std::logic_error("code_distance: undetected data qubit");
    }
  }

  std::vector<int> dist(adj.size(), -1);
  std::deque<int> queue{side_a};
  dist[side_a] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  if (dist[side_b] < 0)
    throw std::logic_error("code_distance: boundaries not connected");
  return dist[side_b];
}

int code_distance(const LatticeSpec& spec) {
  return std::min(code_distance(spec, CheckType::kX),
                  code_distance(spec, CheckType::kZ));
}

int code_distance_exhaustive(const LatticeSpec& spec, CheckType logical_letter,
                             int max_weight) {
  const CheckType detector =
      logical_letter == CheckType::kZ ? CheckType::kX : CheckType::kZ;
  std::vector<const Plaquette*> checks;
  for (const auto& p : spec.plaquettes)
    if (p.type == detector) checks.push_back(&p);
  if (checks.size() > 63)
    throw std::invalid_argument("code_distance_exhaustive: too many checks");

  const auto& anti_rep =
      logical_letter == CheckType::kZ ? spec.logical_x : spec.logical_z;
  const int nd = static_cast<int>(spec.data_sites.size());
  std::vector<uint64_t> mask(nd, 0);
  std::vector<int> rep_bit(nd, 0);
  for (int i = 0; i < nd; ++i) {
    const Coord q = spec.data_sites[i];
    for (size_t k = 0; k < checks.size(); ++k)
      if (std::binary_search(checks[k]->data.begin(), checks[k]->data.end(),
                             q))
        mask[i] |= uint64_t{1} << k;
    rep_bit[i] =
        std::binary_search(anti_rep.begin(), anti_rep.end(), q) ? 1 : 0;
  }

  // Depth-first search over supports of each weight in ascending order: a
  // support is a nontrivial logical iff every detector sees it an even
  // number of times and it anticommutes with the opposite canonical chain.
  std::vector<int> chosen;
  auto dfs = [&](auto&& self, int start, int remaining, uint64_t acc,
                 int parity) -> bool {
    if (remaining == 0) return acc == 0 && parity == 1;
    for (int i = start; i + remaining <= nd; ++i)
      if (self(self, i + 1, remaining - 1, acc ^ mask[i], parity ^ rep_bit[i]))
        return true;
    return false;
  };
  for (int w = 1; w <= max_weight; ++w)
    if (dfs(dfs, 0, w, 0, 0)) return w;
  return 0;
}

}  // namespace lsurg
