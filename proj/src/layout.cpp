#include "lsurg/layout.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace lsurg {

namespace {

int mod2(int x) { return ((x % 2) + 2) % 2; }

}  // namespace

Layout Layout::build(Encoding encoding, std::vector<Coord> hull) {
  Layout lay;
  lay.encoding_ = encoding;
  std::sort(hull.begin(), hull.end());
  hull.erase(std::unique(hull.begin(), hull.end()), hull.end());
  if (hull.empty()) throw std::invalid_argument("Layout: empty hull");
  lay.data_coords_ = hull;
  for (int i = 0; i < (int)hull.size(); ++i) lay.data_index_[hull[i]] = i;

  const std::set<Coord> in_hull(hull.begin(), hull.end());
  Coord lo = hull.front(), hi = hull.front();
  for (Coord s : hull) {
    lo.r = std::min(lo.r, s.r);
    lo.c = std::min(lo.c, s.c);
    hi.r = std::max(hi.r, s.r);
    hi.c = std::max(hi.c, s.c);
  }

  std::vector<Coord> anc;
  if (encoding == Encoding::kStandard) {
    for (int r = lo.r - 1; r <= hi.r + 1; ++r) {
      for (int c = lo.c - 1; c <= hi.c + 1; ++c) {
        if (mod2(r + c) == 0) continue;
        int neighbours = 0;
        for (Coord nb : {Coord{r - 1, c}, Coord{r + 1, c}, Coord{r, c - 1},
                         Coord{r, c + 1}})
          neighbours += in_hull.count(nb);
        if (neighbours >= 2) anc.push_back({r, c});
      }
    }
  } else {
    for (int r = lo.r; r < hi.r; ++r)
      for (int c = lo.c; c < hi.c; ++c)
        if (in_hull.count({r, c}) && in_hull.count({r + 1, c}) &&
            in_hull.count({r, c + 1}) && in_hull.count({r + 1, c + 1}))
          anc.push_back({r, c});
  }
  lay.ancilla_coords_ = std::move(anc);
  const int base = lay.n_data();
  for (int i = 0; i < (int)lay.ancilla_coords_.size(); ++i)
    lay.ancilla_index_[lay.ancilla_coords_[i]] = base + i;
  return lay;
}

int Layout::data_qubit(Coord site) const {
  const auto it = data_index_.find(site);
  if (it == data_index_.end())
    throw std::invalid_argument("Layout: site is not a data qubit");
  return it->second;
}

int Layout::ancilla_qubit(Coord key) const {
  auto it = ancilla_index_.find(key);
  if (it != ancilla_index_.end()) return it->second;
  if (encoding_ == Encoding::kRotated) {
    // Boundary squares borrow the smallest edge-adjacent interior ancilla.
    for (Coord nb : {Coord{key.r - 1, key.c}, Coord{key.r, key.c - 1},
                     Coord{key.r, key.c + 1}, Coord{key.r + 1, key.c}}) {
      it = ancilla_index_.find(nb);
      if (it != ancilla_index_.end()) return it->second;
    }
  }
  throw std::invalid_argument("Layout: no ancilla serves this check");
}

PauliString Layout::check_operator(const Plaquette& p) const {
  PauliString op(n_total());
  const char letter = p.type == CheckType::kX ? 'X' : 'Z';
  for (Coord q : p.data) op.set_letter(data_qubit(q), letter);
  return op;
}

PauliString Layout::chain_operator(const std::vector<Coord>& chain,
                                   char letter) const {
  PauliString op(n_total());
  for (Coord q : chain) op.set_letter(data_qubit(q), letter);
  return op;
}

PauliString Layout::site_operator(Coord site, char letter) const {
  PauliString op(n_total());
  op.set_letter(data_qubit(site), letter);
  return op;
}

std::vector<Coord> region_rect(Encoding encoding, Coord lo, Coord hi) {
  std::vector<Coord> out;
  for (int r = lo.r; r <= hi.r; ++r)
    for (int c = lo.c; c <= hi.c; ++c)
      if (encoding == Encoding::kRotated || mod2(r + c) == 0)
        out.push_back({r, c});
  return out;
}

std::vector<Coord> region_union(std::vector<std::vector<Coord>> parts) {
  std::vector<Coord> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace lsurg
