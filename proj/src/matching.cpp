#include "lsurg/matching.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace lsurg {

namespace {

constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;

// Dense primal-dual blossom algorithm for maximum-weight matching,
// 1-indexed internally.  Edges with weight 0 are treated as absent, so all
// real edges must have weight >= 1.
class BlossomSolver {
 public:
  explicit BlossomSolver(const std::vector<std::vector<int64_t>>& weight) {
    n = static_cast<int>(weight.size());
    int cap = 2 * n + 2;
    g.assign(cap, std::vector<Edge>(cap));
    for (int u = 0; u < cap; ++u)
      for (int v = 0; v < cap; ++v) g[u][v] = Edge{u, v, 0};
    lab.assign(cap, 0);
    match.assign(cap, 0);
    slack.assign(cap, 0);
    st.assign(cap, 0);
    pa.assign(cap, 0);
    S.assign(cap, -1);
    vis.assign(cap, 0);
    from.assign(cap, std::vector<int>(n + 1, 0));
    flower.assign(cap, {});
    for (int u = 1; u <= n; ++u)
      for (int v = 1; v <= n; ++v) g[u][v].w = weight[u - 1][v - 1];
  }

  // Returns mate (0-indexed, -1 for unmatched).
  std::vector<int> solve() {
    n_x = n;
    for (int u = 0; u <= n; ++u) st[u] = u;
    int64_t w_max = 0;
    for (int u = 1; u <= n; ++u)
      for (int v = 1; v <= n; ++v) {
        from[u][v] = (u == v ? u : 0);
        w_max = std::max(w_max, g[u][v].w);
      }
    for (int u = 1; u <= n; ++u) lab[u] = w_max;
    while (matching()) {
    }
    std::vector<int> mate(n, -1);
    for (int u = 1; u <= n; ++u)
      if (match[u]) mate[u - 1] = match[u] - 1;
    return mate;
  }

 private:
  struct Edge {
    int u, v;
    int64_t w;
  };

  int n = 0, n_x = 0;
  std::vector<std::vector<Edge>> g;
  std::vector<int64_t> lab;
  std::vector<int> match, slack, st, pa, S, vis;
  std::vector<std::vector<int>> from;
  std::vector<std::vector<int>> flower;
  std::deque<int> q;

  int64_t e_delta(const Edge& e) const {
    return lab[e.u] + lab[e.v] - g[e.u][e.v].w * 2;
  }

  void update_slack(int u, int x) {
    if (!slack[x] || e_delta(g[u][x]) < e_delta(g[slack[x]][x])) slack[x] = u;
  }

  void set_slack(int x) {
    slack[x] = 0;
    for (int u = 1; u <= n; ++u)
      if (g[u][x].w > 0 && st[u] != x && S[st[u]] == 0) update_slack(u, x);
  }

  void q_push(int x) {
    if (x <= n) {
      q.push_back(x);
    } else {
      for (int i : flower[x]) q_push(i);
    }
  }

  void set_st(int x, int b) {
    st[x] = b;
    if (x > n)
      for (int i : flower[x]) set_st(i, b);
  }

  int get_pr(int b, int xr) {
    int pr = static_cast<int>(
        std::find(flower[b].begin(), flower[b].end(), xr) - flower[b].begin());
    if (pr % 2 == 1) {
      std::reverse(flower[b].begin() + 1, flower[b].end());
      return static_cast<int>(flower[b].size()) - pr;
    }
    return pr;
  }

  void set_match(int u, int v) {
    match[u] = g[u][v].v;
    if (u <= n) return;
    Edge e = g[u][v];
    int xr = from[u][e.u], pr = get_pr(u, xr);
    for (int i = 0; i < pr; ++i) set_match(flower[u][i], flower[u][i ^ 1]);
    set_match(xr, v);
    std::rotate(flower[u].begin(), flower[u].begin() + pr, flower[u].end());
  }

  void augment(int u, int v) {
    for (;;) {
      int xnv = st[match[u]];
      set_match(u, v);
      if (!xnv) return;
      set_match(xnv, st[pa[xnv]]);
      u = st[pa[xnv]];
      v = xnv;
    }
  }

  int get_lca(int u, int v) {
    static thread_local int t = 0;
    for (++t; u || v; std::swap(u, v)) {
      if (u == 0) continue;
      if (vis[u] == t) return u;
      vis[u] = t;
      u = st[match[u]];
      if (u) u = st[pa[u]];
    }
    return 0;
  }

  void add_blossom(int u, int lca, int v) {
    int b = n + 1;
    while (b <= n_x && st[b]) ++b;
    if (b > n_x) ++n_x;
    lab[b] = 0;
    S[b] = 0;
    match[b] = match[lca];
    flower[b].clear();
    flower[b].push_back(lca);
    for (int x = u, y; x != lca; x = st[pa[y]]) {
      flower[b].push_back(x);
      flower[b].push_back(y = st[match[x]]);
      q_push(y);
    }
    std::reverse(flower[b].begin() + 1, flower[b].end());
    for (int x = v, y; x != lca; x = st[pa[y]]) {
      flower[b].push_back(x);
      flower[b].push_back(y = st[match[x]]);
      q_push(y);
    }
    set_st(b, b);
    for (int x = 1; x <= n_x; ++x) g[b][x].w = g[x][b].w = 0;
    for (int x = 1; x <= n; ++x) from[b][x] = 0;
    for (int xs : flower[b]) {
      for (int x = 1; x <= n_x; ++x)
        if (g[b][x].w == 0 || e_delta(g[xs][x]) < e_delta(g[b][x])) {
          g[b][x] = g[xs][x];
          g[x][b] = g[x][xs];
        }
      for (int x = 1; x <= n; ++x)
        if (from[xs][x]) from[b][x] = xs;
    }
    set_slack(b);
  }

  void expand_blossom(int b) {
    for (int i : flower[b]) set_st(i, i);
    int xr = from[b][g[b][pa[b]].u], pr = get_pr(b, xr);
    for (int i = 0; i < pr; i += 2) {
      int xs = flower[b][i], xns = flower[b][i + 1];
      pa[xs] = g[xns][xs].u;
      S[xs] = 1;
      S[xns] = 0;
      slack[xs] = 0;
      set_slack(xns);
      q_push(xns);
    }
    S[xr] = 1;
    pa[xr] = pa[b];
    for (size_t i = pr + 1; i < flower[b].size(); ++i) {
      int xs = flower[b][i];
      S[xs] = -1;
      set_slack(xs);
    }
    st[b] = 0;
  }

  bool on_found_edge(const Edge& e) {
    int u = st[e.u], v = st[e.v];
    if (S[v] == -1) {
      pa[v] = e.u;
      S[v] = 1;
      int nu = st[match[v]];
      slack[v] = slack[nu] = 0;
      S[nu] = 0;
      q_push(nu);
    } else if (S[v] == 0) {
      int lca = get_lca(u, v);
      if (!lca) {
        augment(u, v);
        augment(v, u);
        return true;
      }
      add_blossom(u, lca, v);
    }
    return false;
  }

  bool matching() {
    std::fill(S.begin() + 1, S.begin() + n_x + 1, -1);
    std::fill(slack.begin() + 1, slack.begin() + n_x + 1, 0);
    q.clear();
    for (int x = 1; x <= n_x; ++x)
      if (st[x] == x && !match[x]) {
        pa[x] = 0;
        S[x] = 0;
        q_push(x);
      }
    if (q.empty()) return false;
    for (;;) {
      while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        if (S[st[u]] == 1) continue;
        for (int v = 1; v <= n; ++v)
          if (g[u][v].w > 0 && st[u] != st[v]) {
            if (e_delta(g[u][v]) == 0) {
              if (on_found_edge(g[u][v])) return true;
            } else {
              update_slack(u, st[v]);
            }
          }
      }
      int64_t d = kInf;
      for (int b = n + 1; b <= n_x; ++b)
        if (st[b] == b && S[b] == 1) d = std::min(d, lab[b] / 2);
      for (int x = 1; x <= n_x; ++x)
        if (st[x] == x && slack[x]) {
          if (S[x] == -1) {
            d = std::min(d, e_delta(g[slack[x]][x]));
          } else if (S[x] == 0) {
            d = std::min(d, e_delta(g[slack[x]][x]) / 2);
          }
        }
      for (int u = 1; u <= n; ++u) {
        if (S[st[u]] == 0) {
          if (lab[u] <= d) return false;
          lab[u] -= d;
        } else if (S[st[u]] == 1) {
          lab[u] += d;
        }
      }
      for (int b = n + 1; b <= n_x; ++b)
        if (st[b] == b) {
          if (S[b] == 0) {
            lab[b] += d * 2;
          } else if (S[b] == 1) {
            lab[b] -= d * 2;
          }
        }
      q.clear();
      for (int x = 1; x <= n_x; ++x)
        if (st[x] == x && slack[x] && st[slack[x]] != x &&
            e_delta(g[slack[x]][x]) == 0)
          if (on_found_edge(g[slack[x]][x])) return true;
      for (int b = n + 1; b <= n_x; ++b)
        if (st[b] == b && S[b] == 1 && lab[b] == 0) expand_blossom(b);
    }
  }
};

}  // namespace

std::vector<int> max_weight_matching(
    const std::vector<std::vector<int64_t>>& weight) {
  if (weight.empty()) return {};
  BlossomSolver solver(weight);
  return solver.solve();
}

EventMatching match_events_blossom(
    const std::vector<std::vector<int64_t>>& pair_cost,
    const std::vector<int64_t>& boundary_cost) {
  int k = static_cast<int>(boundary_cost.size());
  EventMatching out;
  out.partner.assign(k, -1);
  if (k == 0) return out;
  int64_t max_cost = 1;
  for (int i = 0; i < k; ++i) {
    max_cost = std::max(max_cost, boundary_cost[i]);
    for (int j = 0; j < k; ++j)
      if (pair_cost[i][j] >= 0) max_cost = std::max(max_cost, pair_cost[i][j]);
  }
  // Large enough that maximum weight forces maximum cardinality.
  const int64_t big = max_cost * (k + 2) + 1;
  // Nodes 0..k-1: events; k..2k-1: boundary twins.
  std::vector<std::vector<int64_t>> w(2 * k, std::vector<int64_t>(2 * k, 0));
  for (int i = 0; i < k; ++i) {
    if (boundary_cost[i] >= 0) {
      w[i][k + i] = w[k + i][i] = big - boundary_cost[i];
    }
    for (int j = i + 1; j < k; ++j) {
      if (pair_cost[i][j] >= 0) {
        w[i][j] = w[j][i] = big - pair_cost[i][j];
        w[k + i][k + j] = w[k + j][k + i] = big;
      }
    }
  }
  std::vector<int> mate = max_weight_matching(w);
  for (int i = 0; i < 2 * k; ++i) {
    if (mate[i] < 0) {
      throw std::logic_error("event matching is not perfect");
    }
  }
  for (int i = 0; i < k; ++i) {
    if (mate[i] == k + i) {
      out.partner[i] = -1;
      out.total_cost += boundary_cost[i];
    } else {
      out.partner[i] = mate[i];
      if (mate[i] > i) out.total_cost += pair_cost[i][mate[i]];
    }
  }
  return out;
}

EventMatching match_events_exhaustive(
    const std::vector<std::vector<int64_t>>& pair_cost,
    const std::vector<int64_t>& boundary_cost) {
  int k = static_cast<int>(boundary_cost.size());
  if (k > 20) {
    throw std::invalid_argument("exhaustive matcher limited to 20 events");
  }
  EventMatching out;
  out.partner.assign(k, -1);
  if (k == 0) return out;
  const uint32_t full = (1u << k) - 1;
  std::vector<int64_t> best(full + 1, kInf);
  std::vector<int> choice(full + 1, -2);  // partner of the lowest set bit
  best[0] = 0;
  for (uint32_t s = 1; s <= full; ++s) {
    int i = __builtin_ctz(s);
    uint32_t rest = s & (s - 1);
    if (boundary_cost[i] >= 0 && best[rest] < kInf) {
      best[s] = boundary_cost[i] + best[rest];
      choice[s] = -1;
    }
    for (int j = i + 1; j < k; ++j) {
      if (!(rest >> j & 1) || pair_cost[i][j] < 0) continue;
      uint32_t sub = rest & ~(1u << j);
      if (best[sub] >= kInf) continue;
      int64_t c = pair_cost[i][j] + best[sub];
      if (c < best[s]) {
        best[s] = c;
        choice[s] = j;
      }
    }
  }
  if (best[full] >= kInf) {
    throw std::logic_error("no feasible event pairing");
  }
  out.total_cost = best[full];
  uint32_t s = full;
  while (s) {
    int i = __builtin_ctz(s);
    int j = choice[s];
    if (j == -1) {
      out.partner[i] = -1;
      s &= s - 1;
    } else {
      out.partner[i] = j;
      out.partner[j] = i;
      s &= ~(1u << i);
      s &= ~(1u << j);
    }
  }
  return out;
}

EventMatching match_events(const std::vector<std::vector<int64_t>>& pair_cost,
                           const std::vector<int64_t>& boundary_cost) {
  if (boundary_cost.size() <= 12) {
    return match_events_exhaustive(pair_cost, boundary_cost);
  }
  return match_events_blossom(pair_cost, boundary_cost);
}

}  // namespace lsurg
