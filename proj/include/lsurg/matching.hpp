#pragma once

#include <cstdint>
#include <vector>

namespace lsurg {

// Exact maximum-weight matching on a dense graph, primal-dual blossom
// algorithm, O(n^3).  `weight[u][v] == 0` means no edge; weights must be
// nonnegative.  Returns mate[u] in [0,n) or -1 for unmatched vertices.
std::vector<int> max_weight_matching(
    const std::vector<std::vector<int64_t>>& weight);

// Minimum-cost pairing of syndrome events where each event either pairs
// with another event (cost pair_cost[i][j]) or is matched to the boundary
// (cost boundary_cost[i]).  Costs < 0 mean the option is unavailable.
// Returns partner[i] in [0,k) or -1 for boundary.  Exact.
struct EventMatching {
  std::vector<int> partner;
  int64_t total_cost = 0;
};

// Blossom-based solver (any k).
EventMatching match_events_blossom(
    const std::vector<std::vector<int64_t>>& pair_cost,
    const std::vector<int64_t>& boundary_cost);

// Exhaustive subset dynamic program (exact; use for k <= ~16).
EventMatching match_events_exhaustive(
    const std::vector<std::vector<int64_t>>& pair_cost,
    const std::vector<int64_t>& boundary_cost);

// Dispatch: exhaustive for small k, blossom otherwise.
EventMatching match_events(const std::vector<std::vector<int64_t>>& pair_cost,
                           const std::vector<int64_t>& boundary_cost);

}  // namespace lsurg
