#pragma once

#include <utility>
#include <vector>

namespace sbrs::detail {

// Open-path orderings over a (m+1)x(m+1) leg matrix whose row/col 0 is the
// fixed start (the school). Both return the visit order of stops 0..m-1
// (matrix indices shifted by one) and the resulting leg sum.

// Exact subset DP, intended for m <= ~12.
std::pair<std::vector<int>, long long> order_exact(
    const std::vector<std::vector<int>>& dist);

// Nearest neighbor + best-improvement 2-opt.
std::pair<std::vector<int>, long long> order_heuristic(
    const std::vector<std::vector<int>>& dist);

}  // namespace sbrs::detail
