#include "path_order.hpp"

#include <algorithm>
#include <limits>

namespace sbrs::detail {

std::pair<std::vector<int>, long long> order_exact(
    const std::vector<std::vector<int>>& dist) {
  const int m = static_cast<int>(dist.size()) - 1;
  const long long inf = std::numeric_limits<long long>::max() / 4;
  std::vector<std::vector<long long>> dp(1u << m, std::vector<long long>(m, inf));
  std::vector<std::vector<int>> parent(1u << m, std::vector<int>(m, -1));
  for (int j = 0; j < m; ++j) dp[1u << j][j] = dist[0][j + 1];
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    for (int j = 0; j < m; ++j) {
      if (!(mask & (1u << j)) || dp[mask][j] >= inf) continue;
      for (int nxt = 0; nxt < m; ++nxt) {
        if (mask & (1u << nxt)) continue;
        const unsigned nmask = mask | (1u << nxt);
        const long long cand = dp[mask][j] + dist[j + 1][nxt + 1];
        if (cand < dp[nmask][nxt]) {
          dp[nmask][nxt] = cand;
          parent[nmask][nxt] = j;
        }
      }
    }
  }
  const unsigned full = (1u << m) - 1;
  int end = 0;
  for (int j = 1; j < m; ++j)
    if (dp[full][j] < dp[full][end]) end = j;
  std::vector<int> order(m);
  unsigned mask = full;
  int cur = end;
  for (int pos = m - 1; pos >= 0; --pos) {
    order[pos] = cur;
    const int p = parent[mask][cur];
    mask ^= 1u << cur;
    cur = p;
  }
  return {order, dp[full][end]};
}

std::pair<std::vector<int>, long long> order_heuristic(
    const std::vector<std::vector<int>>& dist) {
  const int m = static_cast<int>(dist.size()) - 1;
  std::vector<int> order;
  std::vector<bool> used(m, false);
  int cur = 0;
  for (int step = 0; step < m; ++step) {
    int best = -1;
    for (int j = 0; j < m; ++j) {
      if (used[j]) continue;
      if (best < 0 || dist[cur][j + 1] < dist[cur][best + 1]) best = j;
    }
    used[best] = true;
    order.push_back(best);
    cur = best + 1;
  }

  auto leg_sum = [&](const std::vector<int>& ord) {
    long long s = dist[0][ord[0] + 1];
    for (std::size_t i = 1; i < ord.size(); ++i) s += dist[ord[i - 1] + 1][ord[i] + 1];
    return s;
  };

  long long cur_sum = leg_sum(order);
  bool improved = true;
  while (improved) {
    improved = false;
    long long best_sum = cur_sum;
    int best_i = -1, best_j = -1;
    for (int i = 0; i < m - 1; ++i) {
      for (int j = i + 1; j < m; ++j) {
        std::reverse(order.begin() + i, order.begin() + j + 1);
        const long long s = leg_sum(order);
        std::reverse(order.begin() + i, order.begin() + j + 1);
        if (s < best_sum) {
          best_sum = s;
          best_i = i;
          best_j = j;
        }
      }
    }
    if (best_i >= 0) {
      std::reverse(order.begin() + best_i, order.begin() + best_j + 1);
      cur_sum = best_sum;
      improved = true;
    }
  }
  return {order, cur_sum};
}

}  // namespace sbrs::detail
