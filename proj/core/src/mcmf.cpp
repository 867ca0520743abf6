#include "sbrs/mcmf.hpp"

#include <deque>
#include <limits>

namespace sbrs {

MinCostFlow::MinCostFlow(int n_nodes) : n_(n_nodes), adj_(n_nodes) {}

int MinCostFlow::add_edge(int from, int to, int capacity, FlowCost cost) {
  const int id = static_cast<int>(edges_.size());
  edges_.push_back({to, capacity, cost});
  adj_[from].push_back(id);
  edges_.push_back({from, 0, {-cost.value, -cost.tie}});
  adj_[to].push_back(id + 1);
  caps0_.push_back(capacity);
  return id;
}

bool MinCostFlow::augment_once(int s, int t) {
  // SPFA shortest path by lexicographic (value, tie); deterministic because
  // edges relax in insertion order and only strict improvements are taken.
  const FlowCost inf{std::numeric_limits<double>::infinity(), 0};
  std::vector<FlowCost> dist(n_, inf);
  std::vector<int> from_edge(n_, -1);
  std::vector<bool> queued(n_, false);
  std::deque<int> q;
  dist[s] = {0, 0};
  q.push_back(s);
  queued[s] = true;
  while (!q.empty()) {
    const int u = q.front();
    q.pop_front();
    queued[u] = false;
    for (int eid : adj_[u]) {
      const Edge& e = edges_[eid];
      if (e.cap <= 0) continue;
      const FlowCost cand = dist[u] + e.cost;
      if (cand < dist[e.to]) {
        dist[e.to] = cand;
        from_edge[e.to] = eid;
        if (!queued[e.to]) {
          q.push_back(e.to);
          queued[e.to] = true;
        }
      }
    }
  }
  if (from_edge[t] < 0 || !(dist[t].value < 0)) return false;
  for (int v = t; v != s;) {
    const int eid = from_edge[v];
    edges_[eid].cap -= 1;
    edges_[eid ^ 1].cap += 1;
    v = edges_[eid ^ 1].to;
  }
  return true;
}

std::pair<int, FlowCost> MinCostFlow::run_profitable(int s, int t) {
  int units = 0;
  // Successive shortest paths: augmenting-path costs are non-decreasing, so
  // stopping at the first non-negative path yields the cost minimum.
  while (augment_once(s, t)) ++units;
  FlowCost total{0, 0};
  for (std::size_t i = 0; i < caps0_.size(); ++i) {
    const int sent = caps0_[i] - edges_[2 * i].cap;
    if (sent > 0) {
      total.value += sent * edges_[2 * i].cost.value;
      total.tie += sent * edges_[2 * i].cost.tie;
    }
  }
  return {units, total};
}

int MinCostFlow::flow_on(int edge_id) const {
  return caps0_[edge_id / 2] - edges_[edge_id].cap;
}

}  // namespace sbrs
