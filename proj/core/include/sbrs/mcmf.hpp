#pragma once

#include <utility>
#include <vector>

namespace sbrs {

// Two-component edge cost: `value` is the objective, `tie` a deterministic
// tie-break encoding. Both add along paths and compare lexicographically.
struct FlowCost {
  double value = 0;
  double tie = 0;
  FlowCost operator+(const FlowCost& o) const { return {value + o.value, tie + o.tie}; }
  FlowCost operator-(const FlowCost& o) const { return {value - o.value, tie - o.tie}; }
  bool operator<(const FlowCost& o) const {
    if (value != o.value) return value < o.value;
    return tie < o.tie;
  }
};

// Small deterministic min-cost flow (SPFA-based successive shortest paths).
// Intended regime: unit-capacity assignment graphs with a few hundred nodes.
class MinCostFlow {
 public:
  explicit MinCostFlow(int n_nodes);

  // Returns an edge id usable with flow_on(). Adds the reverse residual edge.
  int add_edge(int from, int to, int capacity, FlowCost cost);

  // Pushes unit augmenting paths from s to t while the cheapest path has
  // strictly negative cost value; returns (units pushed, total cost).
  std::pair<int, FlowCost> run_profitable(int s, int t);

  int flow_on(int edge_id) const;

 private:
  struct Edge {
    int to, cap;
    FlowCost cost;
  };
  bool augment_once(int s, int t);

  int n_;
  std::vector<Edge> edges_;               // edge 2k's residual is 2k+1
  std::vector<std::vector<int>> adj_;
  std::vector<int> caps0_;                // original capacity per public edge
};

}  // namespace sbrs
