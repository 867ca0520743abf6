#include "sbrs/scheduling.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include <json.hpp>

#include "sbrs/errors.hpp"
#include "sbrs/mcmf.hpp"

namespace sbrs {

namespace {

struct ChainDecode {
  std::vector<int> next;  // successor trip index or -1
  std::vector<int> prev;
};

// Turns matched links into bus blocks, ordered by the plan index of each
// chain's first trip. Matched cycles (possible only with a positive buffer,
// where the pair set may lose acyclicity) are cut at their largest-deadhead
// link so every bus still runs a simple chain.
Schedule decode_chains(const ChainDecode& dec, const RoutingPlan& plan,
                       const CompatibilityGraph& graph) {
  const int n = static_cast<int>(plan.trips.size());
  std::vector<int> next = dec.next, prev = dec.prev;

  std::vector<bool> on_chain(n, false);
  for (int i = 0; i < n; ++i)
    if (prev[i] < 0)
      for (int v = i; v >= 0; v = next[v]) on_chain[v] = true;
  for (int i = 0; i < n; ++i) {
    if (on_chain[i]) continue;
    // Cycle through i: pick its largest (dd, from, to) link and cut it.
    int cut_from = -1, cut_to = -1, cut_dd = -1;
    for (int v = i;;) {
      const int w = next[v];
      const int dd = graph.deadhead_s.at({v, w});
      if (dd > cut_dd || (dd == cut_dd && std::make_pair(v, w) >
                                              std::make_pair(cut_from, cut_to))) {
        cut_dd = dd;
        cut_from = v;
        cut_to = w;
      }
      v = w;
      if (v == i) break;
    }
    next[cut_from] = -1;
    prev[cut_to] = -1;
    for (int v = cut_to; v >= 0; v = next[v]) on_chain[v] = true;
  }

  Schedule sched;
  for (int i = 0; i < n; ++i) {
    if (prev[i] >= 0) continue;
    BusBlock block;
    block.pull_out_s = graph.deadhead_s.at({graph.sdt_index(), i});
    int last = i;
    for (int v = i; v >= 0; v = next[v]) {
      block.trips.push_back(plan.trips[v].id);
      if (next[v] >= 0)
        block.links.push_back({plan.trips[v].id, plan.trips[next[v]].id,
                               graph.deadhead_s.at({v, next[v]})});
      last = v;
    }
    block.pull_in_s = graph.deadhead_s.at({last, graph.edt_index()});
    sched.total_deadhead_s += block.pull_out_s + block.pull_in_s;
    for (const LinkRecord& l : block.links) sched.total_deadhead_s += l.dd_s;
    sched.blocks.push_back(std::move(block));
  }
  sched.nob = static_cast<int>(sched.blocks.size());
  return sched;
}

}  // namespace

Schedule solve_schedule(const RoutingPlan& plan, const CompatibilityGraph& graph,
                        const SolverConfig& cfg) {
  const int n = static_cast<int>(plan.trips.size());
  ChainDecode dec{std::vector<int>(n, -1), std::vector<int>(n, -1)};
  if (n == 0) return decode_chains(dec, plan, graph);

  // Matching view of the chain objective: every trip starts closed at the
  // depot (one bus each); linking t1 -> t2 saves a bus and swaps t2's
  // pull-out and t1's pull-in for the link deadhead.
  const int source = 0, sink = 2 * n + 1;
  auto left = [&](int i) { return 1 + i; };
  auto right = [&](int j) { return 1 + n + j; };
  MinCostFlow flow(2 * n + 2);
  for (int i = 0; i < n; ++i) {
    flow.add_edge(source, left(i), 1, {0, 0});
    flow.add_edge(right(i), sink, 1, {0, 0});
  }
  std::map<int, std::pair<int, int>> link_of_edge;
  for (const auto& [a, b] : graph.pairs) {
    if (a >= n || b >= n) continue;  // depot pairs are the implicit default
    const double pull_out = graph.deadhead_s.at({graph.sdt_index(), b});
    const double pull_in = graph.deadhead_s.at({a, graph.edt_index()});
    const double dd = graph.deadhead_s.at({a, b});
    FlowCost cost;
    cost.value = cfg.alpha_d * (dd - pull_out - pull_in) - cfg.alpha_b;
    cost.tie = dd * 1e8 + a * 1e4 + b;
    link_of_edge[flow.add_edge(left(a), right(b), 1, cost)] = {a, b};
  }
  flow.run_profitable(source, sink);

  for (const auto& [eid, link] : link_of_edge) {
    if (flow.flow_on(eid) > 0) {
      dec.next[link.first] = link.second;
      dec.prev[link.second] = link.first;
    }
  }
  return decode_chains(dec, plan, graph);
}

Schedule brute_force_schedule(const RoutingPlan& plan, const CompatibilityGraph& graph,
                              const SolverConfig& cfg) {
  const int n = static_cast<int>(plan.trips.size());
  if (n > 12)
    throw SizeLimitError("brute_force_schedule: " + std::to_string(n) +
                         " trips exceeds the enumeration limit");
  ChainDecode none{std::vector<int>(n, -1), std::vector<int>(n, -1)};
  if (n == 0) return decode_chains(none, plan, graph);

  // Topological order over internal pairs; any chain visits trips in this
  // order, so appending-only enumeration covers every chain partition once.
  std::vector<std::vector<int>> succ(n);
  std::vector<int> indeg(n, 0);
  for (const auto& [a, b] : graph.pairs)
    if (a < n && b < n) {
      succ[a].push_back(b);
      indeg[b]++;
    }
  std::vector<int> topo;
  std::vector<int> deg = indeg;
  for (int i = 0; i < n; ++i)
    if (deg[i] == 0) topo.push_back(i);
  for (std::size_t h = 0; h < topo.size(); ++h)
    for (int w : succ[topo[h]])
      if (--deg[w] == 0) topo.push_back(w);
  if (static_cast<int>(topo.size()) != n)
    throw ValidationError("brute_force_schedule: pair set has a cycle");

  const auto pull_out = [&](int j) {
    return graph.deadhead_s.at({graph.sdt_index(), j});
  };
  const auto pull_in = [&](int i) {
    return graph.deadhead_s.at({i, graph.edt_index()});
  };

  std::vector<int> chain_last;          // last trip of each open chain
  std::vector<int> pred(n, -1);
  std::vector<int> best_pred;
  double best_cost = std::numeric_limits<double>::infinity();
  long long best_dd = 0;
  long long cur_dd = 0;

  auto recurse = [&](auto&& self, std::size_t pos) -> void {
    if (pos == topo.size()) {
      const double cost = cfg.alpha_b * static_cast<double>(chain_last.size()) +
                          cfg.alpha_d * static_cast<double>(cur_dd);
      if (cost < best_cost || (cost == best_cost && cur_dd < best_dd)) {
        best_cost = cost;
        best_dd = cur_dd;
        best_pred = pred;
      }
      return;
    }
    const int t = topo[pos];
    for (std::size_t c = 0; c < chain_last.size(); ++c) {
      const int last = chain_last[c];
      if (!graph.contains(last, t)) continue;
      const int dd = graph.deadhead_s.at({last, t});
      const long long delta = dd - pull_in(last) + pull_in(t);
      pred[t] = last;
      chain_last[c] = t;
      cur_dd += delta;
      self(self, pos + 1);
      cur_dd -= delta;
      chain_last[c] = last;
      pred[t] = -1;
    }
    chain_last.push_back(t);
    cur_dd += pull_out(t) + pull_in(t);
    self(self, pos + 1);
    cur_dd -= pull_out(t) + pull_in(t);
    chain_last.pop_back();
  };
  recurse(recurse, 0);

  ChainDecode dec{std::vector<int>(n, -1), std::vector<int>(n, -1)};
  for (int i = 0; i < n; ++i)
    if (best_pred[i] >= 0) {
      dec.prev[i] = best_pred[i];
      dec.next[best_pred[i]] = i;
    }
  return decode_chains(dec, plan, graph);
}

std::vector<Violation> verify_schedule(const Schedule& sched, const RoutingPlan& plan,
                                       const CompatibilityGraph& graph) {
  std::vector<Violation> v;
  std::map<std::string, int> plan_index;
  for (std::size_t i = 0; i < plan.trips.size(); ++i)
    plan_index[plan.trips[i].id] = static_cast<int>(i);

  std::map<std::string, int> seen;
  int total_links = 0;
  long long dd_sum = 0;
  for (std::size_t b = 0; b < sched.blocks.size(); ++b) {
    const BusBlock& block = sched.blocks[b];
    const std::string ctx = "block " + std::to_string(b);
    if (block.trips.empty()) {
      v.push_back({"coverage", ctx + " is empty"});
      continue;
    }
    for (const auto& tid : block.trips) {
      if (!plan_index.count(tid)) {
        v.push_back({"coverage", ctx + ": unknown trip '" + tid + "'"});
        return v;
      }
      seen[tid]++;
    }

    const int first = plan_index[block.trips.front()];
    const int last = plan_index[block.trips.back()];
    const int want_out = graph.deadhead_s.at({graph.sdt_index(), first});
    const int want_in = graph.deadhead_s.at({last, graph.edt_index()});
    if (block.pull_out_s != want_out)
      v.push_back({"deadhead", ctx + ": pull_out_s " + std::to_string(block.pull_out_s) +
                                   " != " + std::to_string(want_out)});
    if (block.pull_in_s != want_in)
      v.push_back({"deadhead", ctx + ": pull_in_s " + std::to_string(block.pull_in_s) +
                                   " != " + std::to_string(want_in)});
    dd_sum += block.pull_out_s + block.pull_in_s;

    if (block.links.size() + 1 != block.trips.size())
      v.push_back({"links", ctx + ": " + std::to_string(block.links.size()) +
                                " links for " + std::to_string(block.trips.size()) +
                                " trips"});
    for (std::size_t i = 0; i + 1 < block.trips.size(); ++i) {
      const int a = plan_index[block.trips[i]];
      const int bb = plan_index[block.trips[i + 1]];
      if (!graph.contains(a, bb)) {
        v.push_back({"compatibility", ctx + ": consecutive pair ('" + block.trips[i] +
                                          "', '" + block.trips[i + 1] +
                                          "') not in the pair set"});
        continue;
      }
      const int want_dd = graph.deadhead_s.at({a, bb});
      dd_sum += want_dd;
      total_links++;
      if (i < block.links.size()) {
        const LinkRecord& l = block.links[i];
        if (l.from != block.trips[i] || l.to != block.trips[i + 1] || l.dd_s != want_dd)
          v.push_back({"links", ctx + ": link " + std::to_string(i) +
                                    " does not match its consecutive pair"});
      }
    }
  }

  for (const Trip& t : plan.trips) {
    const int count = seen.count(t.id) ? seen[t.id] : 0;
    if (count != 1)
      v.push_back({"coverage", "trip '" + t.id + "' appears " + std::to_string(count) +
                                   " times"});
  }
  if (sched.nob != static_cast<int>(sched.blocks.size()))
    v.push_back({"nob", "nob " + std::to_string(sched.nob) + " != block count " +
                            std::to_string(sched.blocks.size())});
  // Chain-count identity: buses = trips - realized internal links.
  if (static_cast<int>(sched.blocks.size()) !=
      static_cast<int>(plan.trips.size()) - total_links)
    v.push_back({"nob", "bus count does not equal trips minus internal links"});
  if (sched.total_deadhead_s != dd_sum)
    v.push_back({"deadhead", "total_deadhead_s " + std::to_string(sched.total_deadhead_s) +
                                 " != recomputed " + std::to_string(dd_sum)});
  return v;
}

std::string schedule_to_json(const Schedule& sched) {
  nlohmann::json j;
  j["blocks"] = nlohmann::json::array();
  for (const BusBlock& b : sched.blocks) {
    nlohmann::json jb;
    jb["trips"] = b.trips;
    jb["pull_out_s"] = b.pull_out_s;
    jb["links"] = nlohmann::json::array();
    for (const LinkRecord& l : b.links)
      jb["links"].push_back({{"from", l.from}, {"to", l.to}, {"dd_s", l.dd_s}});
    jb["pull_in_s"] = b.pull_in_s;
    j["blocks"].push_back(std::move(jb));
  }
  j["nob"] = sched.nob;
  j["total_deadhead_s"] = sched.total_deadhead_s;
  return j.dump(2) + "\n";
}

}  // namespace sbrs
