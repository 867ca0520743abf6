#include "sbrs/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <unordered_map>

#include "path_order.hpp"
#include "sbrs/compatibility.hpp"
#include "sbrs/errors.hpp"
#include "sbrs/mcmf.hpp"

namespace sbrs {

RoutingObjective RoutingObjective::min_n(const SolverConfig& cfg) {
  RoutingObjective o;
  o.variant = ObjectiveVariant::MinN;
  o.alpha_n = cfg.alpha_n;
  o.alpha_t = cfg.alpha_t;
  o.alpha_d = cfg.alpha_d;
  return o;
}

RoutingObjective RoutingObjective::min_tt(const SolverConfig& cfg) {
  RoutingObjective o = min_n(cfg);
  o.variant = ObjectiveVariant::MinTT;
  return o;
}

RoutingObjective RoutingObjective::min_nt(const SolverConfig& cfg) {
  RoutingObjective o = min_n(cfg);
  o.variant = ObjectiveVariant::MinNT;
  return o;
}

RoutingObjective RoutingObjective::compat_aware(const SolverConfig& cfg,
                                                double alpha_c_eff, double alpha_d_eff,
                                                std::vector<CompatTarget> targets) {
  RoutingObjective o = min_n(cfg);
  o.variant = ObjectiveVariant::CompatAware;
  o.alpha_c = alpha_c_eff;
  o.alpha_d = alpha_d_eff;
  o.targets = std::move(targets);
  return o;
}

namespace {

struct TargetInfo {
  std::string id;
  Node pos;
  int bell = 0;
  std::optional<int> cap;
};

// Ordered block of stops plus everything the objective needs.
struct Block {
  std::vector<int> stops;  // visit order, indices into Ctx::stops
  int load = 0;
  long long legs = 0;
  int tt = 0;
};

struct Ctx {
  const School* school = nullptr;
  const Instance* inst = nullptr;
  const SolverConfig* cfg = nullptr;
  const RoutingObjective* obj = nullptr;
  std::vector<const Stop*> stops;
  std::vector<std::vector<int>> dist;  // 0 = school, 1.. = stops
  std::vector<TargetInfo> targets;
  int max_trips = 0;
  mutable std::unordered_map<std::uint64_t, Block> block_cache;

  int m() const { return static_cast<int>(stops.size()); }
};

Ctx make_ctx(const School& k, const RoutingObjective& obj, const SolverConfig& cfg,
             const Instance& inst) {
  Ctx c;
  c.school = &k;
  c.inst = &inst;
  c.cfg = &cfg;
  c.obj = &obj;
  for (const auto& sid : k.stops) c.stops.push_back(&inst.stop(sid));
  const int m = c.m();
  c.dist.assign(m + 1, std::vector<int>(m + 1, 0));
  auto pos = [&](int i) -> const Node& { return i == 0 ? k.pos : c.stops[i - 1]->pos; };
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j)
      if (i != j) c.dist[i][j] = leg_duration(pos(i), pos(j), inst.speed_mph);
  for (const CompatTarget& t : obj.targets) {
    if (t.capacity && *t.capacity <= 0) continue;  // no slots left
    const School& ks = inst.school(t.school);
    if (ks.id == k.id) continue;
    c.targets.push_back({ks.id, ks.pos, ks.bell_time_s, t.capacity});
  }
  c.max_trips = cfg.max_trips_for(k, inst);
  return c;
}

// Orders one stop set (exact DP within the configured threshold, otherwise
// nearest neighbor + 2-opt) and fills in load and travel time. Memoized by
// stop bitmask for schools small enough to carry one.
Block make_block(const Ctx& c, const std::vector<int>& stop_idxs) {
  std::uint64_t mask = 0;
  const bool can_cache = c.m() <= 60;
  if (can_cache) {
    for (int s : stop_idxs) mask |= 1ULL << s;
    auto it = c.block_cache.find(mask);
    if (it != c.block_cache.end()) return it->second;
  }

  const int b = static_cast<int>(stop_idxs.size());
  std::vector<std::vector<int>> dist(b + 1, std::vector<int>(b + 1, 0));
  for (int i = 0; i <= b; ++i)
    for (int j = 0; j <= b; ++j)
      if (i != j)
        dist[i][j] = c.dist[i == 0 ? 0 : stop_idxs[i - 1] + 1]
                           [j == 0 ? 0 : stop_idxs[j - 1] + 1];
  const auto [order, legs] = b <= c.cfg->exact_threshold_stops
                                 ? detail::order_exact(dist)
                                 : detail::order_heuristic(dist);

  Block blk;
  blk.legs = legs;
  blk.tt = 29 + static_cast<int>(legs);
  for (int idx : order) {
    blk.stops.push_back(stop_idxs[idx]);
    blk.load += c.stops[stop_idxs[idx]]->students;
    blk.tt += stop_service_time_s(c.stops[stop_idxs[idx]]->students);
  }
  if (can_cache) c.block_cache.emplace(mask, blk);
  return blk;
}

// Deadhead from a block's final stop to a candidate target school.
int block_target_dd(const Ctx& c, const Block& blk, const TargetInfo& t) {
  return leg_duration(c.stops[blk.stops.back()]->pos, t.pos, c.inst->speed_mph);
}

bool block_target_compatible(const Ctx& c, const Block& blk, const TargetInfo& t,
                             int dd) {
  return c.school->bell_time_s + blk.tt + dd <= t.bell + c.cfg->buffer_s;
}

struct Assignment {
  std::vector<int> target_of_block;  // -1 = unassigned
  std::vector<int> dd_of_block;
  int count = 0;
  long long dd_total = 0;
};

// Optimal trip-to-school assignment for a fixed set of blocks. Unlimited
// targets decompose per trip (pick the single best positive gain); capacity
// caps couple the trips, solved exactly as a min-cost b-matching.
Assignment best_assignment(const Ctx& c, const std::vector<Block>& blocks) {
  Assignment a;
  const int n = static_cast<int>(blocks.size());
  a.target_of_block.assign(n, -1);
  a.dd_of_block.assign(n, 0);
  if (c.obj->variant != ObjectiveVariant::CompatAware || c.targets.empty()) return a;

  const double ac = c.obj->alpha_c, ad = c.obj->alpha_d;
  bool capped = false;
  for (const TargetInfo& t : c.targets)
    if (t.cap) capped = true;

  if (!capped) {
    for (int i = 0; i < n; ++i) {
      double best_gain = 0;
      int best_t = -1, best_dd = 0;
      for (std::size_t t = 0; t < c.targets.size(); ++t) {
        const int dd = block_target_dd(c, blocks[i], c.targets[t]);
        if (!block_target_compatible(c, blocks[i], c.targets[t], dd)) continue;
        const double gain = ac - ad * dd;
        if (gain > best_gain ||
            (gain == best_gain && best_t >= 0 && dd < best_dd)) {
          best_gain = gain;
          best_t = static_cast<int>(t);
          best_dd = dd;
        }
      }
      if (best_t >= 0) {
        a.target_of_block[i] = best_t;
        a.dd_of_block[i] = best_dd;
        a.count++;
        a.dd_total += best_dd;
      }
    }
    return a;
  }

  const int nt = static_cast<int>(c.targets.size());
  const int source = 0, sink = 1 + n + nt;
  MinCostFlow flow(n + nt + 2);
  for (int i = 0; i < n; ++i) flow.add_edge(source, 1 + i, 1, {0, 0});
  for (int t = 0; t < nt; ++t)
    flow.add_edge(1 + n + t, sink, c.targets[t].cap ? *c.targets[t].cap : n, {0, 0});
  std::vector<std::tuple<int, int, int, int>> edge_info;  // edge, block, target, dd
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < nt; ++t) {
      const int dd = block_target_dd(c, blocks[i], c.targets[t]);
      if (!block_target_compatible(c, blocks[i], c.targets[t], dd)) continue;
      const double gain = ac - ad * dd;
      if (gain <= 0) continue;
      const int eid = flow.add_edge(1 + i, 1 + n + t, 1,
                                    {-gain, dd * 1e8 + i * 1e4 + t});
      edge_info.emplace_back(eid, i, t, dd);
    }
  }
  flow.run_profitable(source, sink);
  for (const auto& [eid, i, t, dd] : edge_info) {
    if (flow.flow_on(eid) > 0) {
      a.target_of_block[i] = t;
      a.dd_of_block[i] = dd;
      a.count++;
      a.dd_total += dd;
    }
  }
  return a;
}

// Candidate solution: canonically ordered blocks + assignment + objective.
struct Candidate {
  std::vector<Block> blocks;
  Assignment assign;
  double value = 0;
  long long tt_total = 0;
  std::vector<std::string> seq;  // flattened stop ids, "|" between trips

  bool better_than(const Candidate& o) const {
    if (value != o.value) return value < o.value;
    if (blocks.size() != o.blocks.size()) return blocks.size() < o.blocks.size();
    if (tt_total != o.tt_total) return tt_total < o.tt_total;
    return seq < o.seq;
  }
};

Candidate evaluate(const Ctx& c, std::vector<Block> blocks) {
  // Canonical order: longest trip first, ties by stop-id sequence.
  std::vector<std::vector<std::string>> ids(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (int s : blocks[i].stops) ids[i].push_back(c.stops[s]->id);
  std::vector<int> perm(blocks.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  std::sort(perm.begin(), perm.end(), [&](int x, int y) {
    if (blocks[x].tt != blocks[y].tt) return blocks[x].tt > blocks[y].tt;
    return ids[x] < ids[y];
  });
  std::vector<Block> sorted;
  for (int p : perm) sorted.push_back(std::move(blocks[p]));

  Candidate cand;
  cand.blocks = std::move(sorted);
  for (const Block& b : cand.blocks) {
    cand.tt_total += b.tt;
    for (int s : b.stops) cand.seq.push_back(c.stops[s]->id);
    cand.seq.emplace_back("|");
  }
  cand.assign = best_assignment(c, cand.blocks);

  const double n = static_cast<double>(cand.blocks.size());
  switch (c.obj->variant) {
    case ObjectiveVariant::MinN:
      cand.value = n;
      break;
    case ObjectiveVariant::MinTT:
      cand.value = c.obj->alpha_t * static_cast<double>(cand.tt_total);
      break;
    case ObjectiveVariant::MinNT:
      cand.value = c.obj->alpha_n * n + c.obj->alpha_t * static_cast<double>(cand.tt_total);
      break;
    case ObjectiveVariant::CompatAware:
      cand.value = c.obj->alpha_n * n - c.obj->alpha_c * cand.assign.count +
                   c.obj->alpha_t * static_cast<double>(cand.tt_total) +
                   c.obj->alpha_d * static_cast<double>(cand.assign.dd_total);
      break;
  }
  return cand;
}

long long mrt_penalty(const Ctx& c, const std::vector<Block>& blocks) {
  if (c.cfg->mrt_s <= 0) return 0;
  long long p = 0;
  for (const Block& b : blocks) p += std::max(0, b.tt - c.cfg->mrt_s);
  return p;
}

SchoolRoutingResult emit(const Ctx& c, const Candidate& cand, SolveStatus status) {
  SchoolRoutingResult r;
  r.status = status;
  r.objective_value = cand.value;
  for (std::size_t i = 0; i < cand.blocks.size(); ++i) {
    Trip t;
    t.id = c.school->id + "#" + std::to_string(i);
    t.school = c.school->id;
    for (int s : cand.blocks[i].stops) t.stops.push_back(c.stops[s]->id);
    t.load = cand.blocks[i].load;
    t.travel_time_s = cand.blocks[i].tt;
    if (cand.assign.target_of_block[i] >= 0)
      r.assignments[t.id] = c.targets[cand.assign.target_of_block[i]].id;
    r.trips.push_back(std::move(t));
  }
  return r;
}

// ---- exact search ----------------------------------------------------------

struct ExactSearch {
  const Ctx& c;
  std::vector<std::vector<int>> groups;  // raw partition under construction
  std::vector<int> loads;
  std::optional<Candidate> best;

  explicit ExactSearch(const Ctx& ctx) : c(ctx) {}

  void leaf() {
    std::vector<Block> blocks;
    blocks.reserve(groups.size());
    for (const auto& g : groups) {
      Block b = make_block(c, g);
      if (c.cfg->mrt_s > 0 && b.tt > c.cfg->mrt_s) return;  // riding-time cut
      blocks.push_back(std::move(b));
    }
    Candidate cand = evaluate(c, std::move(blocks));
    if (!best || cand.better_than(*best)) best = std::move(cand);
  }

  void rec(int i) {
    if (i == c.m()) {
      if (!groups.empty()) leaf();
      return;
    }
    const int students = c.stops[i]->students;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (loads[g] + students > c.inst->capacity) continue;
      groups[g].push_back(i);
      loads[g] += students;
      rec(i + 1);
      loads[g] -= students;
      groups[g].pop_back();
    }
    if (static_cast<int>(groups.size()) < c.max_trips) {
      groups.emplace_back(1, i);
      loads.push_back(students);
      rec(i + 1);
      loads.pop_back();
      groups.pop_back();
    }
  }
};

}  // namespace

SchoolRoutingResult exact_enumerate(const School& k, const RoutingObjective& obj,
                                    const SolverConfig& cfg, const Instance& inst) {
  const Ctx c = make_ctx(k, obj, cfg, inst);
  if (c.m() > cfg.exact_threshold_stops)
    throw SizeLimitError("exact_enumerate: school '" + k.id + "' has " +
                         std::to_string(c.m()) + " stops, threshold is " +
                         std::to_string(cfg.exact_threshold_stops));
  ExactSearch search(c);
  search.rec(0);
  if (!search.best)
    throw InfeasibleError("school '" + k.id +
                          "': no partition satisfies capacity and riding time "
                          "within the trip budget");
  return emit(c, *search.best, SolveStatus::Optimal);
}

namespace {

// ---- heuristic search ------------------------------------------------------

std::vector<int> angle_order(const Ctx& c) {
  std::vector<int> idx(c.m());
  for (int i = 0; i < c.m(); ++i) idx[i] = i;
  std::vector<double> ang(c.m());
  for (int i = 0; i < c.m(); ++i)
    ang[i] = std::atan2(static_cast<double>(c.stops[i]->pos.y - c.school->pos.y),
                        static_cast<double>(c.stops[i]->pos.x - c.school->pos.x));
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (ang[a] != ang[b]) return ang[a] < ang[b];
    return c.stops[a]->id < c.stops[b]->id;
  });
  return idx;
}

// Exhaustive capacity-only bin packing used when the sweep overshoots the
// trip budget: items descending, identical-state bins skipped.
bool pack_bins(const std::vector<int>& items, const std::vector<int>& sizes, int cap,
               int max_bins, std::vector<std::vector<int>>& bins,
               std::vector<int>& space, std::size_t at) {
  if (at == items.size()) return true;
  const int item = items[at];
  const int need = sizes[item];
  for (std::size_t b = 0; b < bins.size(); ++b) {
    if (space[b] < need) continue;
    bool dup = false;  // a bin with equal free space was already tried
    for (std::size_t p = 0; p < b; ++p)
      if (space[p] == space[b]) dup = true;
    if (dup) continue;
    bins[b].push_back(item);
    space[b] -= need;
    if (pack_bins(items, sizes, cap, max_bins, bins, space, at + 1)) return true;
    space[b] += need;
    bins[b].pop_back();
  }
  if (static_cast<int>(bins.size()) < max_bins) {
    bins.emplace_back(1, item);
    space.push_back(cap - need);
    if (pack_bins(items, sizes, cap, max_bins, bins, space, at + 1)) return true;
    space.pop_back();
    bins.pop_back();
  }
  return false;
}

std::vector<std::vector<int>> construct(const Ctx& c) {
  const std::vector<int> order = angle_order(c);
  std::vector<std::vector<int>> trips;
  std::vector<int> cur;
  int cur_load = 0;
  for (int s : order) {
    const int st = c.stops[s]->students;
    bool fits = cur_load + st <= c.inst->capacity;
    if (fits && c.cfg->mrt_s > 0) {
      std::vector<int> probe = cur;
      probe.push_back(s);
      fits = make_block(c, probe).tt <= c.cfg->mrt_s;
    }
    if (!cur.empty() && !fits) {
      trips.push_back(cur);
      cur.clear();
      cur_load = 0;
    }
    cur.push_back(s);
    cur_load += st;
  }
  if (!cur.empty()) trips.push_back(cur);

  if (static_cast<int>(trips.size()) > c.max_trips) {
    // Re-pack by capacity alone; local search restores geometry afterwards.
    std::vector<int> items(c.m());
    for (int i = 0; i < c.m(); ++i) items[i] = i;
    std::vector<int> sizes(c.m());
    for (int i = 0; i < c.m(); ++i) sizes[i] = c.stops[i]->students;
    std::sort(items.begin(), items.end(), [&](int a, int b) {
      if (sizes[a] != sizes[b]) return sizes[a] > sizes[b];
      return a < b;
    });
    std::vector<std::vector<int>> bins;
    std::vector<int> space;
    if (!pack_bins(items, sizes, c.inst->capacity, c.max_trips, bins, space, 0))
      throw InfeasibleError("school '" + c.school->id +
                            "': stops cannot be packed into the trip budget");
    trips = std::move(bins);
  }
  return trips;
}

struct LsState {
  std::vector<std::vector<int>> trips;  // raw stop index groups
  Candidate cand;
  long long penalty = 0;
};

std::optional<LsState> eval_state(const Ctx& c, std::vector<std::vector<int>> trips) {
  if (trips.empty() || static_cast<int>(trips.size()) > c.max_trips) return std::nullopt;
  std::vector<Block> blocks;
  for (const auto& g : trips) {
    if (g.empty()) return std::nullopt;
    int load = 0;
    for (int s : g) load += c.stops[s]->students;
    if (load > c.inst->capacity) return std::nullopt;
    blocks.push_back(make_block(c, g));
  }
  LsState st;
  st.penalty = mrt_penalty(c, blocks);
  st.cand = evaluate(c, std::move(blocks));
  st.trips = std::move(trips);
  return st;
}

bool state_better(const LsState& a, const LsState& b) {
  if (a.penalty != b.penalty) return a.penalty < b.penalty;
  return a.cand.better_than(b.cand);
}

}  // namespace

SchoolRoutingResult heuristic_solve(const School& k, const RoutingObjective& obj,
                                    const SolverConfig& cfg, const Instance& inst,
                                    double budget_s) {
  const Ctx c = make_ctx(k, obj, cfg, inst);

  if (cfg.mrt_s > 0)  // a stop that cannot be served alone is a dead end
    for (int i = 0; i < c.m(); ++i)
      if (make_block(c, {i}).tt > cfg.mrt_s)
        throw InfeasibleError("school '" + k.id + "': stop '" + c.stops[i]->id +
                              "' exceeds the riding-time limit even as the only stop");

  std::optional<LsState> cur = eval_state(c, construct(c));
  if (!cur) throw InfeasibleError("school '" + k.id + "': construction failed");

  // The effort budget is deterministic (pass count derived from the time
  // limit), so identical inputs explore identical move sequences. Local
  // optima are reached long before typical budgets.
  const long long passes =
      budget_s <= 0 ? 0
                    : std::clamp<long long>(static_cast<long long>(budget_s * 200), 1,
                                            200000);
  for (long long pass = 0; pass < passes; ++pass) {
    std::optional<LsState> best;

    auto consider = [&](std::vector<std::vector<int>> trips) {
      std::optional<LsState> st = eval_state(c, std::move(trips));
      if (!st) return;
      if (!state_better(*st, *cur)) return;
      if (!best || state_better(*st, *best)) best = std::move(st);
    };

    const auto& trips = cur->trips;
    const int nt = static_cast<int>(trips.size());
    for (int a = 0; a < nt; ++a) {
      for (std::size_t ai = 0; ai < trips[a].size(); ++ai) {
        // relocate stop -> existing trip
        for (int b = 0; b < nt; ++b) {
          if (a == b) continue;
          auto next = trips;
          const int s = next[a][ai];
          next[a].erase(next[a].begin() + ai);
          next[b].push_back(s);
          if (next[a].empty()) next.erase(next.begin() + a);
          consider(std::move(next));
        }
        // relocate stop -> new trip
        if (nt < c.max_trips && trips[a].size() > 1) {
          auto next = trips;
          const int s = next[a][ai];
          next[a].erase(next[a].begin() + ai);
          next.emplace_back(1, s);
          consider(std::move(next));
        }
        // swap with a stop of a later trip
        for (int b = a + 1; b < nt; ++b) {
          for (std::size_t bi = 0; bi < trips[b].size(); ++bi) {
            auto next = trips;
            std::swap(next[a][ai], next[b][bi]);
            consider(std::move(next));
          }
        }
      }
      // merge with a later trip
      for (int b = a + 1; b < nt; ++b) {
        auto next = trips;
        next[a].insert(next[a].end(), next[b].begin(), next[b].end());
        next.erase(next.begin() + b);
        consider(std::move(next));
      }
      // split along the visit order of the routed trip
      if (trips[a].size() >= 2 && nt < c.max_trips) {
        const Block blk = make_block(c, trips[a]);
        const std::size_t half = blk.stops.size() / 2;
        auto next = trips;
        next[a].assign(blk.stops.begin(), blk.stops.begin() + half);
        next.emplace_back(blk.stops.begin() + half, blk.stops.end());
        consider(std::move(next));
      }
    }

    if (!best) break;
    cur = std::move(best);
  }

  if (cur->penalty > 0)
    throw InfeasibleError("school '" + k.id +
                          "': no riding-time-feasible plan found within the trip "
                          "budget");
  return emit(c, cur->cand, SolveStatus::Heuristic);
}

SchoolRoutingResult solve_school(const School& k, const RoutingObjective& obj,
                                 const SolverConfig& cfg, const Instance& inst,
                                 double budget_s) {
  if (static_cast<int>(k.stops.size()) <= cfg.exact_threshold_stops)
    return exact_enumerate(k, obj, cfg, inst);
  return heuristic_solve(k, obj, cfg, inst, budget_s);
}

double recompute_objective(const SchoolRoutingResult& r, const RoutingObjective& obj,
                           const SolverConfig& cfg, const Instance& inst) {
  const double n = static_cast<double>(r.trips.size());
  long long tt = 0;
  for (const Trip& t : r.trips) tt += trip_travel_time_s(t, inst);
  switch (obj.variant) {
    case ObjectiveVariant::MinN:
      return n;
    case ObjectiveVariant::MinTT:
      return obj.alpha_t * static_cast<double>(tt);
    case ObjectiveVariant::MinNT:
      return obj.alpha_n * n + obj.alpha_t * static_cast<double>(tt);
    case ObjectiveVariant::CompatAware:
      break;
  }
  long long dd = 0;
  for (const Trip& t : r.trips) {
    auto it = r.assignments.find(t.id);
    if (it == r.assignments.end()) continue;
    dd += deadhead_to_school_s(t, inst.school(it->second), inst);
  }
  return obj.alpha_n * n - obj.alpha_c * static_cast<double>(r.assignments.size()) +
         obj.alpha_t * static_cast<double>(tt) + obj.alpha_d * static_cast<double>(dd);
}

}  // namespace sbrs
