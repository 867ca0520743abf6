#include "sbrs/methods.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include <json.hpp>

#include "sbrs/compatibility.hpp"
#include "sbrs/errors.hpp"

namespace sbrs {

Method parse_method(const std::string& name) {
  if (name == "exact") return Method::Exact;
  if (name == "minn") return Method::MinN;
  if (name == "mintt") return Method::MinTT;
  if (name == "minnt") return Method::MinNT;
  if (name == "alg1") return Method::Alg1;
  if (name == "alg2") return Method::Alg2;
  if (name == "alg2w") return Method::Alg2W;
  throw ParseError("unknown method '" + name +
                   "' (expected exact|minn|mintt|minnt|alg1|alg2|alg2w)");
}

std::string method_name(Method m) {
  switch (m) {
    case Method::Exact: return "exact";
    case Method::MinN: return "minn";
    case Method::MinTT: return "mintt";
    case Method::MinNT: return "minnt";
    case Method::Alg1: return "alg1";
    case Method::Alg2: return "alg2";
    case Method::Alg2W: return "alg2w";
  }
  return "?";
}

void update_utc(UTCState& state, const School& k, const SchoolRoutingResult& r,
                const Instance& inst) {
  (void)inst;
  if (state.solved.count(k.id))
    throw std::logic_error("update_utc: school '" + k.id + "' already solved");
  state.utc[k.id] = static_cast<int>(r.trips.size());
  for (const auto& [trip, target] : r.assignments) {
    (void)trip;
    auto it = state.utc.find(target);
    if (it == state.utc.end())
      throw std::logic_error("update_utc: unknown assignment target '" + target + "'");
    if (--(it->second) < 0)
      throw std::logic_error("update_utc: target '" + target +
                             "' over-consumed (routing ignored its cap)");
  }
  state.solved.insert(k.id);
}

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Schools in solving order for the sequential pass: latest bell first,
// ties by ascending id.
std::vector<const School*> descending_bell_order(const Instance& inst) {
  std::vector<const School*> order;
  for (const School& k : inst.schools) order.push_back(&k);
  std::sort(order.begin(), order.end(), [](const School* a, const School* b) {
    if (a->bell_time_s != b->bell_time_s) return a->bell_time_s > b->bell_time_s;
    return a->id < b->id;
  });
  return order;
}

// Plans are always emitted grouped by school in instance order, regardless
// of the order schools were solved in.
Solution assemble(const Instance& inst, const SolverConfig& cfg,
                  std::map<std::string, SchoolRoutingResult> by_school,
                  const std::string& method) {
  RoutingPlan plan;
  std::map<std::string, std::string> assignments;
  for (const School& k : inst.schools) {
    SchoolRoutingResult& r = by_school.at(k.id);
    for (Trip& t : r.trips) plan.trips.push_back(std::move(t));
    for (auto& [trip, target] : r.assignments) assignments[trip] = target;
  }
  return finish_solution(std::move(plan), std::move(assignments), inst, cfg, method);
}

}  // namespace

Solution finish_solution(RoutingPlan plan, std::map<std::string, std::string> assignments,
                         const Instance& inst, const SolverConfig& cfg,
                         const std::string& method) {
  Solution sol;
  const CompatibilityGraph graph = build_pair_set(plan, inst, cfg.buffer_s);
  sol.schedule = solve_schedule(plan, graph, cfg);
  sol.plan = std::move(plan);
  sol.assignments = std::move(assignments);
  sol.metrics.nob = sol.schedule.nob;
  sol.metrics.not_trips = static_cast<int>(sol.plan.trips.size());
  sol.metrics.tvt_s = plan_total_travel_time_s(sol.plan) + sol.schedule.total_deadhead_s;
  sol.metrics.method = method;
  return sol;
}

Solution run_baseline(const Instance& inst, const SolverConfig& cfg,
                      ObjectiveVariant variant) {
  const auto t0 = std::chrono::steady_clock::now();
  RoutingObjective obj;
  std::string name;
  switch (variant) {
    case ObjectiveVariant::MinN:
      obj = RoutingObjective::min_n(cfg);
      name = "minn";
      break;
    case ObjectiveVariant::MinTT:
      obj = RoutingObjective::min_tt(cfg);
      name = "mintt";
      break;
    case ObjectiveVariant::MinNT:
      obj = RoutingObjective::min_nt(cfg);
      name = "minnt";
      break;
    case ObjectiveVariant::CompatAware:
      throw std::logic_error("run_baseline: CompatAware is not a baseline");
  }
  std::map<std::string, SchoolRoutingResult> results;
  for (const School& k : inst.schools)
    results[k.id] = solve_school(k, obj, cfg, inst, cfg.time_limit_s);
  Solution sol = assemble(inst, cfg, std::move(results), name);
  sol.metrics.runtime_s = seconds_since(t0);
  return sol;
}

Solution run_algorithm1(const Instance& inst, const SolverConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  std::map<std::string, SchoolRoutingResult> results;
  for (const School& k : inst.schools) {
    std::vector<CompatTarget> targets;
    for (const School& k2 : inst.schools)
      if (k2.id != k.id) targets.push_back({k2.id, std::nullopt});
    const RoutingObjective obj = RoutingObjective::compat_aware(
        cfg, cfg.alpha_c_oa, cfg.alpha_d_oa_effective(), std::move(targets));
    results[k.id] = solve_school(k, obj, cfg, inst, cfg.time_limit_s);
  }
  Solution sol = assemble(inst, cfg, std::move(results), "alg1");
  sol.metrics.runtime_s = seconds_since(t0);
  return sol;
}

Solution run_algorithm2(const Instance& inst, const SolverConfig& cfg,
                        bool weight_adjust) {
  const auto t0 = std::chrono::steady_clock::now();
  UTCState state;
  for (const School& k : inst.schools) state.utc[k.id] = compute_mnt(k, inst);

  std::map<std::string, SchoolRoutingResult> results;
  for (const School* k : descending_bell_order(inst)) {
    std::vector<CompatTarget> targets;
    for (const auto& [id, slots] : state.utc)
      if (id != k->id && slots > 0) targets.push_back({id, slots});
    const RoutingObjective obj = RoutingObjective::compat_aware(
        cfg, weight_adjust ? cfg.alpha_c_ca : cfg.alpha_c, cfg.alpha_d,
        std::move(targets));
    SchoolRoutingResult r = solve_school(*k, obj, cfg, inst, cfg.time_limit_s);
    update_utc(state, *k, r, inst);
    results[k->id] = std::move(r);
  }
  Solution sol = assemble(inst, cfg, std::move(results), weight_adjust ? "alg2w" : "alg2");
  sol.metrics.runtime_s = seconds_since(t0);
  return sol;
}

namespace {

// Every capacity/riding-time-feasible partition of one school's stops within
// its trip budget, each block already optimally ordered.
std::vector<std::vector<Trip>> all_school_plans(const School& k, const SolverConfig& cfg,
                                                const Instance& inst) {
  const int m = static_cast<int>(k.stops.size());
  const int max_trips = cfg.max_trips_for(k, inst);
  std::vector<std::vector<Trip>> plans;
  std::vector<std::vector<int>> groups;
  std::vector<int> loads;

  auto leaf = [&]() {
    std::vector<Trip> trips;
    for (const auto& g : groups) {
      std::vector<std::string> subset;
      for (int i : g) subset.push_back(k.stops[i]);
      Trip t = optimal_stop_order(k, subset, inst, cfg.exact_threshold_stops);
      if (cfg.mrt_s > 0 && t.travel_time_s > cfg.mrt_s) return;
      trips.push_back(std::move(t));
    }
    std::sort(trips.begin(), trips.end(), [](const Trip& a, const Trip& b) {
      if (a.travel_time_s != b.travel_time_s) return a.travel_time_s > b.travel_time_s;
      return a.stops < b.stops;
    });
    for (std::size_t i = 0; i < trips.size(); ++i)
      trips[i].id = k.id + "#" + std::to_string(i);
    plans.push_back(std::move(trips));
  };

  auto rec = [&](auto&& self, int i) -> void {
    if (i == m) {
      if (!groups.empty()) leaf();
      return;
    }
    const int students = inst.stop(k.stops[i]).students;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (loads[g] + students > inst.capacity) continue;
      groups[g].push_back(i);
      loads[g] += students;
      self(self, i + 1);
      loads[g] -= students;
      groups[g].pop_back();
    }
    if (static_cast<int>(groups.size()) < max_trips) {
      groups.emplace_back(1, i);
      loads.push_back(students);
      self(self, i + 1);
      loads.pop_back();
      groups.pop_back();
    }
  };
  rec(rec, 0);
  return plans;
}

}  // namespace

Solution run_integrated_exact(const Instance& inst, const SolverConfig& cfg,
                              const IntegratedLimits& limits) {
  const auto t0 = std::chrono::steady_clock::now();
  int total_stops = 0, total_budget = 0;
  for (const School& k : inst.schools) {
    const int stops = static_cast<int>(k.stops.size());
    total_stops += stops;
    total_budget += std::min(stops, cfg.max_trips_for(k, inst));
  }
  if (total_stops > limits.max_total_stops)
    throw SizeLimitError("integrated exact: " + std::to_string(total_stops) +
                         " stops exceed the limit of " +
                         std::to_string(limits.max_total_stops));
  if (total_budget > limits.max_total_trips)
    throw SizeLimitError("integrated exact: trip budget " + std::to_string(total_budget) +
                         " exceeds the limit of " + std::to_string(limits.max_total_trips));

  std::vector<std::vector<std::vector<Trip>>> choices;  // per school
  for (const School& k : inst.schools) {
    choices.push_back(all_school_plans(k, cfg, inst));
    if (choices.back().empty())
      throw InfeasibleError("school '" + k.id + "': no feasible routing");
  }

  struct Best {
    double value = std::numeric_limits<double>::infinity();
    long long tt = 0;
    RoutingPlan plan;
    Schedule schedule;
    bool set = false;
  } best;

  RoutingPlan joint;
  auto rec = [&](auto&& self, std::size_t school_idx) -> void {
    if (school_idx == choices.size()) {
      const CompatibilityGraph graph = build_pair_set(joint, inst, cfg.buffer_s);
      const Schedule sched = brute_force_schedule(joint, graph, cfg);
      const long long tt = plan_total_travel_time_s(joint);
      const double value = cfg.alpha_b * sched.nob +
                           cfg.alpha_t * static_cast<double>(tt) +
                           cfg.alpha_d * static_cast<double>(sched.total_deadhead_s);
      const bool better =
          !best.set || value < best.value ||
          (value == best.value &&
           std::make_pair(joint.trips.size(), tt) <
               std::make_pair(best.plan.trips.size(), best.tt));
      if (better) {
        best.value = value;
        best.tt = tt;
        best.plan = joint;
        best.schedule = sched;
        best.set = true;
      }
      return;
    }
    for (const std::vector<Trip>& school_plan : choices[school_idx]) {
      const std::size_t mark = joint.trips.size();
      for (const Trip& t : school_plan) joint.trips.push_back(t);
      self(self, school_idx + 1);
      joint.trips.resize(mark);
    }
  };
  rec(rec, 0);

  if (!best.set) throw InfeasibleError("integrated exact: no feasible joint plan");

  Solution sol;
  sol.plan = std::move(best.plan);
  sol.schedule = std::move(best.schedule);
  sol.metrics.nob = sol.schedule.nob;
  sol.metrics.not_trips = static_cast<int>(sol.plan.trips.size());
  sol.metrics.tvt_s = plan_total_travel_time_s(sol.plan) + sol.schedule.total_deadhead_s;
  sol.metrics.method = "exact";
  sol.metrics.runtime_s = seconds_since(t0);
  return sol;
}

Solution run_method(const Instance& inst, const SolverConfig& cfg, Method m) {
  switch (m) {
    case Method::Exact: return run_integrated_exact(inst, cfg);
    case Method::MinN: return run_baseline(inst, cfg, ObjectiveVariant::MinN);
    case Method::MinTT: return run_baseline(inst, cfg, ObjectiveVariant::MinTT);
    case Method::MinNT: return run_baseline(inst, cfg, ObjectiveVariant::MinNT);
    case Method::Alg1: return run_algorithm1(inst, cfg);
    case Method::Alg2: return run_algorithm2(inst, cfg, false);
    case Method::Alg2W: return run_algorithm2(inst, cfg, true);
  }
  throw std::logic_error("run_method: bad method");
}

long long minutes_half_up(long long seconds) { return (seconds * 2 + 60) / 120; }

std::string solution_to_json(const Solution& sol) {
  nlohmann::json j;
  j["method"] = sol.metrics.method;
  j["trips"] = nlohmann::json::array();
  for (const Trip& t : sol.plan.trips)
    j["trips"].push_back(nlohmann::json::parse(trip_to_json(t)));
  j["assignments"] = nlohmann::json::object();
  for (const auto& [trip, target] : sol.assignments) j["assignments"][trip] = target;
  j["schedule"] = nlohmann::json::parse(schedule_to_json(sol.schedule));
  j["metrics"] = {{"nob", sol.metrics.nob},
                  {"not", sol.metrics.not_trips},
                  {"tvt_s", sol.metrics.tvt_s},
                  {"tvt_min", minutes_half_up(sol.metrics.tvt_s)}};
  return j.dump(2) + "\n";
}

}  // namespace sbrs
