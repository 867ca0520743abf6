#include "sbrs/trips.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include <json.hpp>

#include "path_order.hpp"

namespace sbrs {

// The boarding/alighting regression has decimal slopes (1.9, 2.6 s/student),
// so the half-up rounding is done in integer tenths of a second.
int pickup_time_s(int students) { return (290 + 19 * students + 5) / 10; }

int dropoff_time_s(int students) { return (190 + 26 * students + 5) / 10; }

int stop_service_time_s(int students) { return 19 + (45 * students + 5) / 10; }

int trip_travel_time_s(const Trip& t, const Instance& inst) {
  const School& k = inst.school(t.school);
  int total = 29;  // loading intercept, once per trip
  Node prev = k.pos;
  for (const auto& sid : t.stops) {
    const Stop& s = inst.stop(sid);
    total += leg_duration(prev, s.pos, inst.speed_mph);
    total += stop_service_time_s(s.students);
    prev = s.pos;
  }
  return total;
}

std::vector<Violation> validate_trip(const Trip& t, const SolverConfig& cfg,
                                     const Instance& inst) {
  std::vector<Violation> v;
  if (t.stops.empty()) {
    v.push_back({"stops", "trip '" + t.id + "' visits no stops"});
    return v;
  }
  std::set<std::string> seen;
  int load = 0;
  for (const auto& sid : t.stops) {
    const Stop& s = inst.stop(sid);
    if (s.school != t.school)
      v.push_back({"stop_owner", "stop '" + sid + "' belongs to school '" + s.school +
                                     "', trip serves '" + t.school + "'"});
    if (!seen.insert(sid).second)
      v.push_back({"stop_order", "stop '" + sid + "' visited twice"});
    load += s.students;
  }
  if (load > inst.capacity)
    v.push_back({"capacity", "trip '" + t.id + "' carries " + std::to_string(load) +
                                 " > capacity " + std::to_string(inst.capacity)});
  if (load != t.load)
    v.push_back({"load", "trip '" + t.id + "' records load " + std::to_string(t.load) +
                             ", stops sum to " + std::to_string(load)});
  const int tt = trip_travel_time_s(t, inst);
  if (tt != t.travel_time_s)
    v.push_back({"travel_time", "trip '" + t.id + "' records " +
                                    std::to_string(t.travel_time_s) + " s, recomputed " +
                                    std::to_string(tt) + " s"});
  if (cfg.mrt_s > 0 && tt > cfg.mrt_s)
    v.push_back({"mrt", "trip '" + t.id + "' rides " + std::to_string(tt) +
                            " s > limit " + std::to_string(cfg.mrt_s) + " s"});
  return v;
}

Trip optimal_stop_order(const School& k, const std::vector<std::string>& stop_subset,
                        const Instance& inst, int exact_threshold) {
  if (stop_subset.empty())
    throw std::invalid_argument("optimal_stop_order: empty stop subset");

  const int m = static_cast<int>(stop_subset.size());
  std::vector<Node> nodes(m + 1);
  nodes[0] = k.pos;
  for (int i = 0; i < m; ++i) nodes[i + 1] = inst.stop(stop_subset[i]).pos;
  std::vector<std::vector<int>> dist(m + 1, std::vector<int>(m + 1, 0));
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j)
      if (i != j) dist[i][j] = leg_duration(nodes[i], nodes[j], inst.speed_mph);

  const auto [order, legs] = m <= exact_threshold ? detail::order_exact(dist)
                                                  : detail::order_heuristic(dist);
  (void)legs;

  Trip t;
  t.school = k.id;
  for (int idx : order) t.stops.push_back(stop_subset[idx]);
  for (const auto& sid : t.stops) t.load += inst.stop(sid).students;
  t.travel_time_s = trip_travel_time_s(t, inst);
  return t;
}

long long plan_total_travel_time_s(const RoutingPlan& plan) {
  long long total = 0;
  for (const Trip& t : plan.trips) total += t.travel_time_s;
  return total;
}

std::string trip_to_json(const Trip& t) {
  nlohmann::json j;
  j["id"] = t.id;
  j["school"] = t.school;
  j["stops"] = t.stops;
  j["load"] = t.load;
  j["travel_time_s"] = t.travel_time_s;
  return j.dump();
}

}  // namespace sbrs
