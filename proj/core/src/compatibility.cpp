#include "sbrs/compatibility.hpp"

#include <algorithm>

#include <json.hpp>

namespace sbrs {

namespace {

const Node& last_stop_pos(const Trip& t, const Instance& inst) {
  return inst.stop(t.stops.back()).pos;
}

}  // namespace

int deadhead_s(const Trip& t1, const Trip& t2, const Instance& inst) {
  return leg_duration(last_stop_pos(t1, inst), inst.school(t2.school).pos,
                      inst.speed_mph);
}

int deadhead_to_school_s(const Trip& t, const School& k, const Instance& inst) {
  return leg_duration(last_stop_pos(t, inst), k.pos, inst.speed_mph);
}

int deadhead_from_depot_s(const Trip& t, const Instance& inst) {
  return leg_duration(inst.depot, inst.school(t.school).pos, inst.speed_mph);
}

int deadhead_to_depot_s(const Trip& t, const Instance& inst) {
  return leg_duration(last_stop_pos(t, inst), inst.depot, inst.speed_mph);
}

bool is_compatible(const Trip& t1, const Trip& t2, const Instance& inst,
                   int buffer_s) {
  const int sb1 = inst.school(t1.school).bell_time_s;
  const int sb2 = inst.school(t2.school).bell_time_s;
  return sb1 + t1.travel_time_s + deadhead_s(t1, t2, inst) <= sb2 + buffer_s;
}

bool is_school_compatible(const Trip& t, const School& k, const Instance& inst,
                          int buffer_s) {
  const int sb1 = inst.school(t.school).bell_time_s;
  return sb1 + t.travel_time_s + deadhead_to_school_s(t, k, inst) <=
         k.bell_time_s + buffer_s;
}

bool CompatibilityGraph::contains(int from, int to) const {
  return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(from, to));
}

std::string CompatibilityGraph::to_json() const {
  nlohmann::json edges = nlohmann::json::array();
  auto name = [&](int idx) -> std::string {
    if (idx == sdt_index()) return "SDT";
    if (idx == edt_index()) return "EDT";
    return trip_ids[idx];
  };
  for (const auto& [a, b] : pairs)
    edges.push_back({{"from", name(a)}, {"to", name(b)}, {"dd_s", deadhead_s.at({a, b})}});
  return edges.dump(2) + "\n";
}

CompatibilityGraph build_pair_set(const RoutingPlan& plan, const Instance& inst,
                                  int buffer_s) {
  CompatibilityGraph g;
  const int n = static_cast<int>(plan.trips.size());
  for (const Trip& t : plan.trips) g.trip_ids.push_back(t.id);
  const int sdt = g.sdt_index(), edt = g.edt_index();

  for (int i = 0; i < n; ++i) {
    g.pairs.emplace_back(sdt, i);
    g.deadhead_s[{sdt, i}] = deadhead_from_depot_s(plan.trips[i], inst);
    g.pairs.emplace_back(i, edt);
    g.deadhead_s[{i, edt}] = deadhead_to_depot_s(plan.trips[i], inst);
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (is_compatible(plan.trips[i], plan.trips[j], inst, buffer_s)) {
        g.pairs.emplace_back(i, j);
        g.deadhead_s[{i, j}] = deadhead_s(plan.trips[i], plan.trips[j], inst);
      }
    }
  }
  std::sort(g.pairs.begin(), g.pairs.end());
  return g;
}

}  // namespace sbrs
