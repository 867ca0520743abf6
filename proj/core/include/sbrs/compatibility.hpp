#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sbrs/instance.hpp"
#include "sbrs/trips.hpp"

namespace sbrs {

// Directed trip-compatibility structure over one routing plan. Trips are
// indexed by their position in the plan; two pseudo-trips close the chains:
// sdt_index() is the morning depot departure, edt_index() the evening return.
struct CompatibilityGraph {
  std::vector<std::string> trip_ids;                 // plan order
  std::vector<std::pair<int, int>> pairs;            // E, sorted ascending
  std::map<std::pair<int, int>, int> deadhead_s;     // defined for every pair in E

  int sdt_index() const { return static_cast<int>(trip_ids.size()); }
  int edt_index() const { return static_cast<int>(trip_ids.size()) + 1; }
  bool contains(int from, int to) const;

  // Debug dump: JSON edge list [{"from":..,"to":..,"dd_s":..}, ...] using
  // trip ids, with "SDT"/"EDT" for the pseudo-trips.
  std::string to_json() const;
};

// Deadhead from the last stop of t1 to the school of t2.
int deadhead_s(const Trip& t1, const Trip& t2, const Instance& inst);

// Deadhead from the last stop of t to school k (k need not be t's successor).
int deadhead_to_school_s(const Trip& t, const School& k, const Instance& inst);

int deadhead_from_depot_s(const Trip& t, const Instance& inst);  // pull-out
int deadhead_to_depot_s(const Trip& t, const Instance& inst);    // pull-in

// Can one bus serve t2 right after t1? Dismissal of t1's school, plus t1's
// travel time, plus the deadhead to t2's school must not pass t2's dismissal
// (plus buffer).
bool is_compatible(const Trip& t1, const Trip& t2, const Instance& inst,
                   int buffer_s = 0);

// Same inequality against school k's bell time; equals is_compatible(t1, t2)
// whenever k is t2's school.
bool is_school_compatible(const Trip& t, const School& k, const Instance& inst,
                          int buffer_s = 0);

// All compatible ordered pairs of distinct plan trips, plus (SDT, t) and
// (t, EDT) for every trip. Never (t, t), (SDT, EDT), (EDT, *) or (*, SDT).
CompatibilityGraph build_pair_set(const RoutingPlan& plan, const Instance& inst,
                                  int buffer_s = 0);

}  // namespace sbrs
