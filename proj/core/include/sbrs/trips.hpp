#pragma once

#include <string>
#include <vector>

#include "sbrs/config.hpp"
#include "sbrs/instance.hpp"

namespace sbrs {

// One afternoon trip: bus loads at the school, then visits stops in order.
struct Trip {
  std::string id;
  std::string school;
  std::vector<std::string> stops;  // visit order after leaving the school
  int load = 0;                    // total students aboard
  int travel_time_s = 0;
};

// All trips of one solution, grouped by school in instance order; within a
// school trips are sorted by non-increasing travel time (longest first).
struct RoutingPlan {
  std::vector<Trip> trips;
};

// Loading time at the school as a function of boarding students:
// 29.0 + 1.9 * students, rounded half-up. Computed in integer tenths.
int pickup_time_s(int students);

// Unloading time at one stop: 19.0 + 2.6 * students, rounded half-up.
int dropoff_time_s(int students);

// Per-stop service term inside trip travel time: 19 + 4.5 * students,
// rounded half-up (the pickup and dropoff slopes combine to 4.5).
int stop_service_time_s(int students);

// Leg durations school -> stop1 -> ... -> stopN, plus the fixed 29 s loading
// intercept, plus each stop's service term.
int trip_travel_time_s(const Trip& t, const Instance& inst);

struct Violation {
  std::string constraint;  // "capacity", "mrt", "stop_order", ...
  std::string detail;
};

// Capacity, max riding time, stop ownership, load and travel-time consistency.
std::vector<Violation> validate_trip(const Trip& t, const SolverConfig& cfg,
                                     const Instance& inst);

// Orders a stop subset to minimize the leg-duration sum of the open path
// school -> stops. Exact subset DP up to exact_threshold stops, nearest
// neighbor + 2-opt beyond. Returns a trip with id unset.
Trip optimal_stop_order(const School& k, const std::vector<std::string>& stop_subset,
                        const Instance& inst, int exact_threshold = 8);

long long plan_total_travel_time_s(const RoutingPlan& plan);

// Trip JSON object, e.g. {"id":..,"school":..,"stops":[..],"load":..,"travel_time_s":..}.
std::string trip_to_json(const Trip& t);

}  // namespace sbrs
