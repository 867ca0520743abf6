#pragma once

#include <string>
#include <vector>

#include "sbrs/compatibility.hpp"
#include "sbrs/config.hpp"
#include "sbrs/trips.hpp"

namespace sbrs {

struct LinkRecord {
  std::string from;
  std::string to;
  int dd_s = 0;
};

// One bus's afternoon: depot -> trips in order -> depot.
struct BusBlock {
  std::vector<std::string> trips;   // at least one
  int pull_out_s = 0;               // depot -> first trip's school
  std::vector<LinkRecord> links;    // consecutive in-block connections
  int pull_in_s = 0;                // last trip's final stop -> depot
};

struct Schedule {
  std::vector<BusBlock> blocks;
  int nob = 0;                       // number of buses = blocks.size()
  long long total_deadhead_s = 0;    // pull-outs + links + pull-ins
};

// Chains the plan's trips into bus blocks minimizing
// alpha_b * nob + alpha_d * total_deadhead, exactly, via min-cost matching on
// the compatibility pair set (an internal link saves one bus and swaps two
// depot legs for the link deadhead). With default weights the bus count is
// lexicographically primary.
Schedule solve_schedule(const RoutingPlan& plan, const CompatibilityGraph& graph,
                        const SolverConfig& cfg);

// Exhaustive oracle: enumerates every chain partition consistent with the
// pair set (<= 9 trips) and returns the objective-minimal schedule.
Schedule brute_force_schedule(const RoutingPlan& plan, const CompatibilityGraph& graph,
                              const SolverConfig& cfg);

// Structural audit: every active trip in exactly one block, consecutive
// pairs in E, deadhead sums match, and nob == trips - internal links.
std::vector<Violation> verify_schedule(const Schedule& sched, const RoutingPlan& plan,
                                       const CompatibilityGraph& graph);

// {"blocks":[{"trips":[..],"pull_out_s":..,"links":[{"from":..,"to":..,"dd_s":..}],
//   "pull_in_s":..}],"nob":..,"total_deadhead_s":..}
std::string schedule_to_json(const Schedule& sched);

}  // namespace sbrs
