#pragma once

#include <map>
#include <set>
#include <string>

#include "sbrs/config.hpp"
#include "sbrs/instance.hpp"
#include "sbrs/routing.hpp"
#include "sbrs/scheduling.hpp"

namespace sbrs {

enum class Method { Exact, MinN, MinTT, MinNT, Alg1, Alg2, Alg2W };

Method parse_method(const std::string& name);   // "exact", "minn", ..., "alg2w"
std::string method_name(Method m);

// Untaken-trip-capacity bookkeeping for the sequential decomposition.
struct UTCState {
  std::map<std::string, int> utc;   // school id -> remaining predecessor slots
  std::set<std::string> solved;
};

// Marks k solved: utc[k] becomes k's active trip count, and each assignment
// target's utc decreases by the trips assigned to it. Throws std::logic_error
// if a target would go negative (routing must respect the caps).
void update_utc(UTCState& state, const School& k, const SchoolRoutingResult& r,
                const Instance& inst);

struct SolutionMetrics {
  int nob = 0;
  int not_trips = 0;        // number of trips
  long long tvt_s = 0;      // total vehicle time: travel + deadhead
  double runtime_s = 0;     // wall clock; reported, never asserted
  std::string method;
};

struct Solution {
  RoutingPlan plan;
  std::map<std::string, std::string> assignments;  // routing-stage, trip -> school
  Schedule schedule;
  SolutionMetrics metrics;
};

// Decomposition with objective adjustment: each school solved independently
// with the reduced assignment weight alpha_c_oa against unlimited targets.
Solution run_algorithm1(const Instance& inst, const SolverConfig& cfg);

// Sequential decomposition with capacity-bounded assignment: schools solved
// in descending bell-time order (ties by ascending id) against UTC-bounded
// targets; weight_adjust switches the assignment weight to alpha_c_ca.
Solution run_algorithm2(const Instance& inst, const SolverConfig& cfg,
                        bool weight_adjust);

// Traditional decomposition: per-school routing with the given baseline
// objective, then scheduling. variant must not be CompatAware.
Solution run_baseline(const Instance& inst, const SolverConfig& cfg,
                      ObjectiveVariant variant);

struct IntegratedLimits {
  int max_total_stops = 8;
  int max_total_trips = 8;   // sum over schools of min(stops, MNT + AAT)
};

// Global optimum of the integrated problem by enumerating every joint
// feasible routing plan and scheduling each exactly. Throws SizeLimitError
// beyond the limits.
Solution run_integrated_exact(const Instance& inst, const SolverConfig& cfg,
                              const IntegratedLimits& limits = {});

Solution run_method(const Instance& inst, const SolverConfig& cfg, Method m);

// Builds schedule + metrics for an already-routed plan (shared tail of every
// method): pair set, exact scheduling, metric assembly.
Solution finish_solution(RoutingPlan plan, std::map<std::string, std::string> assignments,
                         const Instance& inst, const SolverConfig& cfg,
                         const std::string& method);

// Full deterministic solution JSON (no wall-clock fields).
std::string solution_to_json(const Solution& sol);

// Half-up seconds -> minutes used in every report.
long long minutes_half_up(long long seconds);

}  // namespace sbrs
