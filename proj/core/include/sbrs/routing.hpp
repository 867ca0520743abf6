#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sbrs/config.hpp"
#include "sbrs/instance.hpp"
#include "sbrs/trips.hpp"

namespace sbrs {

enum class ObjectiveVariant { MinN, MinTT, MinNT, CompatAware };

// A school whose trips may absorb this school's trips as predecessors.
// capacity nullopt = unlimited (objective adjustment); otherwise remaining
// slots (capacity-bounded assignment).
struct CompatTarget {
  std::string school;
  std::optional<int> capacity;
};

// Per-school routing objective. For CompatAware:
//   alpha_n*|trips| - alpha_c*|assignments| + alpha_t*sum(tt) + alpha_d*sum(assigned dd)
// MinN counts trips, MinTT is alpha_t*sum(tt), MinNT combines both.
struct RoutingObjective {
  ObjectiveVariant variant = ObjectiveVariant::MinNT;
  double alpha_n = 1e5;
  double alpha_c = 1e5;   // effective assignment weight (variant-specific)
  double alpha_t = 1.0;
  double alpha_d = 0.5;   // effective deadhead weight for assignments
  std::vector<CompatTarget> targets;  // CompatAware only

  static RoutingObjective min_n(const SolverConfig& cfg);
  static RoutingObjective min_tt(const SolverConfig& cfg);
  static RoutingObjective min_nt(const SolverConfig& cfg);
  static RoutingObjective compat_aware(const SolverConfig& cfg, double alpha_c_eff,
                                       double alpha_d_eff,
                                       std::vector<CompatTarget> targets);
};

enum class SolveStatus { Optimal, Heuristic };

struct SchoolRoutingResult {
  std::vector<Trip> trips;                        // canonical order, ids set
  std::map<std::string, std::string> assignments; // trip id -> target school id
  double objective_value = 0;
  SolveStatus status = SolveStatus::Heuristic;
};

// Dispatches on school size: exhaustive search up to
// cfg.exact_threshold_stops stops, local-search heuristic beyond. budget_s
// caps heuristic wall time (<=0 means construction only).
SchoolRoutingResult solve_school(const School& k, const RoutingObjective& obj,
                                 const SolverConfig& cfg, const Instance& inst,
                                 double budget_s);

// Branch-and-bound over set partitions of the school's stops (capacity, MRT
// and trip-budget pruning), each block ordered by exact subset DP. Optimal.
SchoolRoutingResult exact_enumerate(const School& k, const RoutingObjective& obj,
                                    const SolverConfig& cfg, const Instance& inst);

// Sweep construction (polar angle around the school) plus best-improvement
// local search over {relocate, swap, merge, split}; trips re-ordered after
// each structural move. Always returns a feasible plan or throws.
SchoolRoutingResult heuristic_solve(const School& k, const RoutingObjective& obj,
                                    const SolverConfig& cfg, const Instance& inst,
                                    double budget_s);

// Re-derives the objective value from trips + assignments; used to check
// solver bookkeeping never drifts from the definition.
double recompute_objective(const SchoolRoutingResult& r, const RoutingObjective& obj,
                           const SolverConfig& cfg, const Instance& inst);

}  // namespace sbrs
