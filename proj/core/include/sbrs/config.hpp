#pragma once

#include <cstdint>
#include <optional>

#include "sbrs/instance.hpp"

namespace sbrs {

// Solver-wide knobs. Weight defaults follow the reference experimental setup:
// bus/trip/assignment weights dominate travel time, which dominates deadhead.
struct SolverConfig {
  double alpha_b = 1e5;      // per bus (scheduling)
  double alpha_n = 1e5;      // per trip (routing)
  double alpha_c = 1e5;      // per realized trip-to-school assignment
  double alpha_t = 1.0;      // per second of trip travel time
  double alpha_d = 0.5;      // per second of deadhead
  double alpha_c_oa = 5e4;   // assignment weight, objective-adjustment variant
  double alpha_c_ca = 9e4;   // assignment weight, weight-adjusted capacity variant
  double alpha_d_oa = -1.0;  // deadhead weight for objective adjustment; <0 -> alpha_d

  int mrt_s = 5400;          // max riding time per trip, seconds; 0 disables
  std::optional<int> aat;    // additional allowed trips per school; nullopt -> MNT
  int buffer_s = 0;          // slack added to the compatibility inequality
  double time_limit_s = 30;  // per-subproblem budget for heuristic search
  int exact_threshold_stops = 8;  // max school size for exhaustive routing
  std::uint64_t seed = 0;

  double alpha_d_oa_effective() const { return alpha_d_oa < 0 ? alpha_d : alpha_d_oa; }

  // Trip budget for one school: MNT + AAT, with AAT defaulting to MNT.
  int max_trips_for(const School& k, const Instance& inst) const {
    const int mnt = compute_mnt(k, inst);
    return mnt + (aat ? *aat : mnt);
  }
};

}  // namespace sbrs
