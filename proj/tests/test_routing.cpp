#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "sbrs/compatibility.hpp"
#include "sbrs/fixtures.hpp"
#include "sbrs/generator.hpp"
#include "sbrs/routing.hpp"

using namespace sbrs;

namespace {

// Reference solver: enumerates every partition of the school's stops within
// the trip budget, every visiting order inside each block, and every
// cap-respecting assignment of trips to targets. Small and slow on purpose.
struct Oracle {
  const School& k;
  const RoutingObjective& obj;
  const SolverConfig& cfg;
  const Instance& inst;

  double best = std::numeric_limits<double>::infinity();

  // Stop ordering inside a block reuses the canonical path solver (itself
  // cross-checked against raw permutations elsewhere); the oracle's job is
  // the partition and assignment enumeration around it.
  Trip ordered_block(const std::vector<int>& block) const {
    std::vector<std::string> ids;
    for (int i : block) ids.push_back(k.stops[i]);
    return optimal_stop_order(k, ids, inst);
  }

  int best_block_tt(const std::vector<int>& block) const {
    return ordered_block(block).travel_time_s;
  }

  Node last_stop_pos(const std::vector<int>& block) const {
    return inst.stop(ordered_block(block).stops.back()).pos;
  }

  // cheapest cap-respecting assignment value for CompatAware
  double assignment_value(const std::vector<std::vector<int>>& blocks) {
    std::vector<int> tts;
    std::vector<Node> last;
    for (const auto& b : blocks) {
      tts.push_back(best_block_tt(b));
      last.push_back(last_stop_pos(b));
    }
    std::vector<int> caps;
    std::vector<const School*> targets;
    for (const CompatTarget& t : obj.targets) {
      if (!inst.has_school(t.school) || t.school == k.id) continue;
      targets.push_back(&inst.school(t.school));
      caps.push_back(t.capacity ? *t.capacity : static_cast<int>(blocks.size()));
    }
    double best_av = 0;
    std::vector<int> used(targets.size(), 0);
    auto rec = [&](auto&& self, std::size_t trip, double acc) -> void {
      if (trip == blocks.size()) {
        best_av = std::min(best_av, acc);
        return;
      }
      self(self, trip + 1, acc);  // leave unassigned
      for (std::size_t j = 0; j < targets.size(); ++j) {
        if (used[j] >= caps[j]) continue;
        const int dd = leg_duration(last[trip], targets[j]->pos, inst.speed_mph);
        if (k.bell_time_s + tts[trip] + dd >
            targets[j]->bell_time_s + cfg.buffer_s)
          continue;
        ++used[j];
        self(self, trip + 1, acc - obj.alpha_c + obj.alpha_d * dd);
        --used[j];
      }
    };
    rec(rec, 0, 0.0);
    return best_av;
  }

  void leaf(const std::vector<std::vector<int>>& blocks) {
    double tt_total = 0;
    for (const auto& b : blocks) {
      const int tt = best_block_tt(b);
      if (cfg.mrt_s > 0 && tt > cfg.mrt_s) return;
      tt_total += tt;
    }
    double value = 0;
    switch (obj.variant) {
      case ObjectiveVariant::MinN:
        value = static_cast<double>(blocks.size());  // plain count; ties via tt
        break;
      case ObjectiveVariant::MinTT:
        value = obj.alpha_t * tt_total;
        break;
      case ObjectiveVariant::MinNT:
        value = obj.alpha_n * static_cast<double>(blocks.size()) + obj.alpha_t * tt_total;
        break;
      case ObjectiveVariant::CompatAware:
        value = obj.alpha_n * static_cast<double>(blocks.size()) +
                obj.alpha_t * tt_total + assignment_value(blocks);
        break;
    }
    best = std::min(best, value);
  }

  void run() {
    const int m = static_cast<int>(k.stops.size());
    const int max_trips = cfg.max_trips_for(k, inst);
    std::vector<std::vector<int>> blocks;
    std::vector<int> loads;
    auto rec = [&](auto&& self, int i) -> void {
      if (i == m) {
        if (!blocks.empty()) leaf(blocks);
        return;
      }
      const int students = inst.stop(k.stops[i]).students;
      for (std::size_t g = 0; g < blocks.size(); ++g) {
        if (loads[g] + students > inst.capacity) continue;
        blocks[g].push_back(i);
        loads[g] += students;
        self(self, i + 1);
        loads[g] -= students;
        blocks[g].pop_back();
      }
      if (static_cast<int>(blocks.size()) < max_trips) {
        blocks.emplace_back(1, i);
        loads.push_back(students);
        self(self, i + 1);
        loads.pop_back();
        blocks.pop_back();
      }
    };
    rec(rec, 0);
  }
};

double oracle_best(const School& k, const RoutingObjective& obj, const SolverConfig& cfg,
                   const Instance& inst) {
  Oracle o{k, obj, cfg, inst};
  o.run();
  return o.best;
}

void check_result_feasible(const SchoolRoutingResult& r, const School& k,
                           const SolverConfig& cfg, const Instance& inst) {
  CHECK(!r.trips.empty());
  CHECK(static_cast<int>(r.trips.size()) <= cfg.max_trips_for(k, inst));
  std::vector<std::string> covered;
  for (const Trip& t : r.trips) {
    CHECK(validate_trip(t, cfg, inst).empty());
    CHECK(t.school == k.id);
    for (const auto& s : t.stops) covered.push_back(s);
  }
  std::sort(covered.begin(), covered.end());
  std::vector<std::string> expected = k.stops;
  std::sort(expected.begin(), expected.end());
  CHECK(covered == expected);
}

}  // namespace

TEST_CASE("exhaustive routing matches the reference oracle on small schools") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = generate_instance(2, 8 + static_cast<int>(seed % 3), seed);
    SolverConfig cfg;
    for (const School& k : inst.schools) {
      if (k.stops.size() > 6) continue;
      for (ObjectiveVariant v :
           {ObjectiveVariant::MinN, ObjectiveVariant::MinTT, ObjectiveVariant::MinNT}) {
        RoutingObjective obj;
        switch (v) {
          case ObjectiveVariant::MinN: obj = RoutingObjective::min_n(cfg); break;
          case ObjectiveVariant::MinTT: obj = RoutingObjective::min_tt(cfg); break;
          default: obj = RoutingObjective::min_nt(cfg); break;
        }
        const SchoolRoutingResult r = exact_enumerate(k, obj, cfg, inst);
        CHECK(r.status == SolveStatus::Optimal);
        CHECK(r.objective_value ==
              doctest::Approx(oracle_best(k, obj, cfg, inst)).epsilon(1e-9));
        CHECK(r.objective_value ==
              doctest::Approx(recompute_objective(r, obj, cfg, inst)).epsilon(1e-9));
        check_result_feasible(r, k, cfg, inst);
      }
    }
  }
}

TEST_CASE("exhaustive routing with assignments matches the oracle") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const Instance inst = generate_instance(3, 10, seed);
    SolverConfig cfg;
    for (const School& k : inst.schools) {
      if (k.stops.size() > 5) continue;
      std::vector<CompatTarget> unlimited, capped;
      for (const School& k2 : inst.schools)
        if (k2.id != k.id) {
          unlimited.push_back({k2.id, std::nullopt});
          capped.push_back({k2.id, static_cast<int>(seed % 3)});
        }
      for (auto targets : {unlimited, capped}) {
        const RoutingObjective obj =
            RoutingObjective::compat_aware(cfg, cfg.alpha_c_oa, cfg.alpha_d, targets);
        const SchoolRoutingResult r = exact_enumerate(k, obj, cfg, inst);
        CHECK(r.objective_value ==
              doctest::Approx(oracle_best(k, obj, cfg, inst)).epsilon(1e-9));
        CHECK(r.objective_value ==
              doctest::Approx(recompute_objective(r, obj, cfg, inst)).epsilon(1e-9));
        check_result_feasible(r, k, cfg, inst);
        // caps respected
        std::map<std::string, int> used;
        for (const auto& [trip, target] : r.assignments) ++used[target];
        for (const CompatTarget& t : targets)
          if (t.capacity) CHECK(used[t.school] <= *t.capacity);
      }
    }
  }
}

TEST_CASE("fixture school B prefers short trips normally, the long trip adjusted") {
  const Instance inst = make_slot_contention_fixture();
  SolverConfig cfg;
  const School& B = inst.school("B");
  std::vector<CompatTarget> targets = {{"C", 2}};

  const RoutingObjective plain =
      RoutingObjective::compat_aware(cfg, cfg.alpha_c, cfg.alpha_d, targets);
  const SchoolRoutingResult r1 = exact_enumerate(B, plain, cfg, inst);
  CHECK(r1.trips.size() == 2);  // two short trips, both assigned to C
  CHECK(r1.assignments.size() == 2);
  CHECK(r1.objective_value == doctest::Approx(2401.0));

  const RoutingObjective adjusted =
      RoutingObjective::compat_aware(cfg, cfg.alpha_c_ca, cfg.alpha_d, targets);
  const SchoolRoutingResult r2 = exact_enumerate(B, adjusted, cfg, inst);
  CHECK(r2.trips.size() == 1);  // one long trip
  CHECK(r2.trips[0].travel_time_s == 1800);
  CHECK(r2.assignments.size() == 1);
  CHECK(r2.objective_value == doctest::Approx(12549.0));
}

TEST_CASE("riding time limit prunes long trips") {
  const Instance inst = make_slot_contention_fixture();
  SolverConfig cfg;
  cfg.mrt_s = 1799;  // the merged B trip takes exactly 1800 s
  const School& B = inst.school("B");
  const SchoolRoutingResult r =
      exact_enumerate(B, RoutingObjective::min_n(cfg), cfg, inst);
  CHECK(r.trips.size() == 2);
  for (const Trip& t : r.trips) CHECK(t.travel_time_s <= 1799);
}

TEST_CASE("infeasible budget throws") {
  const Instance inst = make_slot_contention_fixture();
  SolverConfig cfg;
  cfg.aat = 0;
  cfg.mrt_s = 1700;  // B cannot merge (1800 s) but may only run MNT = 1 trip
  const School& B = inst.school("B");
  CHECK_THROWS_AS(exact_enumerate(B, RoutingObjective::min_n(cfg), cfg, inst),
                  InfeasibleError);
}

TEST_CASE("size guard dispatches to the heuristic") {
  const Instance inst = generate_instance(2, 24, 4);
  SolverConfig cfg;
  const School& big = inst.school(inst.schools[0].id).stops.size() >=
                              inst.schools[1].stops.size()
                          ? inst.schools[0]
                          : inst.schools[1];
  REQUIRE(big.stops.size() > 8);
  CHECK_THROWS_AS(exact_enumerate(big, RoutingObjective::min_nt(cfg), cfg, inst),
                  SizeLimitError);
  const SchoolRoutingResult r =
      solve_school(big, RoutingObjective::min_nt(cfg), cfg, inst, 0.5);
  CHECK(r.status == SolveStatus::Heuristic);
  check_result_feasible(r, big, cfg, inst);
}

TEST_CASE("heuristic is feasible, deterministic, and never beats exact") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const Instance inst = generate_instance(2, 10, seed);
    SolverConfig cfg;
    for (const School& k : inst.schools) {
      if (k.stops.size() > 8) continue;
      const RoutingObjective obj = RoutingObjective::min_nt(cfg);
      const SchoolRoutingResult ex = exact_enumerate(k, obj, cfg, inst);
      const SchoolRoutingResult h1 = heuristic_solve(k, obj, cfg, inst, 1.0);
      const SchoolRoutingResult h2 = heuristic_solve(k, obj, cfg, inst, 1.0);
      check_result_feasible(h1, k, cfg, inst);
      CHECK(h1.objective_value >= ex.objective_value - 1e-9);
      // determinism: identical bytes through the whole structure
      REQUIRE(h1.trips.size() == h2.trips.size());
      for (std::size_t i = 0; i < h1.trips.size(); ++i) {
        CHECK(h1.trips[i].id == h2.trips[i].id);
        CHECK(h1.trips[i].stops == h2.trips[i].stops);
        CHECK(h1.trips[i].travel_time_s == h2.trips[i].travel_time_s);
      }
      CHECK(h1.assignments == h2.assignments);
    }
  }
}

TEST_CASE("solver output is canonically ordered") {
  for (std::uint64_t seed = 3; seed <= 8; ++seed) {
    const Instance inst = generate_instance(2, 12, seed);
    SolverConfig cfg;
    for (const School& k : inst.schools) {
      const SchoolRoutingResult r =
          solve_school(k, RoutingObjective::min_nt(cfg), cfg, inst, 1.0);
      for (std::size_t i = 0; i < r.trips.size(); ++i) {
        CHECK(r.trips[i].id == k.id + "#" + std::to_string(i));
        if (i + 1 < r.trips.size())
          CHECK(r.trips[i].travel_time_s >= r.trips[i + 1].travel_time_s);
      }
    }
  }
}
