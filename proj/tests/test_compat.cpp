#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "sbrs/compatibility.hpp"
#include "sbrs/fixtures.hpp"
#include "sbrs/generator.hpp"
#include "sbrs/methods.hpp"

using namespace sbrs;

namespace {

Trip make_trip(const Instance& inst, const std::string& school,
               std::vector<std::string> stops, const std::string& id) {
  Trip t = optimal_stop_order(inst.school(school), stops, inst);
  t.id = id;
  return t;
}

}  // namespace

TEST_CASE("fixture deadheads and compatibility margins") {
  const Instance inst = make_slot_contention_fixture();
  const Trip a = make_trip(inst, "A", {"a1"}, "A#0");
  const Trip b_short1 = make_trip(inst, "B", {"b1"}, "B#0");
  const Trip b_short2 = make_trip(inst, "B", {"b2"}, "B#1");
  const Trip b_long = make_trip(inst, "B", {"b1", "b2"}, "B#0");
  const Trip c1 = make_trip(inst, "C", {"c1"}, "C#0");

  CHECK(deadhead_to_school_s(a, inst.school("C"), inst) == 3729);
  CHECK(deadhead_to_school_s(a, inst.school("B"), inst) == 3867);
  CHECK(deadhead_s(a, c1, inst) == 3729);

  // 46800 + 123 + 3729 <= 54000, but 46800 + 123 + 3867 > 50400
  CHECK(is_compatible(a, c1, inst));
  CHECK_FALSE(is_compatible(a, b_short1, inst));
  CHECK_FALSE(is_compatible(a, b_long, inst));

  // every B trip reaches C's later bell
  CHECK(is_compatible(b_short1, c1, inst));
  CHECK(is_compatible(b_short2, c1, inst));
  CHECK(is_compatible(b_long, c1, inst));

  // never backwards in bell time at zero buffer
  CHECK_FALSE(is_compatible(c1, a, inst));
  CHECK_FALSE(is_compatible(c1, b_short1, inst));
  CHECK_FALSE(is_compatible(b_short1, a, inst));
}

TEST_CASE("school-level compatibility equals trip-level against that school") {
  const Instance inst = generate_instance(4, 28, 17);
  SolverConfig cfg;
  const Solution sol = run_baseline(inst, cfg, ObjectiveVariant::MinNT);
  const auto& trips = sol.plan.trips;
  REQUIRE(trips.size() >= 4);
  for (const Trip& t1 : trips)
    for (const Trip& t2 : trips) {
      if (t1.id == t2.id) continue;
      for (int buffer : {0, 600})
        CHECK(is_school_compatible(t1, inst.school(t2.school), inst, buffer) ==
              is_compatible(t1, t2, inst, buffer));
    }
}

TEST_CASE("same-school trips are never compatible at zero buffer") {
  const Instance inst = generate_instance(3, 24, 5);
  SolverConfig cfg;
  const Solution sol = run_baseline(inst, cfg, ObjectiveVariant::MinN);
  for (const Trip& t1 : sol.plan.trips)
    for (const Trip& t2 : sol.plan.trips) {
      if (t1.id == t2.id || t1.school != t2.school) continue;
      CHECK_FALSE(is_compatible(t1, t2, inst));
    }
}

TEST_CASE("pair set structure") {
  const Instance inst = generate_instance(3, 21, 33);
  SolverConfig cfg;
  const Solution sol = run_baseline(inst, cfg, ObjectiveVariant::MinNT);
  const RoutingPlan& plan = sol.plan;
  const CompatibilityGraph g = build_pair_set(plan, inst);
  const int n = static_cast<int>(plan.trips.size());
  REQUIRE(static_cast<int>(g.trip_ids.size()) == n);
  const int sdt = g.sdt_index(), edt = g.edt_index();

  std::set<std::pair<int, int>> seen;
  for (const auto& e : g.pairs) {
    CHECK(seen.insert(e).second);             // no duplicates
    CHECK(e.first != e.second);               // no self loops
    CHECK(e.first != edt);                    // nothing leaves EDT
    CHECK(e.second != sdt);                   // nothing enters SDT
    CHECK(!(e.first == sdt && e.second == edt));
    CHECK(g.deadhead_s.count(e) == 1);
    CHECK(g.deadhead_s.at(e) >= 0);
  }
  CHECK(std::is_sorted(g.pairs.begin(), g.pairs.end()));
  for (int t = 0; t < n; ++t) {
    CHECK(g.contains(sdt, t));
    CHECK(g.contains(t, edt));
    CHECK_FALSE(g.contains(t, t));
    CHECK(g.deadhead_s.at({sdt, t}) ==
          deadhead_from_depot_s(plan.trips[t], inst));
    CHECK(g.deadhead_s.at({t, edt}) == deadhead_to_depot_s(plan.trips[t], inst));
  }

  // every internal pair matches the pairwise predicate, and vice versa
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      CHECK(g.contains(i, j) == is_compatible(plan.trips[i], plan.trips[j], inst));
    }
}

TEST_CASE("buffer relaxes the pair set monotonically") {
  const Instance inst = generate_instance(4, 32, 11);
  SolverConfig cfg;
  const Solution sol = run_baseline(inst, cfg, ObjectiveVariant::MinNT);
  const CompatibilityGraph tight = build_pair_set(sol.plan, inst, 0);
  const CompatibilityGraph loose = build_pair_set(sol.plan, inst, 900);
  CHECK(loose.pairs.size() >= tight.pairs.size());
  for (const auto& e : tight.pairs) CHECK(loose.contains(e.first, e.second));
}

TEST_CASE("graph json names pseudo-trips") {
  const Instance inst = make_slot_contention_fixture();
  RoutingPlan plan;
  plan.trips = {make_trip(inst, "A", {"a1"}, "A#0")};
  const CompatibilityGraph g = build_pair_set(plan, inst);
  const std::string j = g.to_json();
  CHECK(j.find("SDT") != std::string::npos);
  CHECK(j.find("EDT") != std::string::npos);
  CHECK(j.find("A#0") != std::string::npos);
}
