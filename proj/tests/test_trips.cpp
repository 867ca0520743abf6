#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <climits>

#include "sbrs/fixtures.hpp"
#include "sbrs/generator.hpp"
#include "sbrs/trips.hpp"

using namespace sbrs;

TEST_CASE("boarding and alighting regressions round half-up") {
  // pickup = 29 + 1.9 s, dropoff = 19 + 2.6 s, service = 19 + 4.5 s
  CHECK(pickup_time_s(0) == 29);
  CHECK(pickup_time_s(1) == 31);    // 30.9
  CHECK(pickup_time_s(5) == 39);    // 38.5 rounds up
  CHECK(pickup_time_s(10) == 48);   // exactly 48.0
  CHECK(dropoff_time_s(0) == 19);
  CHECK(dropoff_time_s(1) == 22);   // 21.6
  CHECK(dropoff_time_s(5) == 32);   // exactly 32.0
  CHECK(stop_service_time_s(0) == 19);
  CHECK(stop_service_time_s(1) == 24);   // 23.5 rounds up
  CHECK(stop_service_time_s(2) == 28);   // exactly 28.0
  CHECK(stop_service_time_s(3) == 33);   // 32.5 rounds up
  CHECK(stop_service_time_s(10) == 64);  // exactly 64.0
  CHECK(stop_service_time_s(40) == 199); // exactly 199.0
}

TEST_CASE("trip travel time = 29 s intercept + legs + per-stop service") {
  const Instance inst = make_slot_contention_fixture();
  const School& B = inst.school("B");

  Trip one;
  one.school = "B";
  one.stops = {"b1"};
  CHECK(trip_travel_time_s(one, inst) == 29 + 209 + 64);  // 302

  Trip two;
  two.school = "B";
  two.stops = {"b1", "b2"};
  CHECK(trip_travel_time_s(two, inst) == 29 + 209 + 64 + 1434 + 64);  // 1800

  Trip reversed;
  reversed.school = "B";
  reversed.stops = {"b2", "b1"};
  CHECK(trip_travel_time_s(reversed, inst) == 29 + 1225 + 64 + 1434 + 64);  // 2816

  const Trip best = optimal_stop_order(B, {"b2", "b1"}, inst);
  CHECK(best.stops == std::vector<std::string>{"b1", "b2"});
  CHECK(best.travel_time_s == 1800);
  CHECK(best.load == 20);
  CHECK(best.school == "B");
}

TEST_CASE("validate_trip flags each constraint separately") {
  const Instance inst = make_slot_contention_fixture();
  SolverConfig cfg;

  Trip t;
  t.id = "B#0";
  t.school = "B";
  t.stops = {"b1", "b2"};
  t.load = 20;
  t.travel_time_s = 1800;
  CHECK(validate_trip(t, cfg, inst).empty());

  auto has = [](const std::vector<Violation>& v, const std::string& c) {
    return std::any_of(v.begin(), v.end(),
                       [&](const Violation& x) { return x.constraint == c; });
  };

  SUBCASE("empty trip") {
    t.stops.clear();
    CHECK(has(validate_trip(t, cfg, inst), "stops"));
  }
  SUBCASE("foreign stop") {
    t.stops = {"b1", "c1"};
    CHECK(has(validate_trip(t, cfg, inst), "stop_owner"));
  }
  SUBCASE("repeated stop") {
    t.stops = {"b1", "b1"};
    CHECK(has(validate_trip(t, cfg, inst), "stop_order"));
  }
  SUBCASE("recorded load drifts") {
    t.load = 19;
    CHECK(has(validate_trip(t, cfg, inst), "load"));
  }
  SUBCASE("recorded travel time drifts") {
    t.travel_time_s = 1799;
    CHECK(has(validate_trip(t, cfg, inst), "travel_time"));
  }
  SUBCASE("riding time limit") {
    cfg.mrt_s = 1799;
    CHECK(has(validate_trip(t, cfg, inst), "mrt"));
    cfg.mrt_s = 0;  // disabled
    CHECK(validate_trip(t, cfg, inst).empty());
  }
  SUBCASE("capacity") {
    Trip c;
    c.id = "C#0";
    c.school = "C";
    c.stops = {"c1", "c2"};  // 80 students > 66
    c.load = 80;
    c.travel_time_s = trip_travel_time_s(c, inst);
    CHECK(has(validate_trip(c, cfg, inst), "capacity"));
  }
}

TEST_CASE("stop ordering matches brute force on small subsets") {
  const Instance inst = generate_instance(2, 12, 21);
  for (const School& k : inst.schools) {
    const int m = std::min<int>(6, static_cast<int>(k.stops.size()));
    std::vector<std::string> subset(k.stops.begin(), k.stops.begin() + m);

    // brute force over every visiting order
    std::vector<int> idx(subset.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    int best_legs = INT_MAX;
    std::sort(idx.begin(), idx.end());
    do {
      int legs = 0;
      Node prev = k.pos;
      for (int i : idx) {
        const Stop& s = inst.stop(subset[i]);
        legs += leg_duration(prev, s.pos, inst.speed_mph);
        prev = s.pos;
      }
      best_legs = std::min(best_legs, legs);
    } while (std::next_permutation(idx.begin(), idx.end()));

    const Trip exact = optimal_stop_order(k, subset, inst, 8);
    int exact_legs = 0;
    Node prev = k.pos;
    for (const auto& sid : exact.stops) {
      exact_legs += leg_duration(prev, inst.stop(sid).pos, inst.speed_mph);
      prev = inst.stop(sid).pos;
    }
    CHECK(exact_legs == best_legs);

    // the heuristic path (threshold 0) is feasible and no better than exact
    const Trip heur = optimal_stop_order(k, subset, inst, 0);
    CHECK(heur.stops.size() == subset.size());
    int heur_legs = 0;
    prev = k.pos;
    for (const auto& sid : heur.stops) {
      heur_legs += leg_duration(prev, inst.stop(sid).pos, inst.speed_mph);
      prev = inst.stop(sid).pos;
    }
    CHECK(heur_legs >= best_legs);
  }
}

TEST_CASE("plan total travel time sums trips") {
  const Instance inst = make_slot_contention_fixture();
  RoutingPlan plan;
  Trip a;
  a.school = "B";
  a.stops = {"b1"};
  a.travel_time_s = trip_travel_time_s(a, inst);
  Trip b;
  b.school = "B";
  b.stops = {"b2"};
  b.travel_time_s = trip_travel_time_s(b, inst);
  plan.trips = {a, b};
  CHECK(plan_total_travel_time_s(plan) == 302 + 1318);
}

TEST_CASE("trip json carries all fields") {
  Trip t;
  t.id = "B#0";
  t.school = "B";
  t.stops = {"b1", "b2"};
  t.load = 20;
  t.travel_time_s = 1800;
  const std::string j = trip_to_json(t);
  CHECK(j.find("\"id\"") != std::string::npos);
  CHECK(j.find("\"B#0\"") != std::string::npos);
  CHECK(j.find("\"b2\"") != std::string::npos);
  CHECK(j.find("1800") != std::string::npos);
}
