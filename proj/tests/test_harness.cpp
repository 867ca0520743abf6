#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "sbrs/fixtures.hpp"
#include "sbrs/harness.hpp"

using namespace sbrs;

namespace {

int line_count(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("minutes round half-up") {
  CHECK(minutes_half_up(0) == 0);
  CHECK(minutes_half_up(29) == 0);
  CHECK(minutes_half_up(30) == 1);
  CHECK(minutes_half_up(89) == 1);
  CHECK(minutes_half_up(90) == 2);
  CHECK(minutes_half_up(5400) == 90);
}

TEST_CASE("default grids and method order") {
  const auto grid = default_grid();
  REQUIRE(grid.size() == 8);
  CHECK(grid.front().name() == "2x20");
  CHECK(grid.back().name() == "30x300");
  for (const ScenarioSpec& s : grid) CHECK(s.stops == 10 * s.schools);

  const auto methods = all_methods();
  REQUIRE(methods.size() == 7);
  CHECK(methods.front() == Method::Exact);
  CHECK(method_name(methods[1]) == "minn");
  CHECK(methods.back() == Method::Alg2W);

  CHECK(default_sweep_values().size() == 13);
  CHECK(default_grid2_combos().size() == 8);
}

TEST_CASE("bench emits per-seed rows, summaries and best flags") {
  SolverConfig cfg;
  GeneratorParams gp;
  const std::vector<ScenarioSpec> grid = {{2, 12}};
  const std::vector<Method> methods = {Method::MinN, Method::Alg2W};
  const auto rows = run_bench(grid, methods, {1, 2}, cfg, gp);
  // 2 seeds x 2 methods + 2 methods x {mean,min,max}
  REQUIRE(rows.size() == 10);
  int best_flags = 0, summaries = 0;
  for (const BenchRow& r : rows) {
    CHECK(r.scenario == "2x12");
    CHECK(r.status == "ok");
    if (r.best) ++best_flags;
    if (r.seed == "mean" || r.seed == "min" || r.seed == "max") ++summaries;
  }
  CHECK(summaries == 6);
  CHECK(best_flags >= 2);  // at least one winner per seed

  const std::string csv = bench_csv(rows);
  CHECK(csv.rfind("scenario,schools,stops,seed,method,status,nob,not,tvt_s,tvt_min,rt_s,best\n",
                  0) == 0);
  CHECK(line_count(csv) == 11);
}

TEST_CASE("bench marks the undersized exact method as skipped") {
  SolverConfig cfg;
  GeneratorParams gp;
  const auto rows = run_bench({{2, 20}}, {Method::Exact}, {1, 2}, cfg, gp);
  REQUIRE(rows.size() == 2);  // skipped rows produce no summaries
  for (const BenchRow& r : rows) {
    CHECK(r.status == "skipped");
    CHECK_FALSE(r.best);
  }
  const std::string csv = bench_csv(rows);
  CHECK(csv.find("skipped,,,,,,0") != std::string::npos);
}

TEST_CASE("sweep echoes the weight ladder") {
  const Instance inst = make_slot_contention_fixture();
  SolverConfig cfg;
  const auto rows = run_sweep(inst, {1000, 50000, 90000}, cfg);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].alpha_c_oa == 1000);
  CHECK(rows[2].alpha_c_oa == 90000);
  for (const SweepRow& r : rows) {
    CHECK(r.nob >= 1);
    CHECK(r.not_trips >= 3);
    CHECK(r.tvt_min == minutes_half_up(r.tvt_s));
  }
  const std::string csv = sweep_csv(rows);
  CHECK(csv.rfind("alpha_c_oa,nob,not,tvt_s,tvt_min,rt_s\n", 0) == 0);
  CHECK(line_count(csv) == 4);
}

TEST_CASE("the constraint study runs all combos on the fixture") {
  const Instance inst = make_slot_contention_fixture();
  SolverConfig cfg;
  const auto rows = run_grid2(inst, default_grid2_combos(), cfg);
  REQUIRE(rows.size() == 8);
  for (const Grid2Row& r : rows) {
    CHECK(r.status == "ok");
    CHECK(r.nob >= 2);
    if (r.mrt_s > 0) CHECK(r.max_tt_min <= r.mrt_s / 60.0);
  }
  const std::string csv = grid2_csv(rows);
  CHECK(csv.rfind("combo,aat,time_limit_s,mrt_s,status,nob,not,avg_tt_min,max_tt_min,tvt_s,rt_s\n",
                  0) == 0);
  CHECK(line_count(csv) == 9);
}

TEST_CASE("single-solve csv row") {
  const Instance inst = make_slot_contention_fixture();
  SolverConfig cfg;
  const Solution sol = run_method(inst, cfg, Method::Alg2W);
  const std::string csv = solve_row_csv("fixture", sol);
  CHECK(csv.rfind("scenario,method,nob,not,tvt_s,tvt_min,rt_s\n", 0) == 0);
  CHECK(csv.find("fixture,alg2w,2,4,") != std::string::npos);
  CHECK(line_count(csv) == 2);
}
