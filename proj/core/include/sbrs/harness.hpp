#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sbrs/generator.hpp"
#include "sbrs/methods.hpp"

namespace sbrs {

struct ScenarioSpec {
  int schools = 0;
  int stops = 0;
  std::string name() const;  // "2x20"
};

// The benchmark size grid: (2,20) (4,40) (6,60) (8,80) (10,100) (15,150)
// (20,200) (30,300).
std::vector<ScenarioSpec> default_grid();

// Column order of the method comparison: exact, minn, mintt, minnt, alg1,
// alg2, alg2w.
std::vector<Method> all_methods();

// One comparison-table cell. For per-seed rows `seed` is the number; summary
// rows use "mean"/"min"/"max" with fractional nob/not/tvt.
struct BenchRow {
  std::string scenario;
  int schools = 0;
  int stops = 0;
  std::string seed;
  std::string method;
  std::string status;      // "ok", "skipped", or "error: ..."
  double nob = 0;
  double not_trips = 0;
  long long tvt_s = 0;
  long long tvt_min = 0;   // half-up minutes
  double rt_s = 0;
  bool best = false;       // per-(scenario, seed) lowest bus count
};

// Generates each (scenario, seed) instance, runs every method, marks the
// per-cell best bus count, and appends mean/min/max summary rows per
// (scenario, method). exact is skipped (not an error) beyond its size limits.
std::vector<BenchRow> run_bench(const std::vector<ScenarioSpec>& grid,
                                const std::vector<Method>& methods,
                                const std::vector<std::uint64_t>& seeds,
                                const SolverConfig& cfg, const GeneratorParams& gp);
std::string bench_csv(const std::vector<BenchRow>& rows);

// Assignment-weight sensitivity: objective adjustment re-run per weight value
// with alpha_n = 1e5, alpha_t = 1, alpha_d = 0.5 held fixed.
struct SweepRow {
  double alpha_c_oa = 0;
  int nob = 0;
  int not_trips = 0;
  long long tvt_s = 0;
  long long tvt_min = 0;
  double rt_s = 0;
};
std::vector<double> default_sweep_values();  // 1, 10, ..., 9e4 (13 values)
std::vector<SweepRow> run_sweep(const Instance& inst, const std::vector<double>& values,
                                const SolverConfig& cfg);
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Operational-constraint study: named (AAT, time limit, MRT) combinations,
// run with the weight-adjusted sequential method.
struct GridCombo {
  std::string name;   // "A1TL30MRT"
  int aat = 1;
  double time_limit_s = 30;
  int mrt_s = 0;      // 0 = MRT off
};
std::vector<GridCombo> default_grid2_combos();  // MRT rows use 2400 s

struct Grid2Row {
  std::string combo;
  int aat = 0;
  double time_limit_s = 0;
  int mrt_s = 0;
  std::string status;     // "ok" or "infeasible: ..." (tight MRT + small budget)
  int nob = 0;
  int not_trips = 0;
  double avg_tt_min = 0;  // mean trip travel time, minutes
  double max_tt_min = 0;  // longest trip, minutes
  long long tvt_s = 0;
  double rt_s = 0;
};
std::vector<Grid2Row> run_grid2(const Instance& inst, const std::vector<GridCombo>& combos,
                                const SolverConfig& cfg);
std::string grid2_csv(const std::vector<Grid2Row>& rows);

// One-row CSV (with header) describing a finished solve.
std::string solve_row_csv(const std::string& scenario, const Solution& sol);

}  // namespace sbrs
