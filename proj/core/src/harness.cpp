#include "sbrs/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "sbrs/errors.hpp"

namespace sbrs {

std::string ScenarioSpec::name() const {
  return std::to_string(schools) + "x" + std::to_string(stops);
}

std::vector<ScenarioSpec> default_grid() {
  return {{2, 20}, {4, 40}, {6, 60}, {8, 80}, {10, 100}, {15, 150}, {20, 200}, {30, 300}};
}

std::vector<Method> all_methods() {
  return {Method::Exact, Method::MinN,  Method::MinTT, Method::MinNT,
          Method::Alg1,  Method::Alg2, Method::Alg2W};
}

namespace {

std::string fmt_count(double v) {
  if (std::fabs(v - std::llround(v)) < 1e-9) return std::to_string(std::llround(v));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fmt_rt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string fmt_min(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Status cells can carry exception text; keep the CSV comma-free.
std::string csv_safe(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n') c = ';';
  return s;
}

}  // namespace

std::vector<BenchRow> run_bench(const std::vector<ScenarioSpec>& grid,
                                const std::vector<Method>& methods,
                                const std::vector<std::uint64_t>& seeds,
                                const SolverConfig& cfg, const GeneratorParams& gp) {
  std::vector<BenchRow> rows;
  for (const ScenarioSpec& sc : grid) {
    std::vector<BenchRow> scenario_rows;
    for (std::uint64_t seed : seeds) {
      Instance inst;
      std::string gen_error;
      try {
        inst = generate_instance(sc.schools, sc.stops, seed, gp);
      } catch (const std::exception& e) {
        gen_error = e.what();
      }
      std::size_t first = scenario_rows.size();
      for (Method m : methods) {
        BenchRow row;
        row.scenario = sc.name();
        row.schools = sc.schools;
        row.stops = sc.stops;
        row.seed = std::to_string(seed);
        row.method = method_name(m);
        if (!gen_error.empty()) {
          row.status = "error: " + gen_error;
        } else {
          try {
            SolverConfig run_cfg = cfg;
            run_cfg.seed = seed;
            const Solution sol = run_method(inst, run_cfg, m);
            row.status = "ok";
            row.nob = sol.metrics.nob;
            row.not_trips = sol.metrics.not_trips;
            row.tvt_s = sol.metrics.tvt_s;
            row.tvt_min = minutes_half_up(sol.metrics.tvt_s);
            row.rt_s = sol.metrics.runtime_s;
          } catch (const SizeLimitError&) {
            row.status = "skipped";
          } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
          }
        }
        scenario_rows.push_back(std::move(row));
      }
      double best_nob = std::numeric_limits<double>::infinity();
      for (std::size_t i = first; i < scenario_rows.size(); ++i)
        if (scenario_rows[i].status == "ok") best_nob = std::min(best_nob, scenario_rows[i].nob);
      for (std::size_t i = first; i < scenario_rows.size(); ++i)
        if (scenario_rows[i].status == "ok" && scenario_rows[i].nob == best_nob)
          scenario_rows[i].best = true;
    }
    for (Method m : methods) {
      std::vector<const BenchRow*> ok;
      for (const BenchRow& r : scenario_rows)
        if (r.method == method_name(m) && r.status == "ok") ok.push_back(&r);
      if (ok.empty()) continue;
      auto summary = [&](const std::string& tag) {
        BenchRow s;
        s.scenario = sc.name();
        s.schools = sc.schools;
        s.stops = sc.stops;
        s.seed = tag;
        s.method = method_name(m);
        s.status = "ok";
        return s;
      };
      BenchRow mean = summary("mean"), lo = summary("min"), hi = summary("max");
      lo.nob = std::numeric_limits<double>::infinity();
      lo.tvt_s = std::numeric_limits<long long>::max();
      lo.not_trips = std::numeric_limits<double>::infinity();
      lo.rt_s = std::numeric_limits<double>::infinity();
      for (const BenchRow* r : ok) {
        mean.nob += r->nob;
        mean.not_trips += r->not_trips;
        mean.tvt_s += r->tvt_s;
        mean.rt_s += r->rt_s;
        lo.nob = std::min(lo.nob, r->nob);
        lo.not_trips = std::min(lo.not_trips, r->not_trips);
        lo.tvt_s = std::min(lo.tvt_s, r->tvt_s);
        lo.rt_s = std::min(lo.rt_s, r->rt_s);
        hi.nob = std::max(hi.nob, r->nob);
        hi.not_trips = std::max(hi.not_trips, r->not_trips);
        hi.tvt_s = std::max(hi.tvt_s, r->tvt_s);
        hi.rt_s = std::max(hi.rt_s, r->rt_s);
      }
      const double n = static_cast<double>(ok.size());
      mean.nob /= n;
      mean.not_trips /= n;
      mean.tvt_s = std::llround(static_cast<double>(mean.tvt_s) / n);
      mean.rt_s /= n;
      for (BenchRow* s : {&mean, &lo, &hi}) {
        s->tvt_min = minutes_half_up(s->tvt_s);
        scenario_rows.push_back(*s);
      }
    }
    for (BenchRow& r : scenario_rows) rows.push_back(std::move(r));
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "scenario,schools,stops,seed,method,status,nob,not,tvt_s,tvt_min,rt_s,best\n";
  for (const BenchRow& r : rows) {
    out << r.scenario << ',' << r.schools << ',' << r.stops << ',' << r.seed << ','
        << r.method << ',' << csv_safe(r.status) << ',';
    if (r.status == "ok")
      out << fmt_count(r.nob) << ',' << fmt_count(r.not_trips) << ',' << r.tvt_s << ','
          << r.tvt_min << ',' << fmt_rt(r.rt_s) << ',';
    else
      out << ",,,,,";
    out << (r.best ? "1" : "0") << '\n';
  }
  return out.str();
}

std::vector<double> default_sweep_values() {
  return {1,     10,    100,   1000,  5000,  10000, 20000,
          30000, 40000, 50000, 60000, 75000, 90000};
}

std::vector<SweepRow> run_sweep(const Instance& inst, const std::vector<double>& values,
                                const SolverConfig& cfg) {
  std::vector<SweepRow> rows;
  for (double value : values) {
    SolverConfig run_cfg = cfg;
    run_cfg.alpha_n = 1e5;
    run_cfg.alpha_t = 1.0;
    run_cfg.alpha_d = 0.5;
    run_cfg.alpha_c_oa = value;
    const Solution sol = run_algorithm1(inst, run_cfg);
    SweepRow row;
    row.alpha_c_oa = value;
    row.nob = sol.metrics.nob;
    row.not_trips = sol.metrics.not_trips;
    row.tvt_s = sol.metrics.tvt_s;
    row.tvt_min = minutes_half_up(sol.metrics.tvt_s);
    row.rt_s = sol.metrics.runtime_s;
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "alpha_c_oa,nob,not,tvt_s,tvt_min,rt_s\n";
  for (const SweepRow& r : rows)
    out << fmt_count(r.alpha_c_oa) << ',' << r.nob << ',' << r.not_trips << ','
        << r.tvt_s << ',' << r.tvt_min << ',' << fmt_rt(r.rt_s) << '\n';
  return out.str();
}

std::vector<GridCombo> default_grid2_combos() {
  return {{"A0TL30", 0, 30, 0},        {"A1TL30", 1, 30, 0},
          {"A2TL30", 2, 30, 0},        {"A1TL5", 1, 5, 0},
          {"A1TL60", 1, 60, 0},        {"A1TL5MRT", 1, 5, 2400},
          {"A1TL30MRT", 1, 30, 2400},  {"A2TL30MRT", 2, 30, 2400}};
}

std::vector<Grid2Row> run_grid2(const Instance& inst, const std::vector<GridCombo>& combos,
                                const SolverConfig& cfg) {
  std::vector<Grid2Row> rows;
  for (const GridCombo& c : combos) {
    SolverConfig run_cfg = cfg;
    run_cfg.aat = c.aat;
    run_cfg.time_limit_s = c.time_limit_s;
    run_cfg.mrt_s = c.mrt_s;
    Grid2Row row;
    row.combo = c.name;
    row.aat = c.aat;
    row.time_limit_s = c.time_limit_s;
    row.mrt_s = c.mrt_s;
    try {
      const Solution sol = run_algorithm2(inst, run_cfg, true);
      row.status = "ok";
      row.nob = sol.metrics.nob;
      row.not_trips = sol.metrics.not_trips;
      long long total_tt = 0, max_tt = 0;
      for (const Trip& t : sol.plan.trips) {
        total_tt += t.travel_time_s;
        max_tt = std::max(max_tt, static_cast<long long>(t.travel_time_s));
      }
      row.avg_tt_min = sol.plan.trips.empty()
                           ? 0.0
                           : static_cast<double>(total_tt) / (60.0 * sol.plan.trips.size());
      row.max_tt_min = static_cast<double>(max_tt) / 60.0;
      row.tvt_s = sol.metrics.tvt_s;
      row.rt_s = sol.metrics.runtime_s;
    } catch (const InfeasibleError& e) {
      row.status = std::string("infeasible: ") + e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

std::string grid2_csv(const std::vector<Grid2Row>& rows) {
  std::ostringstream out;
  out << "combo,aat,time_limit_s,mrt_s,status,nob,not,avg_tt_min,max_tt_min,tvt_s,rt_s\n";
  for (const Grid2Row& r : rows) {
    out << r.combo << ',' << r.aat << ',' << fmt_count(r.time_limit_s) << ',' << r.mrt_s
        << ',' << csv_safe(r.status) << ',';
    if (r.status == "ok")
      out << r.nob << ',' << r.not_trips << ',' << fmt_min(r.avg_tt_min) << ','
          << fmt_min(r.max_tt_min) << ',' << r.tvt_s << ',' << fmt_rt(r.rt_s);
    else
      out << ",,,,,";
    out << '\n';
  }
  return out.str();
}

std::string solve_row_csv(const std::string& scenario, const Solution& sol) {
  std::ostringstream out;
  out << "scenario,method,nob,not,tvt_s,tvt_min,rt_s\n";
  out << scenario << ',' << sol.metrics.method << ',' << sol.metrics.nob << ','
      << sol.metrics.not_trips << ',' << sol.metrics.tvt_s << ','
      << minutes_half_up(sol.metrics.tvt_s) << ',' << fmt_rt(sol.metrics.runtime_s)
      << '\n';
  return out.str();
}

}  // namespace sbrs
