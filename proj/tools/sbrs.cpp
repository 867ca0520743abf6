// Command line front end: instance generation, solving, benchmarking,
// parameter sweeps and solution verification.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sbrs/compatibility.hpp"
#include "sbrs/errors.hpp"
#include "sbrs/fixtures.hpp"
#include "sbrs/generator.hpp"
#include "sbrs/harness.hpp"
#include "sbrs/instance.hpp"
#include "sbrs/methods.hpp"

namespace {

struct SharedOpts {
  std::uint64_t seed = 0;
  int capacity = 66;
  double speed_mph = 20.0;
  int mrt_min = 90;          // 0 disables
  std::string aat = "mnt";   // "mnt" or a non-negative integer
  int buffer_s = 0;
  double time_limit_s = 30;
  double alpha_b = 1e5, alpha_n = 1e5, alpha_c = 1e5;
  double alpha_t = 1.0, alpha_d = 0.5;
  double alpha_c_oa = 5e4, alpha_c_ca = 9e4, alpha_d_oa = -1.0;
};

void add_solver_flags(CLI::App* cmd, SharedOpts& o) {
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--capacity", o.capacity, "Bus seat capacity")->check(CLI::PositiveNumber);
  cmd->add_option("--speed-mph", o.speed_mph, "Bus speed, mph")->check(CLI::PositiveNumber);
  cmd->add_option("--mrt-min", o.mrt_min, "Max riding time per trip, minutes (0 = off)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--aat", o.aat, "Additional allowed trips per school: integer or 'mnt'");
  cmd->add_option("--buffer-s", o.buffer_s, "Compatibility slack, seconds");
  cmd->add_option("--time-limit-s", o.time_limit_s, "Per-school heuristic budget, seconds");
  cmd->add_option("--alpha-b", o.alpha_b, "Weight per bus");
  cmd->add_option("--alpha-n", o.alpha_n, "Weight per trip");
  cmd->add_option("--alpha-c", o.alpha_c, "Weight per realized assignment");
  cmd->add_option("--alpha-t", o.alpha_t, "Weight per travel-time second");
  cmd->add_option("--alpha-d", o.alpha_d, "Weight per deadhead second");
  cmd->add_option("--alpha-c-oa", o.alpha_c_oa, "Assignment weight, objective adjustment");
  cmd->add_option("--alpha-c-ca", o.alpha_c_ca, "Assignment weight, weight-adjusted variant");
  cmd->add_option("--alpha-d-oa", o.alpha_d_oa,
                  "Deadhead weight, objective adjustment (<0: use --alpha-d)");
}

sbrs::SolverConfig make_config(const SharedOpts& o) {
  sbrs::SolverConfig cfg;
  cfg.alpha_b = o.alpha_b;
  cfg.alpha_n = o.alpha_n;
  cfg.alpha_c = o.alpha_c;
  cfg.alpha_t = o.alpha_t;
  cfg.alpha_d = o.alpha_d;
  cfg.alpha_c_oa = o.alpha_c_oa;
  cfg.alpha_c_ca = o.alpha_c_ca;
  cfg.alpha_d_oa = o.alpha_d_oa;
  cfg.mrt_s = o.mrt_min * 60;
  if (o.aat != "mnt") {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(o.aat, &pos);
      if (pos != o.aat.size() || v < 0) throw std::invalid_argument(o.aat);
      cfg.aat = v;
    } catch (const std::exception&) {
      throw sbrs::ParseError("--aat expects 'mnt' or a non-negative integer, got '" +
                             o.aat + "'");
    }
  }
  cfg.buffer_s = o.buffer_s;
  cfg.time_limit_s = o.time_limit_s;
  cfg.seed = o.seed;
  return cfg;
}

sbrs::GeneratorParams make_gen_params(const SharedOpts& o) {
  sbrs::GeneratorParams gp;
  gp.capacity = o.capacity;
  gp.speed_mph = o.speed_mph;
  return gp;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sbrs::ParseError("cannot open '" + path + "' for writing");
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sbrs::ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(s);
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// Instance selection shared by solve/sweep/grid2: a file, the built-in
// regression fixture, or a generated instance.
struct InstanceSource {
  std::string in_path;
  bool fixture = false;
  int schools = 0;
  int stops = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--in", in_path, "Instance JSON file");
    cmd->add_flag("--fixture", fixture, "Use the built-in three-school fixture");
    cmd->add_option("--schools", schools, "Generate: number of schools");
    cmd->add_option("--stops", stops, "Generate: number of stops");
  }

  sbrs::Instance resolve(const SharedOpts& o, std::string* label) const {
    if (!in_path.empty()) {
      if (label) {
        const std::size_t slash = in_path.find_last_of('/');
        *label = slash == std::string::npos ? in_path : in_path.substr(slash + 1);
      }
      return sbrs::load_instance(in_path);
    }
    if (fixture) {
      if (label) *label = "fixture";
      return sbrs::make_slot_contention_fixture();
    }
    if (schools > 0 && stops > 0) {
      if (label) *label = std::to_string(schools) + "x" + std::to_string(stops);
      return sbrs::generate_instance(schools, stops, o.seed, make_gen_params(o));
    }
    throw sbrs::ParseError("no instance: pass --in, --fixture, or --schools/--stops");
  }
};

int run_verify(const std::string& instance_path, const std::string& solution_path,
               const sbrs::SolverConfig& cfg) {
  const sbrs::Instance inst = sbrs::load_instance(instance_path);
  const nlohmann::json j = nlohmann::json::parse(read_text(solution_path));

  sbrs::RoutingPlan plan;
  for (const auto& jt : j.at("trips")) {
    sbrs::Trip t;
    t.id = jt.at("id").get<std::string>();
    t.school = jt.at("school").get<std::string>();
    for (const auto& s : jt.at("stops")) t.stops.push_back(s.get<std::string>());
    t.load = jt.at("load").get<int>();
    t.travel_time_s = jt.at("travel_time_s").get<int>();
    plan.trips.push_back(std::move(t));
  }

  sbrs::Schedule sched;
  for (const auto& jb : j.at("schedule").at("blocks")) {
    sbrs::BusBlock b;
    for (const auto& s : jb.at("trips")) b.trips.push_back(s.get<std::string>());
    b.pull_out_s = jb.at("pull_out_s").get<int>();
    b.pull_in_s = jb.at("pull_in_s").get<int>();
    for (const auto& jl : jb.at("links"))
      b.links.push_back({jl.at("from").get<std::string>(), jl.at("to").get<std::string>(),
                         jl.at("dd_s").get<int>()});
    sched.blocks.push_back(std::move(b));
  }
  sched.nob = j.at("schedule").at("nob").get<int>();
  sched.total_deadhead_s = j.at("schedule").at("total_deadhead_s").get<long long>();

  std::vector<sbrs::Violation> violations;
  std::set<std::string> seen;
  for (const sbrs::Trip& t : plan.trips) {
    if (!seen.insert(t.id).second)
      violations.push_back({"trip_id", "duplicate trip id '" + t.id + "'"});
    for (sbrs::Violation v : sbrs::validate_trip(t, cfg, inst)) {
      v.detail = "trip '" + t.id + "': " + v.detail;
      violations.push_back(std::move(v));
    }
  }

  const sbrs::CompatibilityGraph graph = sbrs::build_pair_set(plan, inst, cfg.buffer_s);
  for (sbrs::Violation v : sbrs::verify_schedule(sched, plan, graph))
    violations.push_back(std::move(v));

  if (j.contains("assignments")) {
    for (const auto& [trip_id, target] : j.at("assignments").items()) {
      const std::string school_id = target.get<std::string>();
      const sbrs::Trip* trip = nullptr;
      for (const sbrs::Trip& t : plan.trips)
        if (t.id == trip_id) trip = &t;
      if (!trip) {
        violations.push_back({"assignment", "unknown trip '" + trip_id + "'"});
        continue;
      }
      if (!inst.has_school(school_id)) {
        violations.push_back({"assignment", "unknown school '" + school_id + "'"});
        continue;
      }
      if (!sbrs::is_school_compatible(*trip, inst.school(school_id), inst, cfg.buffer_s))
        violations.push_back({"assignment", "trip '" + trip_id +
                                                "' is not compatible with school '" +
                                                school_id + "'"});
    }
  }

  if (violations.empty()) {
    std::cout << "OK: " << plan.trips.size() << " trips, " << sched.nob
              << " buses, no violations\n";
    return 0;
  }
  for (const sbrs::Violation& v : violations)
    std::cout << v.constraint << ": " << v.detail << "\n";
  std::cout << violations.size() << " violation(s)\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-school afternoon bus routing and scheduling toolkit"};
  app.require_subcommand(1);

  SharedOpts opts;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  int gen_schools = 0, gen_stops = 0;
  bool gen_fixture = false;
  std::string gen_out = "-";
  gen->add_option("--schools", gen_schools, "Number of schools")->check(CLI::PositiveNumber);
  gen->add_option("--stops", gen_stops, "Number of stops")->check(CLI::PositiveNumber);
  gen->add_flag("--fixture", gen_fixture, "Emit the built-in three-school fixture");
  gen->add_option("--seed", opts.seed, "Random seed");
  gen->add_option("--capacity", opts.capacity, "Bus seat capacity")
      ->check(CLI::PositiveNumber);
  gen->add_option("--speed-mph", opts.speed_mph, "Bus speed, mph")
      ->check(CLI::PositiveNumber);
  gen->add_option("--out", gen_out, "Output file ('-' = stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve one instance");
  InstanceSource solve_src;
  std::string solve_method = "alg2w", solve_out = "-", solve_label;
  bool solve_csv = false;
  solve_src.attach(solve);
  solve->add_option("--method", solve_method,
                    "exact|minn|mintt|minnt|alg1|alg2|alg2w");
  solve->add_option("--out", solve_out, "Solution JSON file ('-' = stdout)");
  solve->add_flag("--csv", solve_csv, "Print a one-row summary CSV to stdout");
  solve->add_option("--label", solve_label, "Scenario label for the CSV row");
  add_solver_flags(solve, opts);

  // bench
  auto* bench = app.add_subcommand("bench", "Run the method comparison grid");
  std::string bench_grid, bench_methods, bench_seeds = "1,2,3,4,5", bench_out = "-";
  bench->add_option("--grid", bench_grid, "Scenarios, e.g. '2x20,4x40' (default: full grid)");
  bench->add_option("--methods", bench_methods,
                    "Comma-separated methods (default: all)");
  bench->add_option("--seeds", bench_seeds, "Comma-separated seeds");
  bench->add_option("--out", bench_out, "CSV output ('-' = stdout)");
  add_solver_flags(bench, opts);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Assignment-weight sensitivity sweep");
  InstanceSource sweep_src;
  std::string sweep_values, sweep_out = "-";
  sweep_src.attach(sweep);
  sweep->add_option("--values", sweep_values, "Comma-separated weights (default ladder)");
  sweep->add_option("--out", sweep_out, "CSV output ('-' = stdout)");
  add_solver_flags(sweep, opts);

  // grid2
  auto* grid2 = app.add_subcommand("grid2", "Operational-constraint study");
  InstanceSource grid2_src;
  std::string grid2_out = "-";
  grid2_src.attach(grid2);
  grid2->add_option("--out", grid2_out, "CSV output ('-' = stdout)");
  add_solver_flags(grid2, opts);

  // verify
  auto* verify = app.add_subcommand("verify", "Check a solution against an instance");
  std::string verify_in, verify_solution;
  verify->add_option("--in", verify_in, "Instance JSON file")->required();
  verify->add_option("--solution", verify_solution, "Solution JSON file")->required();
  add_solver_flags(verify, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (gen->parsed()) {
      if (!gen_fixture && (gen_schools <= 0 || gen_stops <= 0))
        throw sbrs::ParseError("gen needs --schools and --stops (or --fixture)");
      const sbrs::Instance inst =
          gen_fixture ? sbrs::make_slot_contention_fixture()
                      : sbrs::generate_instance(gen_schools, gen_stops, opts.seed,
                                                make_gen_params(opts));
      write_text(gen_out, sbrs::instance_to_json(inst));
      return 0;
    }
    if (solve->parsed()) {
      const sbrs::SolverConfig cfg = make_config(opts);
      std::string label;
      const sbrs::Instance inst = solve_src.resolve(opts, &label);
      if (!solve_label.empty()) label = solve_label;
      const sbrs::Solution sol =
          sbrs::run_method(inst, cfg, sbrs::parse_method(solve_method));
      if (solve_csv) {
        std::cout << sbrs::solve_row_csv(label, sol);
        if (solve_out != "-") write_text(solve_out, sbrs::solution_to_json(sol));
      } else {
        write_text(solve_out, sbrs::solution_to_json(sol));
      }
      return 0;
    }
    if (bench->parsed()) {
      const sbrs::SolverConfig cfg = make_config(opts);
      std::vector<sbrs::ScenarioSpec> grid;
      if (bench_grid.empty()) {
        grid = sbrs::default_grid();
      } else {
        for (const std::string& s : split_list(bench_grid)) {
          const std::size_t x = s.find('x');
          if (x == std::string::npos)
            throw sbrs::ParseError("bad scenario '" + s + "' (expected SxP, e.g. 4x40)");
          grid.push_back({std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))});
        }
      }
      std::vector<sbrs::Method> methods;
      if (bench_methods.empty()) {
        methods = sbrs::all_methods();
      } else {
        for (const std::string& s : split_list(bench_methods))
          methods.push_back(sbrs::parse_method(s));
      }
      std::vector<std::uint64_t> seeds;
      for (const std::string& s : split_list(bench_seeds)) seeds.push_back(std::stoull(s));
      if (seeds.empty()) throw sbrs::ParseError("--seeds is empty");
      const auto rows = sbrs::run_bench(grid, methods, seeds, cfg, make_gen_params(opts));
      write_text(bench_out, sbrs::bench_csv(rows));
      return 0;
    }
    if (sweep->parsed()) {
      const sbrs::SolverConfig cfg = make_config(opts);
      const sbrs::Instance inst = sweep_src.resolve(opts, nullptr);
      std::vector<double> values;
      if (sweep_values.empty())
        values = sbrs::default_sweep_values();
      else
        for (const std::string& s : split_list(sweep_values)) values.push_back(std::stod(s));
      const auto rows = sbrs::run_sweep(inst, values, cfg);
      write_text(sweep_out, sbrs::sweep_csv(rows));
      return 0;
    }
    if (grid2->parsed()) {
      const sbrs::SolverConfig cfg = make_config(opts);
      const sbrs::Instance inst = grid2_src.resolve(opts, nullptr);
      const auto rows = sbrs::run_grid2(inst, sbrs::default_grid2_combos(), cfg);
      write_text(grid2_out, sbrs::grid2_csv(rows));
      return 0;
    }
    if (verify->parsed()) return run_verify(verify_in, verify_solution, make_config(opts));
  } catch (const sbrs::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sbrs::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
